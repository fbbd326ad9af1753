#include "helpers.hpp"

#include "presched/baselines.hpp"
#include "presched/generators.hpp"
#include "presched/online.hpp"

#include <set>

using namespace presched;
using namespace presched::test;

namespace {

struct Fixed : OnlineScheduler {
  std::vector<JobId> ids;
  Decision decide(const SchedulerView&) override {
    Decision d;
    d.start = ids;
    ids.clear();
    return d;
  }
};

struct Idle : OnlineScheduler {
  Decision decide(const SchedulerView&) override { return {}; }
};

}  // namespace

TEST_CASE("starting an unrevealed job is rejected") {
  auto inst = single({J(1, 1, R(1, 2)), J(2, 1, R(1, 2))}, {{1, 2}});
  Fixed f;
  f.ids = {1, 2};
  CHECK(code_of([&] { simulate_online(inst, f); }) == ErrorCode::SchedulerViolation);
}

TEST_CASE("over-budget start is rejected") {
  auto inst = single({J(1, 1, 1), J(2, 1, 1)});
  Fixed f;
  f.ids = {1, 2};
  CHECK(code_of([&] { simulate_online(inst, f); }) == ErrorCode::SchedulerViolation);
}

TEST_CASE("idling forever deadlocks") {
  Idle idle;
  CHECK(code_of([&] { simulate_online(single({J(1, 1, 1)}), idle); }) == ErrorCode::Deadlock);
}

TEST_CASE("reveal events follow the information model") {
  auto inst = gen_random_dag(25, 0.25, 8, 2, 11);
  GreedyScheduler g;
  auto sim = simulate_online(inst, g);
  REQUIRE(check_feasible(inst, sim.schedule).feasible());
  CHECK(sim.audit_failures == 0);

  std::set<JobId> seen;
  for (const auto& ev : sim.events)
    for (const auto& rj : ev.revealed) {
      CHECK(seen.insert(rj.job.id).second);
      std::size_t idx = inst.index_of(rj.job.id);
      Time last = 0;
      for (auto p : inst.preds(idx)) {
        const auto& pj = inst.at(p);
        last = std::max(last, sim.schedule.start(pj.id) + pj.duration);
      }
      CHECK(ev.time == last);
      CHECK(rj.preds.size() == inst.preds(idx).size());
    }
  CHECK(seen.size() == inst.size());
}

TEST_CASE("greedy on independent small jobs starts everything at once") {
  std::vector<Job> jobs;
  for (JobId id = 1; id <= 5; ++id) jobs.push_back(J(id, 1, R(1, 5)));
  auto inst = single(jobs);
  auto s = run_greedy(inst);
  for (JobId id = 1; id <= 5; ++id) CHECK(s.start(id) == 0);
  CHECK(makespan(inst, s) == 1);
}

TEST_CASE("zero-duration chains pass through the simulator") {
  auto inst = single({J(1, 0, 1), J(2, 0, 1), J(3, 2, R(1, 2))}, {{1, 2}, {2, 3}});
  auto s = run_greedy(inst);
  CHECK(check_feasible(inst, s).feasible());
  CHECK(makespan(inst, s) == 2);
}
