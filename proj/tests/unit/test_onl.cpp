#include "helpers.hpp"

#include "presched/baselines.hpp"
#include "presched/generators.hpp"
#include "presched/onl.hpp"

#include <cmath>

using namespace presched;
using namespace presched::test;

TEST_CASE("cap") {
  CHECK(cap(32) == 32);
  CHECK(cap(33) == 1);
  CHECK(cap(28) == 4);
  CHECK(cap(1) == 1);
  CHECK(code_of([] { cap(0); }) == ErrorCode::ZeroInput);
}

TEST_CASE("assign_level") {
  CHECK(assign_level(4, {}) == 4);
  std::vector<ParentLevel> one{{4, 4}};
  CHECK(assign_level(2, one) == 8);
  std::vector<ParentLevel> two{{4, 4}, {8, 1}};
  CHECK(assign_level(4, two) == 12);
  std::vector<ParentLevel> bad{{0, 4}};
  CHECK(code_of([&] { assign_level(4, bad); }) == ErrorCode::UnassignedParent);
}

TEST_CASE("execute_working_set") {
  CHECK(execute_working_set({J(1, 4, R(1, 2)), J(2, 4, R(1, 2))}, {R(1)}).tau == 4);
  CHECK(execute_working_set({J(1, 2, 1), J(2, 2, 1)}, {R(1)}).tau == 4);

  std::vector<Job> w{J(1, 1, 1)};
  for (JobId id = 2; id <= 5; ++id) w.push_back(J(id, 8, R(1, 4)));
  auto run = execute_working_set(w, {R(1)});
  Rational total = 0;
  for (const auto& j : w) total += j.demand[0] * j.duration;
  CHECK(Rational(run.tau) <= 2 * total + 8);
  CHECK(check_feasible(single(w), run.schedule).feasible());

  CHECK(code_of([] { execute_working_set({J(1, 1, R(2))}, {R(1)}); }) == ErrorCode::JobExceedsBudget);
}

TEST_CASE("run_onl basics") {
  auto [s, trace] = run_onl(single({J(1, 4, 1)}));
  CHECK(s.start(1) == 0);
  REQUIRE(trace.levels.size() == 1);
  CHECK(trace.levels[0].level == 4);
  CHECK(trace.makespan == 4);

  CHECK(code_of([] { run_onl(single({J(1, 0, 1)})); }) == ErrorCode::ZeroDuration);
}

TEST_CASE("run_onl invariants on random DAGs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    int d = 1 + static_cast<int>(seed % 3);
    auto inst = gen_random_dag(20, 0.2, 8, d, seed);
    auto [s, trace] = run_onl(inst);
    REQUIRE(check_feasible(inst, s).feasible());
    CHECK(makespan(inst, s) == trace.makespan);

    Time prev = 0;
    for (const auto& lvl : trace.levels) {
      CHECK(lvl.level > prev);
      prev = lvl.level;
      Rational rhs = std::min(trace.t_max, cap(lvl.level));
      for (int r = 0; r < d; ++r) rhs += 2 * lvl.work[static_cast<std::size_t>(r)] / inst.budgets()[static_cast<std::size_t>(r)];
      CHECK(Rational(lvl.tau) <= rhs);
    }
    auto depth = depth_profile(round_durations_pow2(inst));
    for (const auto& [id, psi] : trace.assignment.psi) {
      Time t = trace.rounded.at(id);
      CHECK(psi % t == 0);
      CHECK(t <= cap(psi));
      CHECK(2 * depth.at(id) >= psi - t);
    }
    auto b = sum_cap_bound(trace, inst.size());
    CHECK(b.lhs <= std::min(b.rhs_log_v, b.rhs_log_tmax));
  }
}

TEST_CASE("sum_cap_bound example") {
  // a path of unit jobs occupies levels 1..8; a loose 8-job pins t_max
  std::vector<Job> jobs;
  std::vector<Edge> edges;
  for (JobId id = 1; id <= 8; ++id) jobs.push_back(J(id, 1, 1));
  for (JobId id = 1; id < 8; ++id) edges.push_back({id, id + 1});
  jobs.push_back(J(9, 8, R(1, 100)));  // t_max = 8, sits at level 8
  auto inst = single(jobs, edges);
  auto [s, trace] = run_onl(inst);
  REQUIRE(trace.t_max == 8);
  REQUIRE(trace.l_max == 8);
  REQUIRE(trace.levels.size() == 8);
  CHECK(sum_cap_bound(trace, inst.size()).lhs == 20);

  auto [s1, t1] = run_onl(single({J(1, 4, 1)}));
  CHECK(sum_cap_bound(t1, 1).lhs == std::min<Time>(4, cap(4)));
}

TEST_CASE("opt_lower_bound") {
  auto inst = single({J(1, 8, 1)});
  auto [s, trace] = run_onl(inst);
  CHECK(opt_lower_bound(inst, trace) == R(8));

  std::vector<Job> half;
  for (JobId id = 1; id <= 6; ++id) half.push_back(J(id, 1, R(1, 2)));
  auto hi = single(half);
  auto [hs, ht] = run_onl(hi);
  CHECK(opt_lower_bound(hi, ht) == R(3));
  CHECK(brute_force_optimal(hi).makespan >= 3);
}

TEST_CASE("ONL against the oracle on greedy-killer n=8") {
  auto online = gen_greedy_killer(8);
  auto [s, trace] = run_onl(online);
  REQUIRE(check_feasible(online.instance, s).feasible());
  // the constructed schedule upper-bounds OPT, the work bound lower-bounds it
  Time offline = makespan(online.instance, greedy_killer_offline_schedule(online));
  CHECK(static_cast<double>(makespan(online.instance, s)) <= offline * 4.0 * (1 + std::log2(26.0)));
}

TEST_CASE("ONL through the simulator matches run_onl") {
  auto inst = gen_random_dag(15, 0.3, 4, 2, 3);
  auto [direct, trace] = run_onl(inst);
  OnlScheduler sched;
  auto sim = simulate_online(inst, sched);
  for (const auto& [id, slot] : direct.slots) CHECK(sim.schedule.start(id) == slot.start);
  CHECK(sim.audit_failures == 0);
}
