#include "helpers.hpp"

#include "presched/baselines.hpp"
#include "presched/generators.hpp"
#include "presched/reductions.hpp"

#include <algorithm>
#include <cmath>

using namespace presched;
using namespace presched::test;

namespace {

Time max_duration(const Instance& inst) {
  Time t = 0;
  for (const auto& j : inst.jobs()) t = std::max(t, j.duration);
  return t;
}

LtsInstance three_job_path() {
  LtsInstance lts;
  lts.machines = {{1, 1}, {2, 1}};
  lts.jobs = {{10, 1}, {11, 2}, {12, 1}};
  lts.edges = {{10, 11}, {11, 12}};
  return lts;
}

}  // namespace

TEST_CASE("scs_to_rs construction") {
  auto [inst, map] = scs_to_rs(ScsInstance{2, {{1}}});
  REQUIRE(map.chains.size() == 1);
  CHECK(map.chains[0].tuple_count() == 2);
  CHECK(inst.size() == 4);

  auto [inst2, map2] = scs_to_rs(ScsInstance{2, {{1, 2}, {2, 1}}});
  CHECK(map2.chains.size() == 4);
  CHECK(map2.chain_edges.size() == 2);
  CHECK(max_duration(inst2) == 4);
  CHECK(inst2.resource_count() == 1);

  CHECK(code_of([] { scs_to_rs(ScsInstance{2, {{3}}}); }) == ErrorCode::SymbolOutOfRange);
}

TEST_CASE("supersequence to schedule and back") {
  ScsInstance scs{2, {{1, 2}, {2, 1}}};
  auto [inst, map] = scs_to_rs(scs);
  auto s = supersequence_to_schedule(map, {1, 2, 1});
  CHECK(check_feasible(inst, s).feasible());
  CHECK(makespan(inst, s) <= 12);
  auto x = schedule_to_supersequence(map, s);
  CHECK(is_supersequence(x, scs.sequences));
  CHECK(x.size() <= 6);
  CHECK(code_of([&] { supersequence_to_schedule(map, {1, 2}); }) == ErrorCode::NotSupersequence);

  auto ep = extract_epochs(map, s);
  for (int v : ep.x) CHECK((v >= 0 && v <= 2));
  auto done = replay_epochs(map, ep.x);
  std::size_t total = 0;
  for (const auto& e : done) total += e.size();
  CHECK(total == map.chains.size());

  auto [one_inst, one_map] = scs_to_rs(ScsInstance{3, {{2}}});
  auto one = supersequence_to_schedule(one_map, {2});
  CHECK(schedule_to_supersequence(one_map, one) == std::vector<int>{2});
}

TEST_CASE("scs round trip on random instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto scs = gen_random_scs(3, 3, 4, seed);
    auto r = scs_brute_force(scs);
    auto [inst, map] = scs_to_rs(scs);
    auto s = supersequence_to_schedule(map, r.supersequence);
    REQUIRE(check_feasible(inst, s).feasible());
    CHECK(makespan(inst, s) <= (Time{1} << scs.rho) * r.length);
    auto x = schedule_to_supersequence(map, s);
    CHECK(is_supersequence(x, scs.sequences));
    CHECK(static_cast<int>(x.size()) <= 2 * r.length);
    CHECK(static_cast<int>(x.size()) >= r.length);
  }
}

TEST_CASE("bonded edge resolution") {
  LtsInstance tri;
  tri.machines = {{1, 1}, {2, 1}};
  tri.jobs = {{1, 1}, {2, 2}, {3, 1}};
  tri.edges = {{1, 2}, {2, 3}, {1, 3}};
  auto res = resolve_bonded_edges(tri);
  CHECK(res.iterations == 0);
  CHECK(count_bonded_edges(res.lts) == 0);
  CHECK(res.lts.edges.size() == 2);

  LtsInstance direct;
  direct.machines = {{1, 1}};
  direct.jobs = {{1, 1}, {2, 1}};
  direct.edges = {{1, 2}};
  CHECK(count_bonded_edges(direct) == 1);
  auto d = resolve_bonded_edges(direct);
  CHECK(d.iterations == 1);
  CHECK(d.lts.edges.empty());
  CHECK(lts_brute_force(d.lts).cost == lts_brute_force(direct).cost);

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto lts = gen_random_lts(9, 3, 0.35, 6, seed);
    auto out = resolve_bonded_edges(lts);
    auto n = static_cast<std::int64_t>(lts.jobs.size());
    CHECK(count_bonded_edges(out.lts) == 0);
    CHECK(out.iterations <= n * n);
    CHECK(lts_brute_force(out.lts).cost == lts_brute_force(lts).cost);
  }
}

TEST_CASE("loading-time bounding and rounding") {
  LtsInstance small;
  small.machines = {{1, 1}, {2, 2}};
  small.jobs = {{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 2}};
  auto same = bound_loading_times(small);
  CHECK(same.dropped.empty());
  CHECK(same.lts.jobs.size() == 5);

  LtsInstance gap = small;
  gap.machines = {{1, 1}, {2, 100}};
  auto cut = bound_loading_times(gap);
  CHECK(cut.dropped == std::vector<JobId>{1, 2});
  CHECK(cut.lts.jobs.size() == 3);
  for (const auto& m : cut.lts.machines) CHECK(m.load == 100);

  LtsInstance r1;
  r1.machines = {{1, 3}, {2, 4}};
  r1.jobs = {{1, 1}, {2, 2}};
  auto n1 = round_and_normalize_loads(r1);
  CHECK(n1.load_of(1) == 1);
  CHECK(n1.load_of(2) == 1);
  r1.machines = {{1, 2}, {2, 8}};
  auto n2 = round_and_normalize_loads(r1);
  CHECK(n2.load_of(1) == 1);
  CHECK(n2.load_of(2) == 4);
}

TEST_CASE("lts_prep bounds the largest load") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto lts = gen_random_lts(10, 3, 0.3, 1000, seed);
    auto prep = lts_prep(lts);
    CHECK(count_bonded_edges(prep.prepared) == 0);
    double n = static_cast<double>(prep.prepared.jobs.size());
    double rho = static_cast<double>(prep.prepared.machines.size());
    for (std::size_t k = 0; k < prep.prepared.machines.size(); ++k) {
      const auto& m = prep.prepared.machines[k];
      CHECK(is_power_of_two(m.load));
      CHECK(static_cast<double>(m.load) <= std::pow(std::max(n, 1.0), rho));
      if (k > 0) CHECK(prep.prepared.machines[k - 1].load <= m.load);
    }
    auto best = lts_brute_force(prep.prepared);
    auto lifted = lift_prepared_solution(prep, best.solution);
    CHECK_FALSE(lts_solution_problem(lts, lifted).has_value());
  }
}

TEST_CASE("lts_to_rs construction") {
  LtsInstance one;
  one.machines = {{1, 1}, {2, 1}};
  one.jobs = {{5, 1}};
  auto [inst, map] = lts_to_rs(one);
  REQUIRE(map.chains.size() == 1);
  CHECK(map.chains[0].m == 2);
  CHECK(map.chains[0].i == 1);
  CHECK(map.chains[0].tuple_count() == 2);

  auto [pinst, pmap] = lts_to_rs(resolve_bonded_edges(three_job_path()).lts);
  REQUIRE(pmap.chains.size() == 3);
  std::vector<Time> lens;
  for (JobId id : {10, 11, 12}) {
    auto c = std::find(pmap.lts_jobs.begin(), pmap.lts_jobs.end(), id) - pmap.lts_jobs.begin();
    lens.push_back(pmap.chains[static_cast<std::size_t>(c)].skinny_length());
  }
  CHECK(lens == std::vector<Time>{2, 4, 2});

  LtsInstance unsorted;
  unsorted.machines = {{1, 2}, {2, 1}};
  unsorted.jobs = {{1, 1}, {2, 2}};
  CHECK(code_of([&] { lts_to_rs(unsorted); }) == ErrorCode::UnsortedMachines);
  LtsInstance odd;
  odd.machines = {{1, 1}, {2, 3}};
  odd.jobs = {{1, 1}, {2, 2}};
  CHECK(code_of([&] { lts_to_rs(odd); }) == ErrorCode::BadLoads);
}

TEST_CASE("lts solutions to schedules and back") {
  LtsInstance one;
  one.machines = {{1, 1}, {2, 1}};
  one.jobs = {{5, 1}};
  auto [inst, map] = lts_to_rs(one);
  LtsSolution sol{{{1, {5}}}};
  auto s = lts_solution_to_schedule(map, sol);
  CHECK(check_feasible(inst, s).feasible());
  CHECK(makespan(inst, s) == 4);
  auto back = schedule_to_lts_solution(map, s);
  CHECK(back.blocks.size() == 1);

  LtsInstance three;
  three.machines = {{1, 1}, {2, 2}};
  three.jobs = {{1, 1}, {2, 1}, {3, 2}};
  auto [tinst, tmap] = lts_to_rs(three);
  LtsSolution tsol{{{1, {1}}, {1, {2}}, {2, {3}}}};
  auto ts = lts_solution_to_schedule(tmap, tsol);
  CHECK(check_feasible(tinst, ts).feasible());
  CHECK(makespan(tinst, ts) == 16);

  LtsSolution wrong{{{2, {1, 2}}, {2, {3}}}};
  CHECK(code_of([&] { lts_solution_to_schedule(tmap, wrong); }) == ErrorCode::InvalidSolution);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto prep = lts_prep(gen_random_lts(7, 3, 0.3, 8, seed));
    if (prep.prepared.jobs.empty()) continue;
    auto [ri, rm] = lts_to_rs(prep.prepared);
    auto best = lts_brute_force(prep.prepared);
    auto sched = lts_solution_to_schedule(rm, best.solution);
    REQUIRE(check_feasible(ri, sched).feasible());
    CHECK(makespan(ri, sched) == (Time{1} << rm.rho) * best.cost);
    auto rec = schedule_to_lts_solution(rm, sched);
    CHECK_FALSE(lts_solution_problem(prep.prepared, rec).has_value());
    CHECK(lts_cost(prep.prepared, rec) <= 2 * best.cost);
    CHECK(lts_cost(prep.prepared, rec) >= best.cost);
  }
}
