#include "helpers.hpp"

#include "presched/generators.hpp"
#include "presched/json_io.hpp"

#include <algorithm>

using namespace presched;
using namespace presched::test;

TEST_CASE("gadget family shape") {
  auto g = gen_online_lb_gadget(3, 8, 1, 0);
  // tuples per gadget 4+2+1, two jobs per tuple
  CHECK(g.instance.size() == 8 * (4 + 2 + 1) * 2);
  CHECK(validate_instance(g.instance).feasible());
  REQUIRE(g.meta.gadgets.size() == 8);
  REQUIRE(g.meta.blocking.size() == 8);
  for (std::size_t gi = 0; gi < 8; ++gi) {
    CHECK(g.meta.gadgets[gi].size() == 3);
    int sinks = 0;
    for (auto c : g.meta.gadgets[gi]) sinks += g.chains[c].sink_id() == g.meta.blocking[gi];
    CHECK(sinks == 1);
  }
  // blocking sink feeds every source of the next gadget
  for (std::size_t gi = 0; gi + 1 < 8; ++gi)
    for (auto c : g.meta.gadgets[gi + 1]) {
      Edge e{g.meta.blocking[gi], g.chains[c].source_id()};
      CHECK(std::find(g.instance.edges().begin(), g.instance.edges().end(), e) != g.instance.edges().end());
    }

  auto ones = gen_online_lb_gadget(1, 4, 9, 0);
  for (std::size_t gi = 0; gi < 4; ++gi) {
    CHECK(ones.meta.gadgets[gi].size() == 1);
    CHECK(ones.meta.blocking_chains[gi] == ones.meta.gadgets[gi][0]);
  }

  CHECK(gen_online_lb_gadget(2, 0, 1, 0).meta.gadgets.size() == 4);
  CHECK(code_of([] { gen_online_lb_gadget(0, 1, 1, 0); }) == ErrorCode::BadParams);
}

TEST_CASE("gadget family is deterministic per seed") {
  auto a = online_to_json(gen_online_lb_gadget(3, 0, 42, 1)).dump();
  auto b = online_to_json(gen_online_lb_gadget(3, 0, 42, 1)).dump();
  CHECK(a == b);
  bool differs = false;
  for (std::uint64_t s = 1; s <= 5 && !differs; ++s)
    differs = online_to_json(gen_online_lb_gadget(3, 0, s, 1)).dump() != a;
  CHECK(differs);
}

TEST_CASE("multiresource family shape") {
  auto g = gen_multiresource_lb(2, 3, 1);
  CHECK(g.instance.size() == 6);
  CHECK(g.instance.edges().size() == 3);
  CHECK(g.instance.resource_count() == 2);
  CHECK(validate_instance(g.instance).feasible());
  for (const auto& j : g.instance.jobs()) {
    CHECK(j.duration == 1);
    int full = 0;
    for (const auto& x : j.demand) full += x == Rational(1);
    CHECK(full == 1);
  }
  CHECK(code_of([] { gen_multiresource_lb(1, 3, 1); }) == ErrorCode::BadParams);
}

TEST_CASE("greedy-killer shape") {
  auto g = gen_greedy_killer(2);
  CHECK(g.instance.size() == 6);
  CHECK(g.instance.edges().size() == 5);
  CHECK(validate_instance(g.instance).feasible());
  CHECK(code_of([] { gen_greedy_killer(1); }) == ErrorCode::BadParams);
}

TEST_CASE("random DAGs") {
  CHECK(gen_random_dag(10, 0.0, 8, 1, 3).edges().empty());
  auto total = gen_random_dag(8, 1.0, 8, 1, 3);
  CHECK(transitive_reduction(total).size() == 7);
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto inst = gen_random_dag(12, 0.3, 8, 1 + static_cast<int>(seed % 3), seed);
    REQUIRE(validate_instance(inst).feasible());
    for (const auto& j : inst.jobs()) {
      CHECK(is_power_of_two(j.duration));
      CHECK(j.duration <= 8);
      for (std::size_t r = 0; r < j.demand.size(); ++r) {
        CHECK(j.demand[r] > 0);
        CHECK(j.demand[r] <= inst.budgets()[r]);
      }
    }
  }
}

TEST_CASE("random SCS and LTS instances validate") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto scs = gen_random_scs(3, 4, 5, seed);
    CHECK_NOTHROW(validate_scs(scs));
    auto lts = gen_random_lts(12, 3, 0.3, 20, seed);
    CHECK_NOTHROW(validate_lts(lts));
    CHECK(lts.jobs.size() <= 12);
    CHECK(lts.machines.size() <= 3);
  }
}
