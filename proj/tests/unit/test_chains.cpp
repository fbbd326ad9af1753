#include "helpers.hpp"

#include "presched/baselines.hpp"
#include "presched/chains.hpp"
#include "presched/rng.hpp"

#include <algorithm>

using namespace presched;
using namespace presched::test;

namespace {

ChainDagBuilder::Result chains_of(std::vector<std::pair<int, int>> types, Time fat = 0) {
  ChainDagBuilder b(1, fat);
  for (auto [m, i] : types) b.add_chain(m, i);
  return b.build();
}

}  // namespace

TEST_CASE("build_chain shapes") {
  auto a = build_chain(2, 2, R(1, 100), 0, 0, {R(1)}, 10);
  CHECK(a.spec.tuple_count() == 1);
  CHECK(a.spec.total_length() == 4);

  auto b = build_chain(3, 1, R(1, 100), 0, 0, {R(1)}, 10);
  CHECK(b.spec.tuple_count() == 4);
  CHECK(b.jobs.size() == 8);
  CHECK(b.edges.size() == 7);
  Time skinny_total = 0;
  for (const auto& j : b.jobs)
    if (j.demand[0] < R(1)) skinny_total += j.duration;
  CHECK(skinny_total == 8);

  auto c = build_chain(0, 0, R(1, 100), 1, 0, {R(1)}, 10);
  REQUIRE(c.jobs.size() == 2);
  CHECK(c.jobs[0].duration == 1);
  CHECK(c.jobs[1].duration == 1);
  CHECK(c.jobs[1].demand[0] == R(1));

  CHECK(code_of([] { build_chain(1, 2, R(1, 100), 0, 0, {R(1)}, 10); }) == ErrorCode::BadParams);
  CHECK(code_of([] { build_chain(1, 1, R(1, 10), 0, 0, {R(1)}, 10); }) == ErrorCode::BadParams);
}

TEST_CASE("link_chains orders whole chains") {
  ChainDagBuilder b(1, 0);
  auto x = b.add_chain(2, 1);
  auto y = b.add_chain(2, 1);
  auto z = b.add_chain(2, 2);
  b.link(x, y);
  b.link(y, z);
  auto built = b.build();
  auto order = topological_order(built.instance);
  std::vector<std::size_t> pos(built.instance.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  auto max_pos = [&](const ChainSpec& c) {
    std::size_t v = 0;
    for (auto id : c.skinny_ids) v = std::max(v, pos[built.instance.index_of(id)]);
    for (auto id : c.fat_ids) v = std::max(v, pos[built.instance.index_of(id)]);
    return v;
  };
  auto min_pos = [&](const ChainSpec& c) { return pos[built.instance.index_of(c.source_id())]; };
  CHECK(max_pos(built.chains[x]) < min_pos(built.chains[y]));
  CHECK(max_pos(built.chains[x]) < min_pos(built.chains[z]));
  CHECK(code_of([&] { link_chains(built.chains[x], built.chains[x]); }) == ErrorCode::SelfLink);
}

TEST_CASE("same-length chains in parallel") {
  auto two = chains_of({{3, 1}, {2, 1}});
  auto s = schedule_same_length_parallel(two.instance, two.chains);
  CHECK(check_feasible(two.instance, s).feasible());
  CHECK(makespan(two.instance, s) == 8);
  CHECK(parallel_length(two.chains) == 8);

  auto three = chains_of({{2, 2}, {2, 2}, {2, 2}});
  auto s3 = schedule_same_length_parallel(three.instance, three.chains);
  CHECK(check_feasible(three.instance, s3).feasible());
  CHECK(makespan(three.instance, s3) == 4);

  for (int m = 0; m <= 3; ++m)
    for (int i = 0; i <= m; ++i) {
      auto one = chains_of({{m, i}});
      auto s1 = schedule_same_length_parallel(one.instance, one.chains);
      CHECK(makespan(one.instance, s1) == (Time{1} << m));
    }

  auto mixed = chains_of({{2, 1}, {2, 2}});
  CHECK(code_of([&] { schedule_same_length_parallel(mixed.instance, mixed.chains); }) == ErrorCode::MixedTypes);
}

TEST_CASE("normalize_sequential pulls a late skinny job back") {
  auto built = chains_of({{2, 2}, {2, 2}});
  const auto& a = built.chains[0];
  const auto& b = built.chains[1];
  Schedule s;
  s.set(b.skinny_ids[0], 0);
  s.set(a.skinny_ids[0], 2);
  s.set(b.fat_ids[0], 6, 0);
  s.set(a.fat_ids[0], 6, 1);
  REQUIRE(check_feasible(built.instance, s).feasible());
  auto n = normalize_sequential(built.instance, s);
  CHECK(check_feasible(built.instance, n).feasible());
  CHECK(n.start(a.skinny_ids[0]) == 0);
  CHECK(makespan(built.instance, n) == 4);

  auto again = normalize_sequential(built.instance, n);
  CHECK(makespan(built.instance, again) == makespan(built.instance, n));
  for (const auto& [id, slot] : n.slots) CHECK(again.start(id) == slot.start);
}

TEST_CASE("batch_same_length staging") {
  auto same = chains_of({{3, 3}, {3, 3}});
  Schedule s;
  s.set(same.chains[0].skinny_ids[0], 0);
  s.set(same.chains[1].skinny_ids[0], 0);
  s.set(same.chains[0].fat_ids[0], 8, 0);
  s.set(same.chains[1].fat_ids[0], 8, 1);
  auto bs = batch_same_length(same.instance, normalize_sequential(same.instance, s));
  CHECK(makespan(same.instance, bs) == 8);

  auto mixed = chains_of({{3, 3}, {2, 2}, {1, 1}});
  Schedule m;
  for (std::size_t c = 0; c < 3; ++c) m.set(mixed.chains[c].skinny_ids[0], 0);
  for (std::size_t c = 0; c < 3; ++c) m.set(mixed.chains[c].fat_ids[0], 8, static_cast<std::int64_t>(c));
  REQUIRE(check_feasible(mixed.instance, m).feasible());
  auto norm = normalize_sequential(mixed.instance, m);
  auto bm = batch_same_length(mixed.instance, norm);
  CHECK(check_feasible(mixed.instance, bm).feasible());
  CHECK(makespan(mixed.instance, bm) == 14);
  CHECK(makespan(mixed.instance, bm) <= 2 * makespan(mixed.instance, norm));
  for (const auto& ph : sequential_phases(mixed.instance, bm)) {
    if (!ph.skinny) continue;
    std::vector<Time> lens;
    for (auto id : ph.jobs) lens.push_back(mixed.instance.job(id).duration);
    CHECK(std::adjacent_find(lens.begin(), lens.end(), std::not_equal_to<>()) == lens.end());
  }
}

TEST_CASE("random chain schedules through normalize and batch") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<int, int>> types;
    int count = 1 + static_cast<int>(rng.below(3));
    for (int c = 0; c < count; ++c) {
      int m = 1 + static_cast<int>(rng.below(3));
      types.push_back({m, static_cast<int>(rng.below(static_cast<std::uint64_t>(m + 1)))});
    }
    auto built = chains_of(types);
    auto greedy = run_greedy(built.instance);
    REQUIRE(check_feasible(built.instance, greedy).feasible());
    auto norm = normalize_sequential(built.instance, greedy);
    CHECK(check_feasible(built.instance, norm).feasible());
    CHECK(makespan(built.instance, norm) <= makespan(built.instance, greedy));
    auto batched = batch_same_length(built.instance, norm);
    CHECK(check_feasible(built.instance, batched).feasible());
    CHECK(makespan(built.instance, batched) <= 2 * makespan(built.instance, norm));
  }
}

TEST_CASE("q-sequence") {
  auto built = chains_of({{2, 1}});
  auto s = schedule_same_length_parallel(built.instance, built.chains);
  CHECK(extract_q_sequence(built.instance, s) == QSequence{2, 2});
  CHECK(extract_q_sequence(Instance({R(1)}, {}, {}), Schedule{}).empty());

  auto mixed = chains_of({{3, 3}, {2, 2}, {1, 1}});
  Schedule m;
  for (std::size_t c = 0; c < 3; ++c) m.set(mixed.chains[c].skinny_ids[0], 0);
  for (std::size_t c = 0; c < 3; ++c) m.set(mixed.chains[c].fat_ids[0], 8, static_cast<std::int64_t>(c));
  for (Time q : extract_q_sequence(mixed.instance, batch_same_length(mixed.instance, m))) CHECK(is_power_of_two(q));
}

TEST_CASE("mixed-type lower bound") {
  std::vector<std::pair<int, int>> a{{3, 1}, {3, 2}};
  CHECK(mixed_type_lower_bound(a) == 8);
  for (int m = 1; m <= 4; ++m) {
    std::vector<std::pair<int, int>> one{{m, 0}};
    CHECK(mixed_type_lower_bound(one) == (Time{1} << (m - 1)));
  }
  std::vector<std::pair<int, int>> three{{2, 0}, {2, 1}, {2, 2}};
  CHECK(mixed_type_lower_bound(three) == 6);
  auto built = chains_of(three);
  CHECK(brute_force_optimal(built.instance, 12).makespan >= 6);
  std::vector<std::pair<int, int>> dup{{2, 1}, {3, 1}};
  CHECK(code_of([&] { mixed_type_lower_bound(dup); }) == ErrorCode::DuplicateType);
}
