#include "presched/generators.hpp"

#include "presched/rng.hpp"

#include <bit>

namespace presched {

OnlineInstance gen_online_lb_gadget(int m, std::int64_t num_gadgets, std::uint64_t seed, Time fat_duration) {
  if (m < 1 || m > 20) throw Error(ErrorCode::BadParams, "gadget needs 1 <= m <= 20");
  if (num_gadgets == 0) num_gadgets = std::int64_t{1} << m;
  if (num_gadgets < 1) throw Error(ErrorCode::BadParams, "need at least one gadget");
  if (fat_duration != 0 && fat_duration != 1) throw Error(ErrorCode::BadParams, "fat duration must be 0 or 1");

  Rng rng(seed);
  ChainDagBuilder b(1, fat_duration);
  OnlineInstance out;
  auto& meta = out.meta;
  for (std::int64_t g = 0; g < num_gadgets; ++g) {
    std::vector<std::size_t> chains;
    for (int j = 1; j <= m; ++j) chains.push_back(b.add_chain(m, j));
    auto pick = chains[rng.below(static_cast<std::uint64_t>(m))];
    if (g > 0)
      for (auto c : chains) b.link(meta.blocking_chains.back(), c);
    meta.gadgets.push_back(std::move(chains));
    meta.blocking_chains.push_back(pick);
    meta.blocking.push_back(b.sink_of(pick));
  }
  auto built = b.build();
  out.instance = std::move(built.instance);
  out.chains = std::move(built.chains);
  meta.family = "gadget";
  meta.params = {{"m", m}, {"gadgets", num_gadgets}, {"fat_duration", fat_duration}};
  out.seed = seed;
  return out;
}

OnlineInstance gen_multiresource_lb(int d, int m, std::uint64_t seed) {
  if (d < 2 || m < 1 || d > 64) throw Error(ErrorCode::BadParams, "multiresource gadget needs 2 <= d <= 64 and m >= 1");
  Rng rng(seed);
  OnlineInstance out;
  auto& meta = out.meta;
  std::vector<Job> jobs;
  std::vector<Edge> edges;
  for (int layer = 0; layer < d; ++layer) {
    meta.layers.emplace_back();
    for (int k = 0; k < m; ++k) {
      JobId id = static_cast<JobId>(layer) * m + k;
      ResourceVector dem(d, Rational(0));
      dem[layer] = 1;
      jobs.push_back({id, 1, dem});
      meta.layers.back().push_back(id);
    }
  }
  for (int layer = 0; layer + 1 < d; ++layer) {
    JobId b = meta.layers[layer][rng.below(static_cast<std::uint64_t>(m))];
    meta.blocking.push_back(b);
    for (auto next : meta.layers[layer + 1]) edges.push_back({b, next});
  }
  out.instance = Instance(ResourceVector(d, Rational(1)), std::move(jobs), std::move(edges));
  meta.family = "multiresource";
  meta.params = {{"d", d}, {"m", m}};
  out.seed = seed;
  return out;
}

OnlineInstance gen_greedy_killer(int n) {
  if (n < 2) throw Error(ErrorCode::BadParams, "greedy-killer needs n >= 2");
  OnlineInstance out;
  auto& meta = out.meta;
  meta.layers.assign(3, {});
  const Rational thin(1, 2 * n);
  std::vector<Job> jobs;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    JobId a = 3 * i, b = a + 1, c = a + 2;
    jobs.push_back({a, 1, {Rational(1)}});
    jobs.push_back({b, n, {thin}});
    jobs.push_back({c, 1, {thin}});
    edges.push_back({a, b});
    edges.push_back({a, c});
    if (i + 1 < n) edges.push_back({c, a + 3});
    meta.layers[0].push_back(a);
    meta.layers[1].push_back(b);
    meta.layers[2].push_back(c);
  }
  out.instance = Instance({Rational(1)}, std::move(jobs), std::move(edges));
  meta.family = "greedy-killer";
  meta.params = {{"n", n}};
  return out;
}

Instance gen_random_dag(int n, double edge_prob, Time max_dur, int d, std::uint64_t seed) {
  if (n < 1 || d < 1 || max_dur < 1 || edge_prob < 0 || edge_prob > 1)
    throw Error(ErrorCode::BadParams, "random DAG needs n >= 1, d >= 1, max_dur >= 1, p in [0,1]");
  Rng rng(seed);
  const int top = std::bit_width(static_cast<std::uint64_t>(max_dur)) - 1;
  std::vector<Job> jobs;
  for (int k = 0; k < n; ++k) {
    Job j{k, Time{1} << rng.below(top + 1), ResourceVector(d)};
    for (auto& a : j.demand) a = Rational(static_cast<std::int64_t>(rng.below(8) + 1), 8);
    jobs.push_back(std::move(j));
  }
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < edge_prob) edges.push_back({u, v});
  return Instance(ResourceVector(d, Rational(1)), std::move(jobs), std::move(edges));
}

ScsInstance gen_random_scs(int rho, int max_sequences, int max_length, std::uint64_t seed) {
  if (rho < 1 || max_sequences < 0 || max_length < 1) throw Error(ErrorCode::BadParams, "bad SCS generator parameters");
  Rng rng(seed);
  ScsInstance out{rho, {}};
  int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(max_sequences, 1))));
  if (max_sequences == 0) count = 0;
  for (int s = 0; s < count; ++s) {
    int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_length)));
    std::vector<int> seq;
    for (int k = 0; k < len; ++k) seq.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rho))));
    out.sequences.push_back(std::move(seq));
  }
  return out;
}

LtsInstance gen_random_lts(int max_jobs, int max_machines, double edge_prob, std::int64_t max_load, std::uint64_t seed) {
  if (max_jobs < 1 || max_machines < 1 || max_load < 1) throw Error(ErrorCode::BadParams, "bad LTS generator parameters");
  Rng rng(seed);
  LtsInstance out;
  int machines = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_machines)));
  for (int m = 1; m <= machines; ++m)
    out.machines.push_back({m, 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_load)))});
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_jobs)));
  for (int k = 0; k < n; ++k) out.jobs.push_back({k, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(machines)))});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.unit() < edge_prob) out.edges.push_back({u, v});
  return out;
}

}  // namespace presched
