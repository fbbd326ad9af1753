#include "presched/reductions.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace presched {

namespace {

Schedule epochs_to_schedule(const ReductionMap& map, const std::vector<std::vector<std::size_t>>& epochs) {
  Schedule out;
  Time t = 0;
  for (const auto& epoch : epochs) {
    if (epoch.empty()) continue;
    std::vector<ChainSpec> specs;
    for (auto c : epoch) specs.push_back(map.chains[c]);
    for (const auto& [id, slot] : schedule_same_length_parallel(map.instance, specs, t).slots) out.slots[id] = slot;
    t += parallel_length(specs);
  }
  assign_ranks(map.instance, out);
  return out;
}

std::vector<std::vector<std::size_t>> nonempty(std::vector<std::vector<std::size_t>> epochs) {
  std::erase_if(epochs, [](const auto& e) { return e.empty(); });
  return epochs;
}

void require_all_done(const ReductionMap& map, const std::vector<std::vector<std::size_t>>& epochs) {
  std::size_t covered = 0;
  for (const auto& e : epochs) covered += e.size();
  if (covered != map.chains.size()) throw std::logic_error("epoch replay left chains unfinished");
}

}  // namespace

std::pair<Instance, ReductionMap> scs_to_rs(const ScsInstance& scs) {
  validate_scs(scs);
  if (scs.rho > 30) throw Error(ErrorCode::BadParams, "alphabet too large for chain lengths");
  ChainDagBuilder b(1, 0);
  ReductionMap map;
  for (std::size_t s = 0; s < scs.sequences.size(); ++s) {
    const auto& seq = scs.sequences[s];
    for (std::size_t k = 0; k < seq.size(); ++k) {
      auto c = b.add_chain(scs.rho, seq[k]);
      if (k > 0) b.link(c - 1, c);
      map.positions.emplace_back(static_cast<int>(s), static_cast<int>(k));
    }
  }
  auto built = b.build();
  map.kind = ReductionKind::Scs;
  map.rho = scs.rho;
  map.instance = built.instance;
  map.chains = std::move(built.chains);
  map.chain_edges = std::move(built.links);
  map.scs = scs;
  return {std::move(built.instance), std::move(map)};
}

std::vector<std::vector<std::size_t>> replay_epochs(const ReductionMap& map, const std::vector<int>& x) {
  const auto n = map.chains.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (auto [a, b] : map.chain_edges) preds[b].push_back(a);
  std::vector<bool> done(n, false);
  std::vector<std::vector<std::size_t>> epochs;
  for (int type : x) {
    std::vector<std::size_t> ready;
    for (std::size_t c = 0; c < n; ++c) {
      if (done[c] || map.chains[c].i != type) continue;
      if (std::all_of(preds[c].begin(), preds[c].end(), [&](auto p) { return done[p]; })) ready.push_back(c);
    }
    for (auto c : ready) done[c] = true;
    epochs.push_back(std::move(ready));
  }
  return epochs;
}

Schedule supersequence_to_schedule(const ReductionMap& map, const std::vector<int>& z) {
  if (!is_supersequence(z, map.scs.sequences)) throw Error(ErrorCode::NotSupersequence, "z misses some sequence");
  auto epochs = nonempty(replay_epochs(map, z));
  require_all_done(map, epochs);
  return epochs_to_schedule(map, epochs);
}

EpochSequence extract_epochs(const ReductionMap& map, const Schedule& sched) {
  const auto& inst = map.instance;
  auto batched = batch_same_length(inst, normalize_sequential(inst, sched));
  std::map<int, int> span_exp;
  for (const auto& c : map.chains) span_exp[c.i] = c.m;
  std::map<int, Time> seen;
  EpochSequence out;
  for (const auto& p : sequential_phases(inst, batched)) {
    if (!p.skinny) continue;
    const int i = log2_exact(inst.job(p.jobs.front()).duration);
    auto it = span_exp.find(i);
    if (it == span_exp.end()) throw Error(ErrorCode::InfeasibleInput, "skinny length matches no chain type");
    const Time step = Time{1} << (it->second - i);
    if (++seen[i] % step == 0) {
      out.x.push_back(i);
      out.thresholds.push_back(p.start);
    }
  }
  return out;
}

std::vector<int> schedule_to_supersequence(const ReductionMap& map, const Schedule& sched) {
  auto ep = extract_epochs(map, sched);
  auto epochs = replay_epochs(map, ep.x);
  std::vector<int> z;
  for (std::size_t k = 0; k < epochs.size(); ++k)
    if (!epochs[k].empty()) z.push_back(ep.x[k]);
  require_all_done(map, nonempty(epochs));
  return z;
}

std::size_t count_bonded_edges(const LtsInstance& lts) {
  std::map<JobId, int> machine;
  for (const auto& j : lts.jobs) machine[j.id] = j.machine;
  std::size_t bonded = 0;
  for (const auto& e : transitive_reduction(lts.as_dag())) bonded += machine.at(e.from) == machine.at(e.to);
  return bonded;
}

BondedResolution resolve_bonded_edges(const LtsInstance& lts) {
  validate_lts(lts);
  const auto n = lts.jobs.size();
  std::map<JobId, std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k) idx[lts.jobs[k].id] = k;
  std::vector<IndexEdge> edges;
  for (const auto& e : lts.edges) edges.emplace_back(idx.at(e.from), idx.at(e.to));

  BondedResolution out;
  while (true) {
    edges = transitive_reduction(edges, n);
    std::optional<IndexEdge> pick;
    auto id_pair = [&](const IndexEdge& e) { return std::make_pair(lts.jobs[e.first].id, lts.jobs[e.second].id); };
    for (const auto& e : edges)
      if (lts.jobs[e.first].machine == lts.jobs[e.second].machine && (!pick || id_pair(e) < id_pair(*pick))) pick = e;
    if (!pick) break;
    auto [u, v] = *pick;
    std::vector<IndexEdge> next;
    for (const auto& e : edges) {
      if (e == *pick) continue;
      next.push_back(e);
      if (e.second == u) next.emplace_back(e.first, v);
    }
    edges = std::move(next);
    ++out.iterations;
  }
  out.lts = lts;
  out.lts.edges.clear();
  for (auto [u, v] : edges) out.lts.edges.push_back({lts.jobs[u].id, lts.jobs[v].id});
  std::sort(out.lts.edges.begin(), out.lts.edges.end());
  return out;
}

LtsInstance drop_idle_machines(const LtsInstance& lts) {
  std::set<int> used;
  for (const auto& j : lts.jobs) used.insert(j.machine);
  LtsInstance out = lts;
  std::erase_if(out.machines, [&](const LtsMachine& m) { return !used.count(m.id); });
  return out;
}

BoundedLoads bound_loading_times(const LtsInstance& lts) {
  validate_lts(lts);
  BoundedLoads out{lts, {}};
  const auto n = static_cast<std::int64_t>(lts.jobs.size());
  auto machines = drop_idle_machines(lts).machines;
  std::stable_sort(machines.begin(), machines.end(), [](const auto& a, const auto& b) { return a.load < b.load; });
  std::optional<std::size_t> gap;  // 0-based index of the last machine below the gap
  for (std::size_t k = 0; k + 1 < machines.size(); ++k)
    if (machines[k + 1].load > n * machines[k].load) gap = k;
  if (!gap) return out;

  std::set<int> kept_machines;
  for (std::size_t k = *gap + 1; k < machines.size(); ++k) kept_machines.insert(machines[k].id);
  auto dag = lts.as_dag();
  const auto order = topological_order(dag);
  std::vector<boost::dynamic_bitset<>> reach(dag.size(), boost::dynamic_bitset<>(dag.size()));
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (auto w : dag.succs(*it)) {
      reach[*it].set(w);
      reach[*it] |= reach[w];
    }

  LtsInstance kept;
  for (const auto& m : lts.machines)
    if (kept_machines.count(m.id)) kept.machines.push_back(m);
  std::vector<std::size_t> keep_idx;
  for (std::size_t k = 0; k < lts.jobs.size(); ++k) {
    const auto& j = lts.jobs[k];
    if (kept_machines.count(j.machine)) {
      kept.jobs.push_back(j);
      keep_idx.push_back(dag.index_of(j.id));
    } else {
      out.dropped.push_back(j.id);
    }
  }
  for (auto u : keep_idx)
    for (auto v : keep_idx)
      if (reach[u].test(v)) kept.edges.push_back({dag.at(u).id, dag.at(v).id});
  kept.edges = transitive_reduction(kept.as_dag());
  std::sort(out.dropped.begin(), out.dropped.end());
  out.lts = std::move(kept);
  return out;
}

LtsInstance round_and_normalize_loads(const LtsInstance& lts) {
  LtsInstance out = lts;
  if (out.machines.empty()) return out;
  for (auto& m : out.machines) {
    if (m.load < 1) throw Error(ErrorCode::BadLoads, "load below 1");
    auto low = static_cast<std::int64_t>(std::bit_floor(static_cast<std::uint64_t>(m.load)));
    m.load = (m.load - low >= 2 * low - m.load) ? 2 * low : low;
  }
  std::int64_t least = out.machines.front().load;
  for (const auto& m : out.machines) least = std::min(least, m.load);
  for (auto& m : out.machines) m.load /= least;
  std::stable_sort(out.machines.begin(), out.machines.end(), [](const auto& a, const auto& b) { return a.load < b.load; });
  return out;
}

LtsPrep lts_prep(const LtsInstance& lts) {
  validate_lts(lts);
  LtsPrep prep;
  prep.original = lts;
  auto first = resolve_bonded_edges(drop_idle_machines(lts));
  auto bounded = bound_loading_times(first.lts);
  // inherited reachability can join two jobs of one machine again
  auto second = resolve_bonded_edges(bounded.lts);
  prep.iterations = first.iterations + second.iterations;
  prep.dropped = bounded.dropped;
  prep.prepared = round_and_normalize_loads(second.lts);
  return prep;
}

LtsSolution lift_prepared_solution(const LtsPrep& prep, const LtsSolution& sol) {
  const auto& orig = prep.original;
  std::map<JobId, int> machine;
  std::map<JobId, std::vector<JobId>> preds;
  for (const auto& j : orig.jobs) machine[j.id] = j.machine;
  for (const auto& e : orig.edges) preds[e.to].push_back(e.from);
  std::set<JobId> dropped(prep.dropped.begin(), prep.dropped.end());
  std::set<JobId> done;
  LtsSolution out;

  auto flush = [&] {
    bool any = false;
    for (bool grew = true; grew;) {
      grew = false;
      for (auto x : dropped) {
        if (done.count(x)) continue;
        const auto& ps = preds[x];
        if (!std::all_of(ps.begin(), ps.end(), [&](auto p) { return done.count(p) != 0; })) continue;
        out.blocks.push_back({machine.at(x), {x}});
        done.insert(x);
        grew = any = true;
      }
    }
    return any;
  };
  // every kept job of machine m that can join one block right now
  auto take = [&](int m, bool include_dropped) {
    std::vector<JobId> block;
    std::set<JobId> in_block;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& j : orig.jobs) {
        if (j.machine != m || done.count(j.id) || in_block.count(j.id)) continue;
        if (!include_dropped && dropped.count(j.id)) continue;
        const auto& ps = preds[j.id];
        if (!std::all_of(ps.begin(), ps.end(), [&](auto p) { return done.count(p) || in_block.count(p); })) continue;
        block.push_back(j.id);
        in_block.insert(j.id);
        grew = true;
      }
    }
    done.insert(block.begin(), block.end());
    if (!block.empty()) {
      std::sort(block.begin(), block.end());
      out.blocks.push_back({m, block});
    }
    return !block.empty();
  };

  for (const auto& b : sol.blocks) {
    flush();
    while (true) {
      take(b.machine, false);
      bool left = std::any_of(b.jobs.begin(), b.jobs.end(), [&](auto id) { return !done.count(id); });
      if (!left || !flush()) break;
    }
  }
  while (done.size() < orig.jobs.size()) {
    bool progress = flush();
    for (const auto& m : orig.machines) progress = take(m.id, true) || progress;
    if (!progress) throw std::logic_error("lifting stalled on an acyclic instance");
  }
  return out;
}

std::pair<Instance, ReductionMap> lts_to_rs(const LtsInstance& lts) {
  validate_lts(lts);
  if (lts.machines.empty()) throw Error(ErrorCode::BadParams, "no machines");
  for (std::size_t k = 0; k < lts.machines.size(); ++k) {
    const auto load = lts.machines[k].load;
    if (!is_power_of_two(load)) throw Error(ErrorCode::BadLoads, "load " + std::to_string(load) + " is not a power of 2");
    if (k > 0 && load < lts.machines[k - 1].load) throw Error(ErrorCode::UnsortedMachines, "machines must be listed by non-decreasing load");
  }
  if (lts.machines.front().load != 1) throw Error(ErrorCode::BadLoads, "smallest load must be 1");

  ReductionMap map;
  map.kind = ReductionKind::Lts;
  map.rho = static_cast<int>(lts.machines.size());
  std::map<int, int> index;  // machine id -> 1-based position
  for (std::size_t k = 0; k < lts.machines.size(); ++k) {
    index[lts.machines[k].id] = static_cast<int>(k) + 1;
    map.span_exp.push_back(map.rho + log2_exact(lts.machines[k].load));
  }
  if (map.span_exp.back() > 40) throw Error(ErrorCode::TooLarge, "chains would be too long");
  ChainDagBuilder b(1, 0);
  std::map<JobId, std::size_t> chain_of;
  for (const auto& j : lts.jobs) {
    int i = index.at(j.machine);
    chain_of[j.id] = b.add_chain(map.span_exp[i - 1], i);
    map.lts_jobs.push_back(j.id);
  }
  for (const auto& e : lts.edges) b.link(chain_of.at(e.from), chain_of.at(e.to));
  auto built = b.build();
  map.instance = built.instance;
  map.chains = std::move(built.chains);
  map.chain_edges = std::move(built.links);
  map.lts = lts;
  return {std::move(built.instance), std::move(map)};
}

Schedule lts_solution_to_schedule(const ReductionMap& map, const LtsSolution& sol) {
  if (auto problem = lts_solution_problem(map.lts, sol)) throw Error(ErrorCode::InvalidSolution, *problem);
  std::map<JobId, std::size_t> chain_of, block_of;
  for (std::size_t c = 0; c < map.lts_jobs.size(); ++c) chain_of[map.lts_jobs[c]] = c;
  for (std::size_t k = 0; k < sol.blocks.size(); ++k)
    for (auto id : sol.blocks[k].jobs) block_of[id] = k;
  for (const auto& e : map.lts.edges)
    if (block_of.at(e.from) == block_of.at(e.to))
      throw Error(ErrorCode::InvalidSolution, "block holds both ends of edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
  std::vector<std::vector<std::size_t>> epochs;
  for (const auto& b : sol.blocks) {
    epochs.emplace_back();
    for (auto id : b.jobs) epochs.back().push_back(chain_of.at(id));
  }
  return epochs_to_schedule(map, epochs);
}

LtsSolution schedule_to_lts_solution(const ReductionMap& map, const Schedule& sched) {
  auto ep = extract_epochs(map, sched);
  auto epochs = replay_epochs(map, ep.x);
  LtsSolution out;
  for (std::size_t k = 0; k < epochs.size(); ++k) {
    if (epochs[k].empty()) continue;
    LtsBlock b{map.lts.machines.at(ep.x[k] - 1).id, {}};
    for (auto c : epochs[k]) b.jobs.push_back(map.lts_jobs[c]);
    std::sort(b.jobs.begin(), b.jobs.end());
    out.blocks.push_back(std::move(b));
  }
  require_all_done(map, nonempty(epochs));
  return out;
}

}  // namespace presched
