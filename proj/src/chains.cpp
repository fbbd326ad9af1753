#include "presched/chains.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace presched {

ChainParts build_chain(int m, int i, const Rational& epsilon, Time fat_duration, JobId id_base,
                       const ResourceVector& budgets, std::int64_t planned_jobs) {
  if (i < 0 || i > m || m > 40) throw Error(ErrorCode::BadParams, "chain needs 0 <= i <= m <= 40");
  if (fat_duration != 0 && fat_duration != 1) throw Error(ErrorCode::BadParams, "fat duration must be 0 or 1");
  if (budgets.empty()) throw Error(ErrorCode::BadParams, "no resource types");
  if (planned_jobs < 1 || epsilon <= 0 || epsilon * planned_jobs >= 1)
    throw Error(ErrorCode::BadParams, "skinny demand must lie strictly below 1/n");

  ChainParts out;
  auto& spec = out.spec;
  spec.m = m;
  spec.i = i;
  spec.skinny_demand = epsilon;
  spec.fat_duration = fat_duration;
  const Time tuples = Time{1} << (m - i);
  ResourceVector thin(budgets.size());
  for (std::size_t r = 0; r < budgets.size(); ++r) thin[r] = std::min(epsilon, budgets[r]);
  for (Time k = 0; k < tuples; ++k) {
    JobId s = id_base + 2 * k, f = s + 1;
    spec.skinny_ids.push_back(s);
    spec.fat_ids.push_back(f);
    out.jobs.push_back({s, spec.skinny_length(), thin});
    out.jobs.push_back({f, fat_duration, budgets});
    out.edges.push_back({s, f});
    if (k > 0) out.edges.push_back({f - 2, s});
  }
  return out;
}

Edge link_chains(const ChainSpec& from, const ChainSpec& to) {
  if (from.sink_id() == to.sink_id()) throw Error(ErrorCode::SelfLink, "a chain cannot precede itself");
  return {from.sink_id(), to.source_id()};
}

ChainDagBuilder::ChainDagBuilder(int d, Time fat_duration, JobId first_id)
    : d_(d), fat_duration_(fat_duration), first_id_(first_id), next_id_(first_id) {
  if (d < 1) throw Error(ErrorCode::BadParams, "need at least one resource type");
}

std::size_t ChainDagBuilder::add_chain(int m, int i) {
  if (i < 0 || i > m || m > 40) throw Error(ErrorCode::BadParams, "chain needs 0 <= i <= m <= 40");
  types_.emplace_back(m, i);
  bases_.push_back(next_id_);
  next_id_ += 2 * (JobId{1} << (m - i));
  return types_.size() - 1;
}

JobId ChainDagBuilder::sink_of(std::size_t chain) const {
  auto [m, i] = types_.at(chain);
  return bases_[chain] + 2 * (JobId{1} << (m - i)) - 1;
}

void ChainDagBuilder::link(std::size_t from, std::size_t to) {
  if (from == to) throw Error(ErrorCode::SelfLink, "a chain cannot precede itself");
  if (from >= types_.size() || to >= types_.size()) throw Error(ErrorCode::BadParams, "unknown chain");
  links_.emplace_back(from, to);
}

ChainDagBuilder::Result ChainDagBuilder::build() const {
  const auto total = std::max<std::int64_t>(job_count(), 1);
  const Rational eps(1, 2 * total);
  const ResourceVector budgets(d_, Rational(1));
  Result res;
  std::vector<Job> jobs;
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < types_.size(); ++c) {
    auto parts = build_chain(types_[c].first, types_[c].second, eps, fat_duration_, bases_[c], budgets, total);
    jobs.insert(jobs.end(), parts.jobs.begin(), parts.jobs.end());
    edges.insert(edges.end(), parts.edges.begin(), parts.edges.end());
    res.chains.push_back(std::move(parts.spec));
  }
  for (auto [a, b] : links_) edges.push_back(link_chains(res.chains[a], res.chains[b]));
  edges.insert(edges.end(), extra_.begin(), extra_.end());
  res.instance = Instance(budgets, std::move(jobs), std::move(edges));
  res.links = links_;
  return res;
}

bool is_fat(const Instance& inst, const Job& job) {
  const auto& b = inst.budgets();
  for (std::size_t r = 0; r < b.size() && r < job.demand.size(); ++r)
    if (b[r] > 0 && job.demand[r] == b[r]) return true;
  return false;
}

Schedule schedule_same_length_parallel(const Instance& inst, std::span<const ChainSpec> chains, Time offset) {
  Schedule out;
  if (chains.empty()) return out;
  for (const auto& c : chains)
    if (c.i != chains.front().i) throw Error(ErrorCode::MixedTypes, "chains have different skinny lengths");
  const Time len = chains.front().skinny_length();
  std::size_t rounds = 0;
  for (const auto& c : chains) rounds = std::max(rounds, c.tuple_count());
  std::int64_t rank = 0;
  Time t = offset;
  for (std::size_t j = 0; j < rounds; ++j) {
    for (const auto& c : chains)
      if (j < c.tuple_count()) out.set(c.skinny_ids[j], t, rank++);
    Time cursor = t + len;
    for (const auto& c : chains) {
      if (j >= c.tuple_count()) continue;
      out.set(c.fat_ids[j], cursor, rank++);
      cursor += inst.job(c.fat_ids[j]).duration;
    }
    t = cursor;
  }
  return out;
}

Time parallel_length(std::span<const ChainSpec> chains) {
  if (chains.empty()) return 0;
  std::size_t rounds = 0;
  for (const auto& c : chains) rounds = std::max(rounds, c.tuple_count());
  Time t = 0;
  for (std::size_t j = 0; j < rounds; ++j) {
    t += chains.front().skinny_length();
    for (const auto& c : chains)
      if (j < c.tuple_count()) t += c.fat_duration;
  }
  return t;
}

namespace {

void require_feasible(const Instance& inst, const Schedule& sched) {
  auto rep = check_feasible(inst, sched);
  if (!rep.feasible()) {
    const auto& v = rep.violations.front();
    throw Error(ErrorCode::InfeasibleInput,
                std::string(to_string(v.kind)) + " violation at t=" + std::to_string(v.instant) + ": " + v.detail);
  }
}

// starts first, zero jobs before positive ones at a shared instant, then rank
std::vector<std::size_t> sweep_order(const Instance& inst, const Schedule& sched) {
  std::vector<std::size_t> order(inst.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto key = [&](std::size_t k) {
    const auto& s = sched.at(inst.at(k).id);
    return std::make_tuple(s.start, inst.at(k).duration > 0, s.rank, inst.at(k).id);
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });
  return order;
}

}  // namespace

Schedule normalize_sequential(const Instance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  struct Block {
    std::vector<std::size_t> jobs;
    Time length = 0;
  };
  std::vector<Block> blocks;
  std::vector<bool> in_group(inst.size(), false);
  bool group_open = false;
  Time group_end = 0;  // in input time

  auto close_group = [&] {
    if (!group_open) return;
    for (auto k : blocks.back().jobs) in_group[k] = false;
    group_open = false;
  };

  for (auto k : sweep_order(inst, sched)) {
    const auto& j = inst.at(k);
    const Time s = sched.start(j.id);
    if (j.duration == 0 || is_fat(inst, j)) {
      close_group();
      blocks.push_back({{k}, j.duration});
      continue;
    }
    if (group_open && s < group_end) {
      for (auto p : inst.preds(k))
        if (in_group[p])
          throw Error(ErrorCode::InfeasibleInput, "skinny job " + std::to_string(j.id) + " depends on a skinny job; not a chain DAG");
      auto& b = blocks.back();
      b.jobs.push_back(k);
      b.length = std::max(b.length, j.duration);
      in_group[k] = true;
      group_end = std::max(group_end, s + j.duration);
      continue;
    }
    close_group();
    blocks.push_back({{k}, j.duration});
    in_group[k] = true;
    group_open = true;
    group_end = s + j.duration;
  }

  Schedule out;
  Time t = 0;
  for (const auto& b : blocks) {
    for (auto k : b.jobs) out.set(inst.at(k).id, t);
    t += b.length;
  }
  for (const auto& [id, slot] : out.slots)
    if (slot.start > sched.start(id))
      throw Error(ErrorCode::InfeasibleInput, "job " + std::to_string(id) + " would move later; not a chain DAG");
  assign_ranks(inst, out);
  auto rep = check_feasible(inst, out);
  if (!rep.feasible()) throw Error(ErrorCode::InfeasibleInput, "sequential form is infeasible; not a chain DAG");
  return out;
}

std::vector<Phase> sequential_phases(const Instance& inst, const Schedule& sched) {
  std::vector<Phase> phases;
  auto order = sweep_order(inst, sched);
  Time busy_until = 0;
  std::size_t k = 0;
  while (k < order.size()) {
    const Time t = sched.start(inst.at(order[k]).id);
    if (t < busy_until)
      throw Error(ErrorCode::NotNormalized, "job " + std::to_string(inst.at(order[k]).id) + " starts inside a running phase");
    Phase group{t, 0, true, {}};
    for (; k < order.size() && sched.start(inst.at(order[k]).id) == t; ++k) {
      const auto& j = inst.at(order[k]);
      if (j.duration == 0) {
        phases.push_back({t, 0, false, {j.id}});
      } else if (is_fat(inst, j)) {
        phases.push_back({t, j.duration, false, {j.id}});
        busy_until = t + j.duration;
      } else {
        group.jobs.push_back(j.id);
        group.length = std::max(group.length, j.duration);
      }
    }
    if (!group.jobs.empty()) {
      if (busy_until > t) throw Error(ErrorCode::NotNormalized, "skinny jobs start beside a fat job");
      busy_until = t + group.length;
      phases.push_back(std::move(group));
    }
  }
  return phases;
}

Schedule batch_same_length(const Instance& inst, const Schedule& sched) {
  require_feasible(inst, sched);
  Schedule out;
  Time t = 0;
  for (const auto& p : sequential_phases(inst, sched)) {
    if (!p.skinny) {
      out.set(p.jobs.front(), t);
      t += p.length;
      continue;
    }
    std::set<Time, std::greater<>> lengths;
    for (auto id : p.jobs) lengths.insert(inst.job(id).duration);
    for (Time len : lengths) {
      for (auto id : p.jobs)
        if (inst.job(id).duration == len) out.set(id, t);
      t += len;
    }
  }
  assign_ranks(inst, out);
  return out;
}

QSequence extract_q_sequence(const Instance& inst, const Schedule& sched) {
  sequential_phases(inst, sched);  // rejects non-sequential input
  std::map<Time, Time> longest;
  for (const auto& j : inst.jobs())
    if (j.duration > 0) {
      auto& v = longest[sched.start(j.id)];
      v = std::max(v, j.duration);
    }
  QSequence q;
  Time t = 0;
  for (auto it = longest.begin(); it != longest.end();) {
    if (it->first != t)
      throw Error(ErrorCode::NotNormalized, "no job starts at " + std::to_string(t));
    q.push_back(it->second);
    t += it->second;
    it = longest.lower_bound(t);
    if (it != longest.end() && it->first != t) throw Error(ErrorCode::NotNormalized, "no job starts at " + std::to_string(t));
  }
  return q;
}

Time mixed_type_lower_bound(std::span<const std::pair<int, int>> types) {
  std::set<int> seen;
  Time total = 0;
  for (auto [m, i] : types) {
    if (!seen.insert(i).second) throw Error(ErrorCode::DuplicateType, "skinny length 2^" + std::to_string(i) + " repeats");
    if (i < 0 || i > m || m > 40) throw Error(ErrorCode::BadParams, "type needs 0 <= i <= m <= 40");
    total += Time{1} << m;
  }
  return (total + 1) / 2;
}

}  // namespace presched
