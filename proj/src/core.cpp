#include "presched/core.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <queue>
#include <set>

namespace presched {

Instance::Instance(ResourceVector budgets, std::vector<Job> jobs, std::vector<Edge> edges)
    : budgets_(std::move(budgets)), jobs_(std::move(jobs)), edges_(std::move(edges)) {
  index_.reserve(jobs_.size());
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    const auto& j = jobs_[k];
    if (j.duration < 0)
      throw Error(ErrorCode::BadFormat, "job " + std::to_string(j.id) + " has negative duration");
    for (const auto& a : j.demand)
      if (a < 0) throw Error(ErrorCode::BadFormat, "job " + std::to_string(j.id) + " has negative demand");
    if (!index_.emplace(j.id, k).second)
      throw Error(ErrorCode::BadFormat, "duplicate job id " + std::to_string(j.id));
  }
  for (const auto& b : budgets_)
    if (b < 0) throw Error(ErrorCode::BadFormat, "negative budget");
  preds_.resize(jobs_.size());
  succs_.resize(jobs_.size());
  for (const auto& e : edges_) {
    auto f = index_.find(e.from);
    auto t = index_.find(e.to);
    if (f == index_.end() || t == index_.end()) continue;
    succs_[f->second].push_back(t->second);
    preds_[t->second].push_back(f->second);
  }
}

std::size_t Instance::index_of(JobId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::MissingJob, "unknown job " + std::to_string(id));
  return it->second;
}

const Slot& Schedule::at(JobId id) const {
  auto it = slots.find(id);
  if (it == slots.end()) throw Error(ErrorCode::MissingJob, "job " + std::to_string(id) + " is not scheduled");
  return it->second;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Precedence: return "PRECEDENCE";
    case ViolationKind::Resource: return "RESOURCE";
    case ViolationKind::MissingJob: return "MISSING_JOB";
  }
  return "UNKNOWN";
}

bool is_power_of_two(Time t) { return t > 0 && std::has_single_bit(static_cast<std::uint64_t>(t)); }

int log2_exact(Time t) {
  if (!is_power_of_two(t)) throw Error(ErrorCode::BadParams, std::to_string(t) + " is not a power of 2");
  return std::countr_zero(static_cast<std::uint64_t>(t));
}

namespace {

// indices left with positive in-degree after Kahn's sweep; empty when acyclic
std::vector<std::size_t> kahn(const Instance& inst, std::vector<std::size_t>& order) {
  std::vector<std::size_t> indeg(inst.size());
  for (std::size_t v = 0; v < inst.size(); ++v) indeg[v] = inst.preds(v).size();
  std::vector<std::size_t> stack;
  for (std::size_t v = inst.size(); v-- > 0;)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (auto w : inst.succs(u))
      if (--indeg[w] == 0) stack.push_back(w);
  }
  std::vector<std::size_t> stuck;
  for (std::size_t v = 0; v < inst.size(); ++v)
    if (indeg[v] > 0) stuck.push_back(v);
  return stuck;
}

}  // namespace

std::vector<std::size_t> topological_order(const Instance& inst) {
  std::vector<std::size_t> order;
  if (!kahn(inst, order).empty()) throw Error(ErrorCode::Cycle, "precedence graph has a cycle");
  return order;
}

FeasibilityReport validate_instance(const Instance& inst) {
  FeasibilityReport rep;
  const auto d = inst.budgets().size();
  if (d == 0) rep.violations.push_back({ViolationKind::Resource, {}, 0, "no resource types"});
  for (const auto& j : inst.jobs()) {
    if (j.demand.size() != d) {
      rep.violations.push_back({ViolationKind::Resource, {j.id}, 0, "demand length differs from d"});
      continue;
    }
    if (!fits_within(j.demand, inst.budgets()))
      rep.violations.push_back({ViolationKind::Resource, {j.id}, 0, "demand exceeds budget"});
  }
  for (const auto& e : inst.edges()) {
    std::vector<JobId> missing;
    if (!inst.contains(e.from)) missing.push_back(e.from);
    if (!inst.contains(e.to)) missing.push_back(e.to);
    if (!missing.empty())
      rep.violations.push_back({ViolationKind::MissingJob, missing, 0,
                                "edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " has unknown endpoint"});
  }
  std::vector<std::size_t> order;
  auto stuck = kahn(inst, order);
  if (!stuck.empty()) {
    Violation v{ViolationKind::Precedence, {}, 0, "cycle"};
    for (auto k : stuck) v.jobs.push_back(inst.at(k).id);
    rep.violations.push_back(std::move(v));
  }
  return rep;
}

FeasibilityReport check_feasible(const Instance& inst, const Schedule& sched) {
  FeasibilityReport rep;
  const auto n = inst.size();
  std::vector<bool> placed(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    placed[k] = sched.has(inst.at(k).id);
    if (!placed[k]) rep.violations.push_back({ViolationKind::MissingJob, {inst.at(k).id}, 0, "no assignment"});
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (!placed[v]) continue;
    const auto& jv = inst.at(v);
    const auto& sv = sched.at(jv.id);
    for (auto u : inst.preds(v)) {
      if (!placed[u]) continue;
      const auto& ju = inst.at(u);
      const auto& su = sched.at(ju.id);
      Time fu = su.start + ju.duration;
      bool ok = fu < sv.start || (fu == sv.start && (ju.duration > 0 || su.rank < sv.rank));
      if (!ok)
        rep.violations.push_back({ViolationKind::Precedence, {ju.id, jv.id}, sv.start,
                                  "successor starts before predecessor finishes"});
    }
  }

  // zero jobs at one instant must carry distinct ranks
  std::map<std::pair<Time, std::int64_t>, JobId> zero_slots;
  std::vector<std::size_t> pos, zero;
  for (std::size_t k = 0; k < n; ++k) {
    if (!placed[k]) continue;
    const auto& j = inst.at(k);
    if (j.duration > 0) {
      pos.push_back(k);
      continue;
    }
    zero.push_back(k);
    const auto& s = sched.at(j.id);
    auto [it, fresh] = zero_slots.emplace(std::make_pair(s.start, s.rank), j.id);
    if (!fresh)
      rep.violations.push_back({ViolationKind::Precedence, {it->second, j.id}, s.start, "zero jobs share a rank"});
  }

  auto start_of = [&](std::size_t k) { return sched.at(inst.at(k).id).start; };
  auto finish_of = [&](std::size_t k) { return start_of(k) + inst.at(k).duration; };
  auto by_start = pos;
  std::sort(by_start.begin(), by_start.end(), [&](auto a, auto b) { return start_of(a) < start_of(b); });
  auto by_finish = pos;
  std::sort(by_finish.begin(), by_finish.end(), [&](auto a, auto b) { return finish_of(a) < finish_of(b); });
  std::sort(zero.begin(), zero.end(), [&](auto a, auto b) { return start_of(a) < start_of(b); });

  std::vector<Time> instants;
  for (auto k : pos) instants.push_back(start_of(k));
  for (auto k : zero) instants.push_back(start_of(k));
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

  ResourceVector usage(inst.budgets().size(), Rational(0));
  std::set<std::size_t> active;
  std::size_t si = 0, fi = 0, zi = 0;
  auto running_ids = [&] {
    std::vector<JobId> ids;
    for (auto k : active) ids.push_back(inst.at(k).id);
    return ids;
  };
  for (Time t : instants) {
    while (si < by_start.size() && start_of(by_start[si]) < t) {
      add_into(usage, inst.at(by_start[si]).demand);
      active.insert(by_start[si]);
      ++si;
    }
    while (fi < by_finish.size() && finish_of(by_finish[fi]) <= t) {
      if (active.erase(by_finish[fi])) subtract_from(usage, inst.at(by_finish[fi]).demand);
      ++fi;
    }
    // active = positive jobs with start < t < finish
    for (; zi < zero.size() && start_of(zero[zi]) == t; ++zi) {
      auto need = usage;
      add_into(need, inst.at(zero[zi]).demand);
      if (!fits_within(need, inst.budgets())) {
        auto ids = running_ids();
        ids.push_back(inst.at(zero[zi]).id);
        rep.violations.push_back({ViolationKind::Resource, ids, t, "zero job overlaps a straddling load"});
      }
    }
    bool started = false;
    while (si < by_start.size() && start_of(by_start[si]) == t) {
      add_into(usage, inst.at(by_start[si]).demand);
      active.insert(by_start[si]);
      ++si;
      started = true;
    }
    if (started && !fits_within(usage, inst.budgets()))
      rep.violations.push_back({ViolationKind::Resource, running_ids(), t, "budget exceeded"});
  }
  return rep;
}

Time makespan(const Instance& inst, const Schedule& sched) {
  Time m = 0;
  for (const auto& j : inst.jobs()) m = std::max(m, sched.at(j.id).start + j.duration);
  return m;
}

Instance inflate_zero_jobs(const Instance& inst, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw Error(ErrorCode::BadParams, "epsilon must lie in (0,1]");
  Rational factor = Rational(static_cast<std::int64_t>(inst.size())) / epsilon;
  if (factor.denominator() != 1) throw Error(ErrorCode::BadParams, "|V|/epsilon is not an integer");
  auto jobs = inst.jobs();
  for (auto& j : jobs) j.duration = j.duration == 0 ? 1 : j.duration * factor.numerator();
  return Instance(inst.budgets(), std::move(jobs), inst.edges());
}

Instance round_durations_pow2(const Instance& inst) {
  auto jobs = inst.jobs();
  for (auto& j : jobs) {
    if (j.duration <= 0) throw Error(ErrorCode::ZeroDuration, "job " + std::to_string(j.id) + " has duration 0");
    j.duration = static_cast<Time>(std::bit_ceil(static_cast<std::uint64_t>(j.duration)));
  }
  return Instance(inst.budgets(), std::move(jobs), inst.edges());
}

std::vector<IndexEdge> transitive_reduction(const std::vector<IndexEdge>& edges, std::size_t n) {
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorCode::MissingJob, "edge endpoint out of range");
    succ[u].push_back(v);
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto v : s) ++indeg[v];
  }
  std::vector<std::size_t> order, stack;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (auto w : succ[u])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  if (order.size() != n) throw Error(ErrorCode::Cycle, "edge set has a cycle");
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  std::vector<boost::dynamic_bitset<>> reach(n, boost::dynamic_bitset<>(n));
  std::vector<IndexEdge> kept;
  for (std::size_t k = n; k-- > 0;) {
    auto u = order[k];
    auto s = succ[u];
    // nearer successors first: anything reachable through them is redundant
    std::sort(s.begin(), s.end(), [&](auto a, auto b) { return position[a] < position[b]; });
    for (auto v : s) {
      if (reach[u].test(v)) continue;
      kept.emplace_back(u, v);
      reach[u] |= reach[v];
      reach[u].set(v);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<Edge> transitive_reduction(const Instance& inst) {
  std::vector<IndexEdge> idx;
  for (const auto& e : inst.edges()) idx.emplace_back(inst.index_of(e.from), inst.index_of(e.to));
  std::vector<Edge> out;
  for (auto [u, v] : transitive_reduction(idx, inst.size())) out.push_back({inst.at(u).id, inst.at(v).id});
  std::sort(out.begin(), out.end());
  return out;
}

Rational work(const Instance& inst, std::span<const JobId> jobs, int resource) {
  Rational total(0);
  for (auto id : jobs) {
    const auto& j = inst.job(id);
    total += j.demand.at(resource) * j.duration;
  }
  return total;
}

Rational work(const Instance& inst, int resource) {
  Rational total(0);
  for (const auto& j : inst.jobs()) total += j.demand.at(resource) * j.duration;
  return total;
}

std::map<JobId, Time> depth_profile(const Instance& inst) {
  auto order = topological_order(inst);
  std::vector<Time> delta(inst.size(), 1);
  for (auto v : order)
    for (auto p : inst.preds(v)) delta[v] = std::max(delta[v], delta[p] + inst.at(p).duration);
  std::map<JobId, Time> out;
  for (std::size_t v = 0; v < inst.size(); ++v) out[inst.at(v).id] = delta[v];
  return out;
}

void assign_ranks(const Instance& inst, Schedule& sched) {
  std::vector<std::size_t> indeg(inst.size());
  using Key = std::tuple<Time, JobId, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t v = 0; v < inst.size(); ++v) {
    indeg[v] = inst.preds(v).size();
    if (indeg[v] == 0) ready.emplace(sched.start(inst.at(v).id), inst.at(v).id, v);
  }
  std::int64_t rank = 0;
  while (!ready.empty()) {
    auto [start, id, v] = ready.top();
    ready.pop();
    sched.slots[id].rank = rank++;
    for (auto w : inst.succs(v))
      if (--indeg[w] == 0) ready.emplace(sched.start(inst.at(w).id), inst.at(w).id, w);
  }
  if (rank != static_cast<std::int64_t>(inst.size())) throw Error(ErrorCode::Cycle, "precedence graph has a cycle");
}

}  // namespace presched
