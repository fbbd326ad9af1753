#include "presched/baselines.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

namespace presched {

Decision GreedyScheduler::decide(const SchedulerView& view) {
  for (; consumed_ < view.events.size(); ++consumed_) {
    const auto& ev = view.events[consumed_];
    for (auto id : ev.finished) finished_.insert(id);
    for (const auto& rj : ev.revealed) {
      if (!known_.insert(rj.job.id).second)
        throw Error(ErrorCode::RevealViolation, "job " + std::to_string(rj.job.id) + " revealed twice");
      for (auto p : rj.preds)
        if (!finished_.count(p))
          throw Error(ErrorCode::RevealViolation, "job " + std::to_string(rj.job.id) + " revealed early");
      pending_.push_back(rj.job);
    }
  }
  Decision d;
  auto room = view.residual;
  std::vector<Job> left;
  for (auto& j : pending_) {
    if (j.duration == 0 && fits_within(j.demand, view.residual_instant)) {
      d.start.push_back(j.id);
    } else if (j.duration > 0 && fits_within(j.demand, room)) {
      subtract_from(room, j.demand);
      d.start.push_back(j.id);
    } else {
      left.push_back(std::move(j));
    }
  }
  pending_ = std::move(left);
  return d;
}

Schedule run_greedy(const OnlineInstance& online) { return run_greedy(online.instance); }

Schedule run_greedy(const Instance& inst) {
  GreedyScheduler g;
  return simulate_online(inst, g).schedule;
}

namespace {

// Exact search over event-driven decisions. Zero jobs fire as soon as they
// fit beside the jobs that started strictly earlier; positive jobs start only
// at 0 or at completion instants.
class BruteForce {
 public:
  BruteForce(const Instance& inst) : inst_(inst), n_(inst.size()) {
    pred_.assign(n_, 0);
    for (std::size_t k = 0; k < n_; ++k)
      for (auto p : inst.preds(k)) pred_[k] |= std::uint64_t{1} << p;
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  struct State {
    std::uint64_t done = 0;
    std::vector<std::pair<std::uint8_t, Time>> running;  // sorted by index
  };

  Time solve(State s) {
    close_zero(s);
    if (s.done == all_) return 0;
    auto key = encode(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.first;

    std::uint64_t busy = 0;
    auto room = inst_.budgets();
    for (auto [k, rem] : s.running) {
      busy |= std::uint64_t{1} << k;
      subtract_from(room, inst_.at(k).demand);
    }
    std::vector<std::uint8_t> ready;
    for (std::size_t k = 0; k < n_; ++k) {
      auto bit = std::uint64_t{1} << k;
      if ((s.done | busy) & bit) continue;
      if (inst_.at(k).duration == 0 || (pred_[k] & ~s.done)) continue;
      ready.push_back(static_cast<std::uint8_t>(k));
    }

    Time best = std::numeric_limits<Time>::max();
    std::uint64_t best_pick = 0;
    std::uint64_t pick = 0;
    auto explore = [&](auto&& self, std::size_t from, ResourceVector& left) -> void {
      if (from == ready.size()) {
        if (pick == 0 && s.running.empty()) return;
        State next = s;
        for (std::size_t q = 0; q < ready.size(); ++q)
          if (pick & (std::uint64_t{1} << q)) next.running.emplace_back(ready[q], inst_.at(ready[q]).duration);
        Time dt = std::numeric_limits<Time>::max();
        for (auto& r : next.running) dt = std::min(dt, r.second);
        std::erase_if(next.running, [&](auto& r) {
          r.second -= dt;
          if (r.second > 0) return false;
          next.done |= std::uint64_t{1} << r.first;
          return true;
        });
        std::sort(next.running.begin(), next.running.end());
        Time total = dt + solve(std::move(next));
        if (total < best) {
          best = total;
          best_pick = pick;
        }
        return;
      }
      const auto& dem = inst_.at(ready[from]).demand;
      if (fits_within(dem, left)) {
        subtract_from(left, dem);
        pick |= std::uint64_t{1} << from;
        self(self, from + 1, left);
        pick &= ~(std::uint64_t{1} << from);
        add_into(left, dem);
      }
      self(self, from + 1, left);
    };
    explore(explore, 0, room);
    if (best == std::numeric_limits<Time>::max()) throw Error(ErrorCode::Deadlock, "no job can ever start");

    std::uint64_t chosen = 0;
    for (std::size_t q = 0; q < ready.size(); ++q)
      if (best_pick & (std::uint64_t{1} << q)) chosen |= std::uint64_t{1} << ready[q];
    memo_.emplace(std::move(key), std::make_pair(best, chosen));
    return best;
  }

  Schedule replay() {
    Schedule out;
    State s;
    Time t = 0;
    while (true) {
      auto before = s.done;
      close_zero(s);
      for (std::size_t k = 0; k < n_; ++k)
        if (((s.done & ~before) >> k) & 1) out.set(inst_.at(k).id, t);
      if (s.done == all_) break;
      auto chosen = memo_.at(encode(s)).second;
      for (std::size_t k = 0; k < n_; ++k)
        if ((chosen >> k) & 1) {
          out.set(inst_.at(k).id, t);
          s.running.emplace_back(static_cast<std::uint8_t>(k), inst_.at(k).duration);
        }
      Time dt = std::numeric_limits<Time>::max();
      for (auto& r : s.running) dt = std::min(dt, r.second);
      std::erase_if(s.running, [&](auto& r) {
        r.second -= dt;
        if (r.second > 0) return false;
        s.done |= std::uint64_t{1} << r.first;
        return true;
      });
      std::sort(s.running.begin(), s.running.end());
      t += dt;
    }
    assign_ranks(inst_, out);
    return out;
  }

 private:
  void close_zero(State& s) const {
    auto load = ResourceVector(inst_.budgets().size(), Rational(0));
    for (auto [k, rem] : s.running) add_into(load, inst_.at(k).demand);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t k = 0; k < n_; ++k) {
        auto bit = std::uint64_t{1} << k;
        if ((s.done & bit) || inst_.at(k).duration != 0 || (pred_[k] & ~s.done)) continue;
        auto need = load;
        add_into(need, inst_.at(k).demand);
        if (!fits_within(need, inst_.budgets())) continue;
        s.done |= bit;
        grew = true;
      }
    }
  }

  static std::string encode(const State& s) {
    std::string key(sizeof(s.done) + s.running.size() * 9, '\0');
    std::memcpy(key.data(), &s.done, sizeof(s.done));
    std::size_t at = sizeof(s.done);
    for (auto [k, rem] : s.running) {
      key[at++] = static_cast<char>(k);
      std::memcpy(key.data() + at, &rem, sizeof(rem));
      at += sizeof(rem);
    }
    return key;
  }

  const Instance& inst_;
  std::size_t n_;
  std::vector<std::uint64_t> pred_;
  std::uint64_t all_ = 0;
  std::unordered_map<std::string, std::pair<Time, std::uint64_t>> memo_;
};

Schedule merge(Schedule into, const Schedule& piece) {
  for (const auto& [id, slot] : piece.slots) into.slots[id] = slot;
  return into;
}

}  // namespace

BruteForceResult brute_force_optimal(const Instance& inst, std::size_t limit) {
  std::size_t positive = 0;
  for (const auto& j : inst.jobs()) positive += j.duration > 0;
  if (positive > limit || inst.size() > 64)
    throw Error(ErrorCode::TooLarge, std::to_string(positive) + " positive jobs exceed the limit of " + std::to_string(limit));
  auto rep = validate_instance(inst);
  if (!rep.feasible()) throw Error(ErrorCode::BadParams, "instance fails validation: " + rep.violations.front().detail);
  BruteForceResult out;
  if (inst.size() == 0) return out;
  BruteForce bf(inst);
  out.makespan = bf.solve({});
  out.schedule = bf.replay();
  return out;
}

Schedule gadget_offline_schedule(const OnlineInstance& online) {
  const auto& meta = online.meta;
  if (meta.family != "gadget" || meta.gadgets.empty() || meta.blocking_chains.size() != meta.gadgets.size())
    throw Error(ErrorCode::MissingMetadata, "instance carries no gadget metadata");
  const auto& inst = online.instance;
  Schedule out;
  Time t = 0;
  std::vector<bool> blocking(online.chains.size(), false);
  for (auto c : meta.blocking_chains) {
    const auto& chain = online.chains.at(c);
    blocking[c] = true;
    out = merge(std::move(out), schedule_same_length_parallel(inst, std::span(&chain, 1), t));
    t += chain.span();
  }
  std::map<int, std::vector<ChainSpec>> by_type;
  for (std::size_t c = 0; c < online.chains.size(); ++c)
    if (!blocking[c]) by_type[online.chains[c].i].push_back(online.chains[c]);
  for (const auto& [i, group] : by_type) {
    out = merge(std::move(out), schedule_same_length_parallel(inst, group, t));
    t += parallel_length(group);
  }
  assign_ranks(inst, out);
  return out;
}

Schedule multiresource_offline_schedule(const OnlineInstance& online) {
  const auto& meta = online.meta;
  if (meta.family != "multiresource" || meta.layers.empty() || meta.blocking.size() + 1 != meta.layers.size())
    throw Error(ErrorCode::MissingMetadata, "instance carries no layer metadata");
  Schedule out;
  Time t = 0;
  for (auto b : meta.blocking) out.set(b, t++);
  std::vector<std::deque<JobId>> queues;
  for (const auto& layer : meta.layers) {
    queues.emplace_back();
    for (auto id : layer)
      if (!out.has(id)) queues.back().push_back(id);
  }
  bool any = true;
  while (any) {
    any = false;
    for (auto& q : queues) {
      if (q.empty()) continue;
      out.set(q.front(), t);
      q.pop_front();
      any = true;
    }
    if (any) ++t;
  }
  assign_ranks(online.instance, out);
  return out;
}

Schedule greedy_killer_offline_schedule(const OnlineInstance& online) {
  const auto& meta = online.meta;
  if (meta.family != "greedy-killer" || meta.layers.size() != 3)
    throw Error(ErrorCode::MissingMetadata, "instance carries no a/b/c job groups");
  const auto& a = meta.layers[0];
  const auto& b = meta.layers[1];
  const auto& c = meta.layers[2];
  Schedule out;
  Time t = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.set(a[k], t);
    t += online.instance.job(a[k]).duration;
    out.set(c[k], t);
    t += online.instance.job(c[k]).duration;
  }
  for (auto id : b) out.set(id, t);
  assign_ranks(online.instance, out);
  return out;
}

ScsResult scs_brute_force(const ScsInstance& scs) {
  validate_scs(scs);
  std::size_t total = 0;
  for (const auto& s : scs.sequences) total += s.size();
  if (total > 25) throw Error(ErrorCode::TooLarge, "sequence lengths sum past 25");
  const auto& seqs = scs.sequences;
  std::vector<std::uint64_t> radix(seqs.size());
  std::uint64_t mult = 1;
  for (std::size_t q = 0; q < seqs.size(); ++q) {
    radix[q] = mult;
    mult *= seqs[q].size() + 1;
  }
  auto decode = [&](std::uint64_t code, std::size_t q) { return (code / radix[q]) % (seqs[q].size() + 1); };
  std::uint64_t goal = 0;
  for (std::size_t q = 0; q < seqs.size(); ++q) goal += seqs[q].size() * radix[q];

  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, int>> parent;
  std::deque<std::uint64_t> frontier{0};
  parent[0] = {0, 0};
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    if (cur == goal) break;
    for (int c = 1; c <= scs.rho; ++c) {
      auto next = cur;
      for (std::size_t q = 0; q < seqs.size(); ++q) {
        auto p = decode(cur, q);
        if (p < seqs[q].size() && seqs[q][p] == c) next += radix[q];
      }
      if (next == cur || parent.count(next)) continue;
      parent[next] = {cur, c};
      frontier.push_back(next);
    }
  }
  ScsResult out;
  for (auto at = goal; at != 0; at = parent.at(at).first) out.supersequence.push_back(parent.at(at).second);
  std::reverse(out.supersequence.begin(), out.supersequence.end());
  out.length = static_cast<int>(out.supersequence.size());
  return out;
}

LtsResult lts_brute_force(const LtsInstance& lts) {
  validate_lts(lts);
  const auto n = lts.jobs.size();
  if (n > 15) throw Error(ErrorCode::TooLarge, "LTS oracle handles at most 15 jobs");
  std::map<JobId, std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k) idx[lts.jobs[k].id] = k;
  std::vector<std::uint32_t> pred(n, 0);
  for (const auto& e : lts.edges) pred[idx.at(e.to)] |= 1u << idx.at(e.from);
  const std::uint32_t all = (1u << n) - 1;

  // every job on `machine` whose predecessors end up inside the block or before it
  auto closure = [&](std::uint32_t done, int machine) {
    std::uint32_t got = done;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t k = 0; k < n; ++k)
        if (!((got >> k) & 1) && lts.jobs[k].machine == machine && (pred[k] & ~got) == 0) {
          got |= 1u << k;
          grew = true;
        }
    }
    return got;
  };

  std::vector<std::int64_t> dist(all + 1, std::numeric_limits<std::int64_t>::max());
  std::vector<std::pair<std::uint32_t, int>> from(all + 1);
  using Item = std::pair<std::int64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[0] = 0;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [c, s] = pq.top();
    pq.pop();
    if (c != dist[s]) continue;
    if (s == all) break;
    for (const auto& m : lts.machines) {
      auto t = closure(s, m.id);
      if (t == s || c + m.load >= dist[t]) continue;
      dist[t] = c + m.load;
      from[t] = {s, m.id};
      pq.emplace(dist[t], t);
    }
  }
  LtsResult out;
  out.cost = dist[all];
  for (auto s = all; s != 0; s = from[s].first) {
    LtsBlock b{from[s].second, {}};
    auto added = s & ~from[s].first;
    for (std::size_t k = 0; k < n; ++k)
      if ((added >> k) & 1) b.jobs.push_back(lts.jobs[k].id);
    out.solution.blocks.push_back(std::move(b));
  }
  std::reverse(out.solution.blocks.begin(), out.solution.blocks.end());
  return out;
}

}  // namespace presched
