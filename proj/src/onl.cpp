#include "presched/onl.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace presched {

Time cap(Time i) {
  if (i <= 0) throw Error(ErrorCode::ZeroInput, "cap needs a positive argument");
  return i & -i;
}

Time assign_level(Time duration, std::span<const ParentLevel> parents) {
  if (!is_power_of_two(duration)) throw Error(ErrorCode::BadParams, "level needs a power-of-2 duration");
  Time floor = 1;  // virtual source: level 1, duration 0
  for (const auto& p : parents) {
    if (p.psi <= 0) throw Error(ErrorCode::UnassignedParent, "parent has no level yet");
    floor = std::max(floor, p.psi + p.duration);
  }
  return (floor + duration - 1) / duration * duration;
}

namespace {

Time round_up(const Job& j) {
  if (j.duration <= 0) throw Error(ErrorCode::ZeroDuration, "job " + std::to_string(j.id) + " has duration 0");
  return static_cast<Time>(std::bit_ceil(static_cast<std::uint64_t>(j.duration)));
}

}  // namespace

LevelAssignment compute_levels(const Instance& inst) {
  LevelAssignment out;
  std::vector<Time> rounded(inst.size()), psi(inst.size()), delta(inst.size());
  for (auto v : topological_order(inst)) {
    rounded[v] = round_up(inst.at(v));
    std::vector<ParentLevel> parents;
    delta[v] = 1;
    for (auto p : inst.preds(v)) {
      parents.push_back({psi[p], rounded[p]});
      delta[v] = std::max(delta[v], delta[p] + rounded[p]);
    }
    psi[v] = assign_level(rounded[v], parents);
    out.psi[inst.at(v).id] = psi[v];
    out.delta[inst.at(v).id] = delta[v];
  }
  return out;
}

WorkingSetPacker::WorkingSetPacker(std::vector<Job> jobs, ResourceVector budgets, Time)
    : jobs_(std::move(jobs)), is_started_(jobs_.size(), false), budgets_(std::move(budgets)),
      usage_(budgets_.size(), Rational(0)) {
  for (const auto& j : jobs_)
    if (j.demand.size() != budgets_.size() || !fits_within(j.demand, budgets_))
      throw Error(ErrorCode::JobExceedsBudget, "job " + std::to_string(j.id) + " can never fit");
  std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) {
    return a.duration != b.duration ? a.duration > b.duration : a.id < b.id;
  });
}

std::vector<JobId> WorkingSetPacker::fill(Time now) {
  std::vector<JobId> out;
  auto room = budgets_;
  subtract_from(room, usage_);
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (is_started_[k] || !fits_within(jobs_[k].demand, room)) continue;
    is_started_[k] = true;
    ++started_;
    subtract_from(room, jobs_[k].demand);
    add_into(usage_, jobs_[k].demand);
    running_.emplace(now + jobs_[k].duration, k);
    out.push_back(jobs_[k].id);
  }
  return out;
}

void WorkingSetPacker::advance_to(Time now) {
  while (!running_.empty() && running_.begin()->first <= now) {
    subtract_from(usage_, jobs_[running_.begin()->second].demand);
    running_.erase(running_.begin());
  }
}

std::optional<Time> WorkingSetPacker::next_finish() const {
  if (running_.empty()) return std::nullopt;
  return running_.begin()->first;
}

WorkingSetRun execute_working_set(const std::vector<Job>& jobs, const ResourceVector& budgets) {
  WorkingSetPacker packer(jobs, budgets, 0);
  WorkingSetRun out;
  std::int64_t rank = 0;
  Time t = 0;
  while (true) {
    packer.advance_to(t);
    for (auto id : packer.fill(t)) out.schedule.set(id, t, rank++);
    if (packer.done()) break;
    auto next = packer.next_finish();
    if (!next) break;
    t = *next;
  }
  out.tau = t;
  return out;
}

void OnlScheduler::ingest(const SchedulerView& view) {
  for (; consumed_ < view.events.size(); ++consumed_) {
    const auto& ev = view.events[consumed_];
    for (auto id : ev.finished) {
      if (!known_.count(id)) throw Error(ErrorCode::RevealViolation, "finish of unknown job " + std::to_string(id));
      finished_.insert(id);
    }
    for (const auto& rj : ev.revealed) {
      const auto& j = rj.job;
      if (known_.count(j.id)) throw Error(ErrorCode::RevealViolation, "job " + std::to_string(j.id) + " revealed twice");
      for (auto p : rj.preds)
        if (!finished_.count(p))
          throw Error(ErrorCode::RevealViolation,
                      "job " + std::to_string(j.id) + " revealed before predecessor " + std::to_string(p) + " finished");
      if (j.demand.size() != view.budgets.size() || !fits_within(j.demand, view.budgets))
        throw Error(ErrorCode::JobExceedsBudget, "job " + std::to_string(j.id) + " can never fit");
      const Time t = round_up(j);
      std::vector<ParentLevel> parents;
      Time delta = 1;
      for (auto p : rj.preds) {
        Time tp = trace_.rounded.at(p);
        parents.push_back({known_.at(p).psi, tp});
        delta = std::max(delta, trace_.assignment.delta.at(p) + tp);
      }
      const Time psi = assign_level(t, parents);
      known_.emplace(j.id, Known{Job{j.id, t, j.demand}, rj.preds, psi});
      trace_.rounded[j.id] = t;
      trace_.assignment.psi[j.id] = psi;
      trace_.assignment.delta[j.id] = delta;
      trace_.l_max = std::max(trace_.l_max, psi);
      trace_.l_end = std::max(trace_.l_end, psi + t);
      trace_.t_max = std::max(trace_.t_max, t);
      ready_[psi].push_back(j.id);
    }
  }
}

void OnlScheduler::open_stage(Time now, const ResourceVector& budgets) {
  auto it = ready_.begin();
  LevelRecord rec;
  rec.level = it->first;
  rec.jobs = std::move(it->second);
  ready_.erase(it);
  std::sort(rec.jobs.begin(), rec.jobs.end());

  std::unordered_set<JobId> members(rec.jobs.begin(), rec.jobs.end());
  std::vector<Job> jobs;
  rec.work.assign(budgets.size(), Rational(0));
  for (auto id : rec.jobs) {
    const auto& k = known_.at(id);
    for (auto p : k.preds)
      if (members.count(p))
        throw std::logic_error("working set at level " + std::to_string(rec.level) + " contains an edge");
    for (std::size_t r = 0; r < budgets.size(); ++r) rec.work[r] += k.job.demand[r] * k.job.duration;
    jobs.push_back(k.job);
  }
  stage_.emplace(std::move(jobs), budgets, now);
  stage_start_ = now;
  trace_.levels.push_back(std::move(rec));
}

Decision OnlScheduler::decide(const SchedulerView& view) {
  ingest(view);
  if (stage_) {
    stage_->advance_to(view.now);
    if (stage_->done()) {
      trace_.levels.back().tau = view.now - stage_start_;
      trace_.makespan += trace_.levels.back().tau;
      stage_.reset();
    }
  }
  Decision d;
  if (!stage_) {
    if (ready_.empty()) return d;
    open_stage(view.now, view.budgets);
  }
  d.start = stage_->fill(view.now);
  d.wake_at = stage_->next_finish();
  return d;
}

std::pair<Schedule, OnlTrace> run_onl(const OnlineInstance& online) { return run_onl(online.instance); }

std::pair<Schedule, OnlTrace> run_onl(const Instance& inst) {
  OnlScheduler onl;
  auto res = simulate_online(inst, onl);
  return {std::move(res.schedule), onl.trace()};
}

SumCapBound sum_cap_bound(const OnlTrace& trace, std::size_t n_jobs) {
  SumCapBound b;
  for (const auto& lv : trace.levels) b.lhs += std::min(trace.t_max, cap(lv.level));
  const Time log_n = n_jobs <= 1 ? 0 : static_cast<Time>(std::bit_width(n_jobs - 1));
  b.rhs_log_v = (log_n + 1) * trace.l_max * 2;
  const Time log_t = trace.t_max >= 1 ? static_cast<Time>(std::bit_width(static_cast<std::uint64_t>(trace.t_max)) - 1) : 0;
  b.rhs_log_tmax = 2 * trace.l_max * (log_t + 1);
  return b;
}

Rational opt_lower_bound(const Instance& inst, const OnlTrace& trace) {
  Rational area(0);
  const int d = inst.resource_count();
  for (int r = 0; r < d; ++r)
    if (inst.budgets()[r] > 0) area += work(inst, r) / inst.budgets()[r];
  if (d > 0) area /= d;
  Rational path = Rational(trace.l_end, 2) - 1;
  return std::max(area, path);
}

}  // namespace presched
