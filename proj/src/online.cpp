#include "presched/online.hpp"

#include <algorithm>

namespace presched {

OnlineInstance as_online(Instance inst) {
  OnlineInstance out;
  out.instance = std::move(inst);
  out.meta.family = "plain";
  return out;
}

SimulationResult simulate_online(const OnlineInstance& online, OnlineScheduler& scheduler) {
  return simulate_online(online.instance, scheduler);
}

SimulationResult simulate_online(const Instance& inst, OnlineScheduler& scheduler) {
  auto rep = validate_instance(inst);
  if (!rep.feasible()) throw Error(ErrorCode::BadParams, "instance fails validation: " + rep.violations.front().detail);

  const auto n = inst.size();
  const auto& budgets = inst.budgets();
  std::vector<std::size_t> waiting(n);
  std::vector<bool> revealed(n, false), started(n, false), finished(n, false);
  for (std::size_t k = 0; k < n; ++k) waiting[k] = inst.preds(k).size();

  SimulationResult res;
  std::vector<RunningJob> running;
  std::int64_t event_rank = 0, start_rank = 0;
  std::size_t done = 0, audited = 0;

  auto reveal = [&](Time t, std::vector<std::size_t> just_finished) {
    RevealEvent ev{t, event_rank++, {}, {}};
    std::sort(just_finished.begin(), just_finished.end(),
              [&](auto a, auto b) { return inst.at(a).id < inst.at(b).id; });
    std::vector<std::size_t> fresh;
    for (auto k : just_finished) {
      ev.finished.push_back(inst.at(k).id);
      for (auto w : inst.succs(k))
        if (--waiting[w] == 0) fresh.push_back(w);
    }
    if (just_finished.empty())
      for (std::size_t k = 0; k < n; ++k)
        if (waiting[k] == 0 && !revealed[k]) fresh.push_back(k);
    std::sort(fresh.begin(), fresh.end(), [&](auto a, auto b) { return inst.at(a).id < inst.at(b).id; });
    for (auto w : fresh) {
      revealed[w] = true;
      RevealedJob rj{inst.at(w), {}};
      for (auto p : inst.preds(w)) rj.preds.push_back(inst.at(p).id);
      std::sort(rj.preds.begin(), rj.preds.end());
      ev.revealed.push_back(std::move(rj));
    }
    if (!ev.finished.empty() || !ev.revealed.empty()) res.events.push_back(std::move(ev));
  };

  auto audit = [&] {
    for (; audited < res.events.size(); ++audited) {
      for (const auto& rj : res.events[audited].revealed) {
        if (!inst.contains(rj.job.id) || !revealed[inst.index_of(rj.job.id)]) ++res.audit_failures;
        for (auto p : rj.preds)
          if (!finished[inst.index_of(p)]) ++res.audit_failures;
      }
    }
    for (const auto& r : running)
      if (!started[inst.index_of(r.id)]) ++res.audit_failures;
  };

  auto violation = [](Time now, JobId id, const std::string& why) {
    return Error(ErrorCode::SchedulerViolation, "t=" + std::to_string(now) + " job " + std::to_string(id) + ": " + why);
  };

  reveal(0, {});
  Time now = 0;
  while (true) {
    std::optional<Time> wake;
    while (true) {
      SchedulerView view;
      view.now = now;
      view.budgets = budgets;
      view.residual = budgets;
      view.residual_instant = budgets;
      for (const auto& r : running) {
        const auto& dem = inst.job(r.id).demand;
        subtract_from(view.residual, dem);
        if (r.start < now) subtract_from(view.residual_instant, dem);
      }
      view.events = res.events;
      view.running = running;
      audit();

      Decision dec = scheduler.decide(view);
      ++res.decisions;
      wake = dec.wake_at;
      auto room = view.residual;
      std::vector<std::size_t> zero_done;
      for (auto id : dec.start) {
        if (!inst.contains(id)) throw violation(now, id, "unknown job");
        auto k = inst.index_of(id);
        if (!revealed[k]) throw violation(now, id, "job is not revealed");
        if (started[k]) throw violation(now, id, "job already started");
        const auto& j = inst.at(k);
        if (j.duration > 0) {
          if (!fits_within(j.demand, room)) throw violation(now, id, "exceeds residual budget");
          subtract_from(room, j.demand);
          running.push_back({id, now, now + j.duration});
        } else {
          if (!fits_within(j.demand, view.residual_instant)) throw violation(now, id, "zero job overlaps a straddling load");
          finished[k] = true;
          zero_done.push_back(k);
          ++done;
        }
        started[k] = true;
        res.schedule.set(id, now, start_rank++);
      }
      if (!zero_done.empty()) reveal(now, zero_done);
      if (dec.start.empty()) break;
    }

    std::optional<Time> next;
    for (const auto& r : running) next = next ? std::min(*next, r.finish) : r.finish;
    if (wake && *wake > now) next = next ? std::min(*next, *wake) : *wake;
    if (!next) {
      if (done == n) break;
      throw Error(ErrorCode::Deadlock, "t=" + std::to_string(now) + ": nothing running, " +
                                           std::to_string(n - done) + " jobs pending");
    }
    now = *next;
    std::vector<std::size_t> just_finished;
    std::erase_if(running, [&](const RunningJob& r) {
      if (r.finish != now) return false;
      auto k = inst.index_of(r.id);
      finished[k] = true;
      just_finished.push_back(k);
      return true;
    });
    done += just_finished.size();
    if (!just_finished.empty()) reveal(now, just_finished);
  }

  auto final_check = check_feasible(inst, res.schedule);
  if (!final_check.feasible()) throw Error(ErrorCode::SchedulerViolation, "final schedule infeasible: " + final_check.violations.front().detail);
  return res;
}

}  // namespace presched
