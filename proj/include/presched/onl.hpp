#pragma once

#include "presched/online.hpp"

#include <map>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace presched {

Time cap(Time i);

struct ParentLevel {
  Time psi = 0;  // <= 0 marks an unassigned parent
  Time duration = 0;
};
Time assign_level(Time duration, std::span<const ParentLevel> parents);

struct LevelAssignment {
  std::map<JobId, Time> psi;
  std::map<JobId, Time> delta;
};
// offline view of the levels ONL would assign, on power-of-2 rounded durations
LevelAssignment compute_levels(const Instance& inst);

// Event-driven maximal packing of an antichain: longest first, then id.
class WorkingSetPacker {
 public:
  WorkingSetPacker(std::vector<Job> jobs, ResourceVector budgets, Time now);
  // starts everything that fits at `now`; returns the started ids
  std::vector<JobId> fill(Time now);
  void advance_to(Time now);
  std::optional<Time> next_finish() const;
  bool done() const { return started_ == jobs_.size() && running_.empty(); }

 private:
  std::vector<Job> jobs_;
  std::vector<bool> is_started_;
  std::size_t started_ = 0;
  ResourceVector budgets_;
  ResourceVector usage_;
  std::multimap<Time, std::size_t> running_;
};

struct WorkingSetRun {
  Schedule schedule;  // starts relative to 0
  Time tau = 0;
};
WorkingSetRun execute_working_set(const std::vector<Job>& jobs, const ResourceVector& budgets);

struct LevelRecord {
  Time level = 0;
  std::vector<JobId> jobs;
  Time tau = 0;
  ResourceVector work;
};

struct OnlTrace {
  std::vector<LevelRecord> levels;
  Time l_max = 0;
  Time l_end = 0;
  Time makespan = 0;  // sum of tau
  Time t_max = 0;     // longest rounded duration
  LevelAssignment assignment;
  std::map<JobId, Time> rounded;
};

class OnlScheduler : public OnlineScheduler {
 public:
  Decision decide(const SchedulerView& view) override;
  const OnlTrace& trace() const { return trace_; }

 private:
  struct Known {
    Job job;
    std::vector<JobId> preds;
    Time psi = 0;
  };
  void ingest(const SchedulerView& view);
  void open_stage(Time now, const ResourceVector& budgets);

  std::unordered_map<JobId, Known> known_;
  std::unordered_set<JobId> finished_;
  std::map<Time, std::vector<JobId>> ready_;  // level -> unstarted jobs
  std::size_t consumed_ = 0;
  std::optional<WorkingSetPacker> stage_;
  Time stage_start_ = 0;
  OnlTrace trace_;
};

std::pair<Schedule, OnlTrace> run_onl(const OnlineInstance& online);
std::pair<Schedule, OnlTrace> run_onl(const Instance& inst);

struct SumCapBound {
  Time lhs = 0;
  Time rhs_log_v = 0;
  Time rhs_log_tmax = 0;
};
SumCapBound sum_cap_bound(const OnlTrace& trace, std::size_t n_jobs);

Rational opt_lower_bound(const Instance& inst, const OnlTrace& trace);

}  // namespace presched
