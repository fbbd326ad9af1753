#pragma once

#include "presched/error.hpp"
#include "presched/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace presched {

using JobId = std::int64_t;
using Time = std::int64_t;

struct Job {
  JobId id = 0;
  Time duration = 0;
  ResourceVector demand;
};

struct Edge {
  JobId from = 0;
  JobId to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable DAG of jobs. Edges whose endpoints are unknown are kept verbatim
// (validate_instance reports them) but do not enter the adjacency lists.
class Instance {
 public:
  Instance() = default;
  Instance(ResourceVector budgets, std::vector<Job> jobs, std::vector<Edge> edges);

  int resource_count() const { return static_cast<int>(budgets_.size()); }
  const ResourceVector& budgets() const { return budgets_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return jobs_.size(); }

  bool contains(JobId id) const { return index_.count(id) != 0; }
  std::size_t index_of(JobId id) const;
  const Job& job(JobId id) const { return jobs_[index_of(id)]; }
  const Job& at(std::size_t idx) const { return jobs_[idx]; }

  std::span<const std::size_t> preds(std::size_t idx) const { return preds_[idx]; }
  std::span<const std::size_t> succs(std::size_t idx) const { return succs_[idx]; }

 private:
  ResourceVector budgets_;
  std::vector<Job> jobs_;
  std::vector<Edge> edges_;
  std::unordered_map<JobId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
};

struct Slot {
  Time start = 0;
  std::int64_t rank = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Schedule {
  std::map<JobId, Slot> slots;

  bool has(JobId id) const { return slots.count(id) != 0; }
  const Slot& at(JobId id) const;
  Time start(JobId id) const { return at(id).start; }
  void set(JobId id, Time start, std::int64_t rank = 0) { slots[id] = Slot{start, rank}; }
  std::size_t size() const { return slots.size(); }
};

enum class ViolationKind { Precedence, Resource, MissingJob };
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind = ViolationKind::Precedence;
  std::vector<JobId> jobs;
  Time instant = 0;
  std::string detail;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

FeasibilityReport validate_instance(const Instance& inst);
FeasibilityReport check_feasible(const Instance& inst, const Schedule& sched);

Time makespan(const Instance& inst, const Schedule& sched);

Instance inflate_zero_jobs(const Instance& inst, const Rational& epsilon);
Instance round_durations_pow2(const Instance& inst);

// nodes are 0..n-1
using IndexEdge = std::pair<std::size_t, std::size_t>;
std::vector<IndexEdge> transitive_reduction(const std::vector<IndexEdge>& edges, std::size_t n);
std::vector<Edge> transitive_reduction(const Instance& inst);

Rational work(const Instance& inst, std::span<const JobId> jobs, int resource);
Rational work(const Instance& inst, int resource);

std::map<JobId, Time> depth_profile(const Instance& inst);

// Kahn order over indices; throws CYCLE
std::vector<std::size_t> topological_order(const Instance& inst);

// Ranks every job by its position in a topological order that prefers
// earlier starts, so same-instant zero jobs follow their predecessors.
void assign_ranks(const Instance& inst, Schedule& sched);

bool is_power_of_two(Time t);
int log2_exact(Time t);

}  // namespace presched
