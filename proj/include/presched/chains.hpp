#pragma once

#include "presched/core.hpp"

#include <span>
#include <utility>
#include <vector>

namespace presched {

// C(m,i): 2^(m-i) tuples, each a skinny job of length 2^i followed by a fat job.
struct ChainSpec {
  int m = 0;
  int i = 0;
  std::vector<JobId> skinny_ids;
  std::vector<JobId> fat_ids;
  Rational skinny_demand;
  Time fat_duration = 0;

  std::size_t tuple_count() const { return skinny_ids.size(); }
  JobId source_id() const { return skinny_ids.front(); }
  JobId sink_id() const { return fat_ids.back(); }
  Time skinny_length() const { return Time{1} << i; }
  Time total_length() const { return Time{1} << m; }
  // wall-clock length when run alone
  Time span() const { return static_cast<Time>(tuple_count()) * (skinny_length() + fat_duration); }
};

struct ChainParts {
  ChainSpec spec;
  std::vector<Job> jobs;
  std::vector<Edge> edges;
};

// planned_jobs is the job count of the whole instance the chain will live in;
// epsilon must stay strictly below 1/planned_jobs.
ChainParts build_chain(int m, int i, const Rational& epsilon, Time fat_duration, JobId id_base,
                       const ResourceVector& budgets, std::int64_t planned_jobs);

Edge link_chains(const ChainSpec& from, const ChainSpec& to);

// Collects chains and links, then fixes epsilon = 1/(2 * total jobs) on build.
class ChainDagBuilder {
 public:
  explicit ChainDagBuilder(int d = 1, Time fat_duration = 0, JobId first_id = 0);

  std::size_t add_chain(int m, int i);
  void link(std::size_t from, std::size_t to);
  // raw edge between two chain jobs, e.g. a gadget sink fanning out
  void add_edge(Edge e) { extra_.push_back(e); }
  std::int64_t job_count() const { return next_id_ - first_id_; }
  // ids the chain will receive; valid right after add_chain
  JobId source_of(std::size_t chain) const { return bases_[chain]; }
  JobId sink_of(std::size_t chain) const;

  struct Result {
    Instance instance;
    std::vector<ChainSpec> chains;
    std::vector<std::pair<std::size_t, std::size_t>> links;
  };
  Result build() const;

 private:
  int d_;
  Time fat_duration_;
  JobId first_id_;
  JobId next_id_;
  std::vector<std::pair<int, int>> types_;
  std::vector<JobId> bases_;
  std::vector<std::pair<std::size_t, std::size_t>> links_;
  std::vector<Edge> extra_;
};

bool is_fat(const Instance& inst, const Job& job);

// Tuple j of every unfinished chain runs in parallel; fats follow one by one.
// Ranks are local and increase with time; callers composing several such
// pieces re-rank the whole schedule.
Schedule schedule_same_length_parallel(const Instance& inst, std::span<const ChainSpec> chains, Time offset = 0);
Time parallel_length(std::span<const ChainSpec> chains);

Schedule normalize_sequential(const Instance& inst, const Schedule& sched);
Schedule batch_same_length(const Instance& inst, const Schedule& sched);

// A maximal block of a sequential schedule: either one fat job or a group of
// skinny jobs all starting together.
struct Phase {
  Time start = 0;
  Time length = 0;
  bool skinny = false;
  std::vector<JobId> jobs;
};
// throws NOT_NORMALIZED if a job starts while a phase is still running
std::vector<Phase> sequential_phases(const Instance& inst, const Schedule& sched);

using QSequence = std::vector<Time>;
QSequence extract_q_sequence(const Instance& inst, const Schedule& sched);

Time mixed_type_lower_bound(std::span<const std::pair<int, int>> types);

}  // namespace presched
