#pragma once

#include "presched/chains.hpp"
#include "presched/problems.hpp"

#include <utility>

namespace presched {

enum class ReductionKind { Scs, Lts };

struct ReductionMap {
  ReductionKind kind = ReductionKind::Scs;
  int rho = 0;
  Instance instance;  // the reduced resource-scheduling instance
  std::vector<ChainSpec> chains;  // one per source element
  std::vector<std::pair<std::size_t, std::size_t>> chain_edges;

  // SCS side: chain c is character positions[c].second of sequence positions[c].first
  ScsInstance scs;
  std::vector<std::pair<int, int>> positions;

  // LTS side: chain c stands for lts_jobs[c]; machines are lts.machines in order,
  // machine index k (1-based) has chain length exponent span_exp[k-1]
  LtsInstance lts;
  std::vector<JobId> lts_jobs;
  std::vector<int> span_exp;
};

std::pair<Instance, ReductionMap> scs_to_rs(const ScsInstance& scs);
Schedule supersequence_to_schedule(const ReductionMap& map, const std::vector<int>& z);
std::vector<int> schedule_to_supersequence(const ReductionMap& map, const Schedule& sched);

struct EpochSequence {
  std::vector<int> x;              // skinny exponent per epoch
  std::vector<Time> thresholds;    // instant of each epoch's threshold
};
// normalize -> batch -> thresholds -> X
EpochSequence extract_epochs(const ReductionMap& map, const Schedule& sched);
// chain indices completed per epoch when X is replayed greedily
std::vector<std::vector<std::size_t>> replay_epochs(const ReductionMap& map, const std::vector<int>& x);

struct BondedResolution {
  LtsInstance lts;
  std::int64_t iterations = 0;
};
BondedResolution resolve_bonded_edges(const LtsInstance& lts);
std::size_t count_bonded_edges(const LtsInstance& lts);

struct BoundedLoads {
  LtsInstance lts;
  std::vector<JobId> dropped;
};
BoundedLoads bound_loading_times(const LtsInstance& lts);
LtsInstance round_and_normalize_loads(const LtsInstance& lts);
// machines that carry no job
LtsInstance drop_idle_machines(const LtsInstance& lts);

struct LtsPrep {
  LtsInstance original;
  LtsInstance prepared;
  std::vector<JobId> dropped;
  std::int64_t iterations = 0;
};
// drop idle machines -> resolve -> bound -> resolve -> round/normalize
LtsPrep lts_prep(const LtsInstance& lts);
// solution of the prepared instance -> solution of the original
LtsSolution lift_prepared_solution(const LtsPrep& prep, const LtsSolution& sol);

std::pair<Instance, ReductionMap> lts_to_rs(const LtsInstance& lts);
Schedule lts_solution_to_schedule(const ReductionMap& map, const LtsSolution& sol);
LtsSolution schedule_to_lts_solution(const ReductionMap& map, const Schedule& sched);

}  // namespace presched
