#pragma once

#include "presched/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace presched {

struct ScsInstance {
  int rho = 0;
  std::vector<std::vector<int>> sequences;
};
// throws SYMBOL_OUT_OF_RANGE / BAD_PARAMS
void validate_scs(const ScsInstance& scs);
bool is_supersequence(const std::vector<int>& z, const std::vector<std::vector<int>>& seqs);

struct LtsMachine {
  int id = 0;
  std::int64_t load = 1;
};

struct LtsJob {
  JobId id = 0;
  int machine = 0;
};

struct LtsInstance {
  std::vector<LtsMachine> machines;
  std::vector<LtsJob> jobs;
  std::vector<Edge> edges;

  std::int64_t load_of(int machine) const;
  int machine_of(JobId job) const;
  // durations 0, one dummy resource; convenient for graph helpers
  Instance as_dag() const;
};
// throws BAD_PARAMS for unknown machines, bad loads, duplicate ids; CYCLE
void validate_lts(const LtsInstance& lts);

struct LtsBlock {
  int machine = 0;
  std::vector<JobId> jobs;
};

struct LtsSolution {
  std::vector<LtsBlock> blocks;
};

std::int64_t lts_cost(const LtsInstance& lts, const LtsSolution& sol);
// empty when valid, otherwise the first problem found
std::optional<std::string> lts_solution_problem(const LtsInstance& lts, const LtsSolution& sol);

}  // namespace presched
