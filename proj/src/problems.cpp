#include "presched/problems.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace presched {

void validate_scs(const ScsInstance& scs) {
  if (scs.rho < 1) throw Error(ErrorCode::BadParams, "alphabet size must be >= 1");
  for (const auto& s : scs.sequences)
    for (int c : s)
      if (c < 1 || c > scs.rho)
        throw Error(ErrorCode::SymbolOutOfRange, "symbol " + std::to_string(c) + " outside 1.." + std::to_string(scs.rho));
}

bool is_supersequence(const std::vector<int>& z, const std::vector<std::vector<int>>& seqs) {
  for (const auto& s : seqs) {
    std::size_t k = 0;
    for (int c : z)
      if (k < s.size() && s[k] == c) ++k;
    if (k != s.size()) return false;
  }
  return true;
}

std::int64_t LtsInstance::load_of(int machine) const {
  for (const auto& m : machines)
    if (m.id == machine) return m.load;
  throw Error(ErrorCode::BadParams, "unknown machine " + std::to_string(machine));
}

int LtsInstance::machine_of(JobId job) const {
  for (const auto& j : jobs)
    if (j.id == job) return j.machine;
  throw Error(ErrorCode::MissingJob, "unknown job " + std::to_string(job));
}

Instance LtsInstance::as_dag() const {
  std::vector<Job> out;
  for (const auto& j : jobs) out.push_back({j.id, 0, {Rational(0)}});
  return Instance({Rational(1)}, std::move(out), edges);
}

void validate_lts(const LtsInstance& lts) {
  std::set<int> ids;
  for (const auto& m : lts.machines) {
    if (m.load < 1) throw Error(ErrorCode::BadParams, "machine " + std::to_string(m.id) + " has load < 1");
    if (!ids.insert(m.id).second) throw Error(ErrorCode::BadParams, "duplicate machine " + std::to_string(m.id));
  }
  for (const auto& j : lts.jobs)
    if (!ids.count(j.machine)) throw Error(ErrorCode::BadParams, "job " + std::to_string(j.id) + " on unknown machine");
  auto dag = lts.as_dag();  // rejects duplicate job ids
  for (const auto& e : lts.edges)
    if (!dag.contains(e.from) || !dag.contains(e.to)) throw Error(ErrorCode::MissingJob, "edge with unknown endpoint");
  topological_order(dag);
}

std::int64_t lts_cost(const LtsInstance& lts, const LtsSolution& sol) {
  std::int64_t c = 0;
  for (const auto& b : sol.blocks) c += lts.load_of(b.machine);
  return c;
}

std::optional<std::string> lts_solution_problem(const LtsInstance& lts, const LtsSolution& sol) {
  std::map<JobId, std::size_t> block_of;
  std::map<JobId, int> machine;
  for (const auto& j : lts.jobs) machine[j.id] = j.machine;
  for (std::size_t b = 0; b < sol.blocks.size(); ++b) {
    const auto& blk = sol.blocks[b];
    if (blk.jobs.empty()) return "block " + std::to_string(b) + " is empty";
    for (auto id : blk.jobs) {
      auto it = machine.find(id);
      if (it == machine.end()) return "block " + std::to_string(b) + " holds unknown job " + std::to_string(id);
      if (it->second != blk.machine) return "job " + std::to_string(id) + " sits on the wrong machine";
      if (!block_of.emplace(id, b).second) return "job " + std::to_string(id) + " appears twice";
    }
  }
  if (block_of.size() != lts.jobs.size()) return "some jobs are not covered";
  for (const auto& e : lts.edges)
    if (block_of.at(e.from) > block_of.at(e.to))
      return "edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " points backwards";
  return std::nullopt;
}

}  // namespace presched
