#pragma once

#include "presched/online.hpp"
#include "presched/problems.hpp"

#include <deque>
#include <unordered_set>

namespace presched {

class GreedyScheduler : public OnlineScheduler {
 public:
  Decision decide(const SchedulerView& view) override;

 private:
  std::vector<Job> pending_;  // reveal order, then id
  std::unordered_set<JobId> known_;
  std::unordered_set<JobId> finished_;
  std::size_t consumed_ = 0;
};

Schedule run_greedy(const OnlineInstance& online);
Schedule run_greedy(const Instance& inst);

struct BruteForceResult {
  Time makespan = 0;
  Schedule schedule;
};
// limit caps the positive-duration jobs; zero jobs ride along (64 jobs total at most)
BruteForceResult brute_force_optimal(const Instance& inst, std::size_t limit = 9);

Schedule gadget_offline_schedule(const OnlineInstance& online);
Schedule multiresource_offline_schedule(const OnlineInstance& online);
// a/c jobs alternate, then every b job runs at once
Schedule greedy_killer_offline_schedule(const OnlineInstance& online);

struct ScsResult {
  int length = 0;
  std::vector<int> supersequence;
};
ScsResult scs_brute_force(const ScsInstance& scs);

struct LtsResult {
  std::int64_t cost = 0;
  LtsSolution solution;
};
LtsResult lts_brute_force(const LtsInstance& lts);

}  // namespace presched
