#pragma once

#include "presched/online.hpp"

#include <string>
#include <vector>

namespace presched {

struct ExperimentConfig {
  std::string family;                  // gadget | multiresource | greedy-killer | random
  std::vector<int> grid;               // m, d, n or n depending on the family
  std::vector<std::string> schedulers{"onl", "greedy"};
  int trials = 1;
  std::uint64_t seed = 1;
  Time fat_duration = 1;               // gadget chains
  std::int64_t gadgets = 0;            // 0 means 2^m
  int layer_size = 0;                  // multiresource; 0 means 3 d^2
  double edge_prob = 0.3;              // random
  Time max_dur = 8;
  int resources = 1;
};

struct ExperimentRow {
  std::string family;
  int m = 0;
  int d = 1;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string scheduler;
  Time makespan = 0;
  Rational baseline;
  std::string baseline_kind;
  double ratio = 0;
  int param = 0;  // the grid value this row belongs to
};

struct ExperimentAggregate {
  int param = 0;
  std::string scheduler;
  std::size_t runs = 0;
  double mean = 0;
  double stddev = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentAggregate> aggregates;
};

ExperimentReport experiment_competitive(const ExperimentConfig& config);
std::string report_csv(const ExperimentReport& report);

Schedule run_scheduler(const std::string& name, const OnlineInstance& online);

// per gadget: chains of that gadget whose sink has finished by the time
// end(i) finishes (the blocking chain counts itself)
std::vector<int> chains_completed_at_blocking(const OnlineInstance& online, const Schedule& sched);

}  // namespace presched
