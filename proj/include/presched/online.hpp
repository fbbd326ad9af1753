#pragma once

#include "presched/chains.hpp"
#include "presched/core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace presched {

// What the offline baselines need to know about a generated family.
struct InstanceMeta {
  std::string family;
  std::map<std::string, std::int64_t> params;
  // gadget family: end(i), the sink of gadget i's blocking chain.
  // multiresource family: the blocking job of each layer.
  std::vector<JobId> blocking;
  std::vector<std::vector<std::size_t>> gadgets;  // chain indices per gadget
  std::vector<std::size_t> blocking_chains;       // chain index per gadget
  std::vector<std::vector<JobId>> layers;
};

struct OnlineInstance {
  Instance instance;
  std::vector<ChainSpec> chains;
  InstanceMeta meta;
  std::uint64_t seed = 0;
};

OnlineInstance as_online(Instance inst);

struct RevealedJob {
  Job job;
  std::vector<JobId> preds;  // all finished by the time of the event
};

struct RevealEvent {
  Time time = 0;
  std::int64_t rank = 0;
  std::vector<JobId> finished;
  std::vector<RevealedJob> revealed;
};

struct RunningJob {
  JobId id = 0;
  Time start = 0;
  Time finish = 0;
};

struct SchedulerView {
  Time now = 0;
  std::span<const RevealEvent> events;  // every event so far, oldest first
  std::span<const RunningJob> running;  // positive jobs with finish > now
  ResourceVector residual;              // budgets minus everything running
  ResourceVector residual_instant;      // budgets minus jobs that started before now
  ResourceVector budgets;
};

struct Decision {
  std::vector<JobId> start;
  std::optional<Time> wake_at;  // ask to be called again then, even without an event
};

class OnlineScheduler {
 public:
  virtual ~OnlineScheduler() = default;
  virtual Decision decide(const SchedulerView& view) = 0;
};

struct SimulationResult {
  Schedule schedule;
  std::vector<RevealEvent> events;
  std::size_t decisions = 0;
  // ids handed to the scheduler that were not revealed, or predecessor ids
  // that were not finished; stays 0 unless the simulator itself is broken
  std::size_t audit_failures = 0;
};

SimulationResult simulate_online(const OnlineInstance& online, OnlineScheduler& scheduler);
SimulationResult simulate_online(const Instance& inst, OnlineScheduler& scheduler);

}  // namespace presched
