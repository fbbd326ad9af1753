#include "presched/harness.hpp"

#include "presched/baselines.hpp"
#include "presched/generators.hpp"
#include "presched/onl.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace presched {

Schedule run_scheduler(const std::string& name, const OnlineInstance& online) {
  if (name == "onl") return run_onl(online).first;
  if (name == "greedy") return run_greedy(online);
  throw Error(ErrorCode::BadParams, "unknown scheduler '" + name + "'");
}

std::vector<int> chains_completed_at_blocking(const OnlineInstance& online, const Schedule& sched) {
  const auto& meta = online.meta;
  if (meta.family != "gadget" || meta.gadgets.size() != meta.blocking.size())
    throw Error(ErrorCode::MissingMetadata, "instance carries no gadget metadata");
  const auto& inst = online.instance;
  auto finish = [&](JobId id) { return sched.start(id) + inst.job(id).duration; };
  auto rank = [&](JobId id) { return sched.at(id).rank; };
  std::vector<int> out;
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    const JobId end = meta.blocking[g];
    int count = 0;
    for (auto c : meta.gadgets[g]) {
      JobId sink = online.chains.at(c).sink_id();
      Time f = finish(sink), fe = finish(end);
      // zero-length sinks finishing at the same instant are ordered by rank
      if (f < fe || (f == fe && (inst.job(sink).duration > 0 || rank(sink) <= rank(end)))) ++count;
    }
    out.push_back(count);
  }
  return out;
}

namespace {

struct Trial {
  OnlineInstance online;
  int m = 0;
  int d = 1;
};

Trial make_trial(const ExperimentConfig& cfg, int param, std::uint64_t seed) {
  Trial t;
  if (cfg.family == "gadget") {
    t.online = gen_online_lb_gadget(param, cfg.gadgets, seed, cfg.fat_duration);
    t.m = param;
  } else if (cfg.family == "multiresource") {
    int m = cfg.layer_size > 0 ? cfg.layer_size : 3 * param * param;
    t.online = gen_multiresource_lb(param, m, seed);
    t.m = m;
    t.d = param;
  } else if (cfg.family == "greedy-killer") {
    t.online = gen_greedy_killer(param);
    t.online.seed = seed;
    t.m = param;
  } else if (cfg.family == "random") {
    t.online = as_online(gen_random_dag(param, cfg.edge_prob, cfg.max_dur, cfg.resources, seed));
    t.online.meta.family = "random";
    t.online.seed = seed;
    t.d = cfg.resources;
  } else {
    throw Error(ErrorCode::BadParams, "unknown family '" + cfg.family + "'");
  }
  return t;
}

void require_feasible(const Instance& inst, const Schedule& s, const std::string& context) {
  auto rep = check_feasible(inst, s);
  if (!rep.feasible()) throw Error(ErrorCode::SchedulerViolation, context + ": schedule infeasible: " + rep.violations.front().detail);
}

}  // namespace

ExperimentReport experiment_competitive(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::BadParams, "need at least one trial");
  ExperimentReport rep;
  rep.config = cfg;
  for (int param : cfg.grid) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
      const std::string context = cfg.family + " param=" + std::to_string(param) + " seed=" + std::to_string(seed);
      auto t = make_trial(cfg, param, seed);
      const auto& inst = t.online.instance;

      Rational baseline;
      std::string kind;
      if (cfg.family == "gadget") {
        auto s = gadget_offline_schedule(t.online);
        require_feasible(inst, s, context + " offline");
        baseline = makespan(inst, s);
        kind = "offline-gadget";
      } else if (cfg.family == "multiresource") {
        auto s = multiresource_offline_schedule(t.online);
        require_feasible(inst, s, context + " offline");
        baseline = makespan(inst, s);
        kind = "offline-layers";
      } else if (cfg.family == "greedy-killer") {
        auto s = greedy_killer_offline_schedule(t.online);
        require_feasible(inst, s, context + " offline");
        baseline = makespan(inst, s);
        kind = "offline-construction";
      } else if (inst.size() <= 9) {
        auto bf = brute_force_optimal(inst);
        require_feasible(inst, bf.schedule, context + " optimum");
        baseline = bf.makespan;
        kind = "optimal";
      } else {
        baseline = opt_lower_bound(inst, run_onl(t.online).second);
        kind = "lower-bound";
      }

      for (const auto& name : cfg.schedulers) {
        Schedule s;
        try {
          s = run_scheduler(name, t.online);
        } catch (const Error& e) {
          throw Error(e.code(), context + " scheduler=" + name + ": " + e.what());
        }
        require_feasible(inst, s, context + " scheduler=" + name);
        ExperimentRow row;
        row.family = cfg.family;
        row.m = t.m;
        row.d = t.d;
        row.n = inst.size();
        row.seed = seed;
        row.scheduler = name;
        row.makespan = makespan(inst, s);
        row.baseline = baseline;
        row.baseline_kind = kind;
        row.ratio = baseline > 0 ? static_cast<double>(row.makespan) / boost::rational_cast<double>(baseline) : 0.0;
        row.param = param;
        rep.rows.push_back(std::move(row));
      }
    }
  }
  std::map<std::pair<int, std::string>, std::vector<double>> groups;
  for (const auto& r : rep.rows) groups[{r.param, r.scheduler}].push_back(r.ratio);
  for (const auto& [key, ratios] : groups) {
    ExperimentAggregate a{key.first, key.second, ratios.size(), 0, 0};
    for (double x : ratios) a.mean += x;
    a.mean /= static_cast<double>(ratios.size());
    if (ratios.size() > 1) {
      double ss = 0;
      for (double x : ratios) ss += (x - a.mean) * (x - a.mean);
      a.stddev = std::sqrt(ss / static_cast<double>(ratios.size() - 1));
    }
    rep.aggregates.push_back(a);
  }
  return rep;
}

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "family,m,d,n,seed,scheduler,makespan,baseline,ratio\n";
  out.precision(6);
  for (const auto& r : report.rows)
    out << r.family << ',' << r.m << ',' << r.d << ',' << r.n << ',' << r.seed << ',' << r.scheduler << ','
        << r.makespan << ',' << boost::rational_cast<double>(r.baseline) << ',' << std::fixed << r.ratio
        << std::defaultfloat << '\n';
  return out.str();
}

}  // namespace presched
