#include "presched/json_io.hpp"

#include <fstream>
#include <sstream>

namespace presched {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadFormat, std::string(what) + ": " + e.what());
  }
}

json chain_to_json(const ChainSpec& c) {
  return {{"m", c.m}, {"i", c.i}, {"skinny", c.skinny_ids}, {"fat", c.fat_ids}};
}

ChainSpec chain_from_json(const json& j, const Instance& inst) {
  ChainSpec c;
  c.m = j.at("m").get<int>();
  c.i = j.at("i").get<int>();
  c.skinny_ids = j.at("skinny").get<std::vector<JobId>>();
  c.fat_ids = j.at("fat").get<std::vector<JobId>>();
  if (c.skinny_ids.empty() || c.skinny_ids.size() != c.fat_ids.size())
    throw Error(ErrorCode::BadFormat, "chain needs matching non-empty skinny and fat lists");
  c.skinny_demand = inst.job(c.skinny_ids.front()).demand.at(0);
  c.fat_duration = inst.job(c.fat_ids.front()).duration;
  return c;
}

}  // namespace

json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::BadFormat, "rational must be a \"num/den\" string or an integer");
}

json instance_to_json(const Instance& inst) {
  json jobs = json::array(), edges = json::array(), budgets = json::array();
  for (const auto& b : inst.budgets()) budgets.push_back(rational_to_json(b));
  for (const auto& j : inst.jobs()) {
    json dem = json::array();
    for (const auto& a : j.demand) dem.push_back(rational_to_json(a));
    jobs.push_back({{"id", j.id}, {"duration", j.duration}, {"demand", dem}});
  }
  for (const auto& e : inst.edges()) edges.push_back({e.from, e.to});
  return {{"d", inst.resource_count()}, {"budgets", budgets}, {"jobs", jobs}, {"edges", edges}};
}

Instance instance_from_json(const json& j) {
  return guarded("instance", [&] {
    if (!j.contains("d") && !j.contains("budgets")) throw Error(ErrorCode::BadFormat, "instance needs d or budgets");
    const int d = j.contains("d") ? j.at("d").get<int>() : static_cast<int>(j.at("budgets").size());
    ResourceVector budgets;
    if (j.contains("budgets"))
      for (const auto& b : j.at("budgets")) budgets.push_back(rational_from_json(b));
    else
      budgets.assign(d, Rational(1));
    if (static_cast<int>(budgets.size()) != d) throw Error(ErrorCode::BadFormat, "budgets length differs from d");
    std::vector<Job> jobs;
    for (const auto& x : j.at("jobs")) {
      Job job{x.at("id").get<JobId>(), x.at("duration").get<Time>(), {}};
      for (const auto& a : x.at("demand")) job.demand.push_back(rational_from_json(a));
      jobs.push_back(std::move(job));
    }
    std::vector<Edge> edges;
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<JobId>(), e.at(1).get<JobId>()});
    return Instance(std::move(budgets), std::move(jobs), std::move(edges));
  });
}

json online_to_json(const OnlineInstance& online) {
  auto out = instance_to_json(online.instance);
  if (!online.chains.empty()) {
    json chains = json::array();
    for (const auto& c : online.chains) chains.push_back(chain_to_json(c));
    out["chains"] = chains;
  }
  const auto& m = online.meta;
  json meta = {{"family", m.family}, {"params", m.params}, {"blocking", m.blocking}};
  if (!m.gadgets.empty()) meta["gadgets"] = m.gadgets;
  if (!m.blocking_chains.empty()) meta["blocking_chains"] = m.blocking_chains;
  if (!m.layers.empty()) meta["layers"] = m.layers;
  out["meta"] = meta;
  out["seed"] = online.seed;
  return out;
}

OnlineInstance online_from_json(const json& j) {
  OnlineInstance out;
  out.instance = instance_from_json(j);
  guarded("instance metadata", [&] {
    if (j.contains("chains"))
      for (const auto& c : j.at("chains")) out.chains.push_back(chain_from_json(c, out.instance));
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      out.meta.family = m.value("family", std::string("plain"));
      if (m.contains("params")) out.meta.params = m.at("params").get<std::map<std::string, std::int64_t>>();
      if (m.contains("blocking")) out.meta.blocking = m.at("blocking").get<std::vector<JobId>>();
      if (m.contains("gadgets")) out.meta.gadgets = m.at("gadgets").get<std::vector<std::vector<std::size_t>>>();
      if (m.contains("blocking_chains")) out.meta.blocking_chains = m.at("blocking_chains").get<std::vector<std::size_t>>();
      if (m.contains("layers")) out.meta.layers = m.at("layers").get<std::vector<std::vector<JobId>>>();
    } else {
      out.meta.family = "plain";
    }
    out.seed = j.value("seed", std::uint64_t{0});
    return 0;
  });
  return out;
}

json schedule_to_json(const Schedule& s) {
  json a = json::array();
  for (const auto& [id, slot] : s.slots) a.push_back({{"id", id}, {"start", slot.start}, {"rank", slot.rank}});
  return {{"assignments", a}};
}

Schedule schedule_from_json(const json& j) {
  // oracle and run outputs wrap the schedule; accept them directly
  if (j.is_object() && !j.contains("assignments") && j.contains("schedule")) return schedule_from_json(j["schedule"]);
  return guarded("schedule", [&] {
    Schedule s;
    for (const auto& x : j.at("assignments")) {
      auto id = x.at("id").get<JobId>();
      if (s.has(id)) throw Error(ErrorCode::BadFormat, "job " + std::to_string(id) + " assigned twice");
      auto start = x.at("start").get<Time>();
      if (start < 0) throw Error(ErrorCode::BadFormat, "negative start");
      s.set(id, start, x.value("rank", std::int64_t{0}));
    }
    return s;
  });
}

json report_to_json(const FeasibilityReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"kind", std::string(to_string(x.kind))}, {"jobs", x.jobs}, {"instant", x.instant}, {"detail", x.detail}});
  return {{"feasible", rep.feasible()}, {"violations", v}};
}

json trace_to_json(const OnlTrace& trace) {
  json levels = json::array();
  for (const auto& lv : trace.levels) {
    json w = json::array();
    for (const auto& x : lv.work) w.push_back(rational_to_json(x));
    levels.push_back({{"level", lv.level}, {"jobs", lv.jobs}, {"tau", lv.tau}, {"work", w}});
  }
  return {{"levels", levels}, {"l_max", trace.l_max}, {"l_end", trace.l_end},
          {"makespan", trace.makespan}, {"t_max", trace.t_max}};
}

json scs_to_json(const ScsInstance& scs) { return {{"rho", scs.rho}, {"sequences", scs.sequences}}; }

ScsInstance scs_from_json(const json& j) {
  return guarded("scs instance", [&] {
    ScsInstance s{j.at("rho").get<int>(), j.at("sequences").get<std::vector<std::vector<int>>>()};
    validate_scs(s);
    return s;
  });
}

json lts_to_json(const LtsInstance& lts) {
  json machines = json::array(), jobs = json::array(), edges = json::array();
  for (const auto& m : lts.machines) machines.push_back({{"id", m.id}, {"load", m.load}});
  for (const auto& x : lts.jobs) jobs.push_back({{"id", x.id}, {"machine", x.machine}});
  for (const auto& e : lts.edges) edges.push_back({e.from, e.to});
  return {{"machines", machines}, {"jobs", jobs}, {"edges", edges}};
}

LtsInstance lts_from_json(const json& j) {
  return guarded("lts instance", [&] {
    LtsInstance lts;
    for (const auto& m : j.at("machines")) lts.machines.push_back({m.at("id").get<int>(), m.at("load").get<std::int64_t>()});
    for (const auto& x : j.at("jobs")) lts.jobs.push_back({x.at("id").get<JobId>(), x.at("machine").get<int>()});
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) lts.edges.push_back({e.at(0).get<JobId>(), e.at(1).get<JobId>()});
    validate_lts(lts);
    return lts;
  });
}

json lts_solution_to_json(const LtsSolution& sol) {
  json blocks = json::array();
  for (const auto& b : sol.blocks) blocks.push_back({{"machine", b.machine}, {"jobs", b.jobs}});
  return {{"blocks", blocks}};
}

LtsSolution lts_solution_from_json(const json& j) {
  if (j.is_object() && !j.contains("blocks") && j.contains("solution")) return lts_solution_from_json(j["solution"]);
  return guarded("lts solution", [&] {
    LtsSolution sol;
    for (const auto& b : j.at("blocks")) sol.blocks.push_back({b.at("machine").get<int>(), b.at("jobs").get<std::vector<JobId>>()});
    return sol;
  });
}

json prep_to_json(const LtsPrep& prep) {
  return {{"original", lts_to_json(prep.original)}, {"dropped", prep.dropped}, {"iterations", prep.iterations}};
}

LtsPrep prep_from_json(const json& j) {
  return guarded("lts prep record", [&] {
    LtsPrep p;
    p.original = lts_from_json(j.at("original"));
    p.dropped = j.at("dropped").get<std::vector<JobId>>();
    p.iterations = j.value("iterations", std::int64_t{0});
    return p;
  });
}

json map_to_json(const ReductionMap& map) {
  json chains = json::array();
  for (std::size_t c = 0; c < map.chains.size(); ++c) {
    auto x = chain_to_json(map.chains[c]);
    if (map.kind == ReductionKind::Scs) {
      x["sequence"] = map.positions[c].first;
      x["position"] = map.positions[c].second;
    } else {
      x["job"] = map.lts_jobs[c];
    }
    chains.push_back(x);
  }
  json out = {{"kind", map.kind == ReductionKind::Scs ? "scs" : "lts"}, {"rho", map.rho}, {"chains", chains}};
  if (map.kind == ReductionKind::Scs) {
    out["source"] = scs_to_json(map.scs);
  } else {
    out["source"] = lts_to_json(map.lts);
    out["span_exp"] = map.span_exp;
  }
  return out;
}

ReductionMap map_from_json(const json& j) {
  return guarded("reduction map", [&] {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "scs") return scs_to_rs(scs_from_json(j.at("source"))).second;
    if (kind == "lts") return lts_to_rs(lts_from_json(j.at("source"))).second;
    throw Error(ErrorCode::BadFormat, "unknown map kind '" + kind + "'");
  });
}

json experiment_to_json(const ExperimentReport& rep) {
  const auto& c = rep.config;
  json rows = json::array(), agg = json::array();
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < c.trials; ++t) seeds.push_back(c.seed + static_cast<std::uint64_t>(t));
  for (const auto& r : rep.rows)
    rows.push_back({{"param", r.param}, {"m", r.m}, {"d", r.d}, {"n", r.n}, {"seed", r.seed}, {"scheduler", r.scheduler},
                    {"makespan", r.makespan}, {"baseline", rational_to_json(r.baseline)},
                    {"baseline_kind", r.baseline_kind}, {"ratio", r.ratio}});
  for (const auto& a : rep.aggregates)
    agg.push_back({{"param", a.param}, {"scheduler", a.scheduler}, {"runs", a.runs}, {"mean", a.mean}, {"stddev", a.stddev}});
  json params = {{"grid", c.grid}, {"trials", c.trials}, {"fat_duration", c.fat_duration}, {"gadgets", c.gadgets},
                 {"layer_size", c.layer_size}, {"edge_prob", c.edge_prob}, {"max_dur", c.max_dur}, {"d", c.resources}};
  return {{"family", c.family}, {"params", params}, {"schedulers", c.schedulers}, {"seeds", seeds},
          {"runs", rows}, {"aggregate", agg}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadFormat, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadFormat, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadFormat, "cannot write " + path);
  out << text;
}

}  // namespace presched
