// presched command line: generators, schedulers, verifier, oracles, reductions.
#include "presched/json_io.hpp"
#include "presched/generators.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstring>
#include <iostream>
#include <sstream>

using namespace presched;

namespace {

struct Failure {
  std::string message;
};

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    write_text_file(out, j.dump(2) + "\n");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  return out;
}

std::string gantt(const Schedule& s, const Instance* inst, int width) {
  std::vector<std::tuple<Time, std::int64_t, JobId>> rows;
  Time end = 0;
  for (const auto& [id, slot] : s.slots) {
    rows.emplace_back(slot.start, slot.rank, id);
    Time dur = inst ? inst->job(id).duration : 0;
    end = std::max(end, slot.start + dur);
  }
  std::sort(rows.begin(), rows.end());
  const Time scale = std::max<Time>(1, (end + width - 1) / std::max(width, 1));
  std::ostringstream out;
  out << "# makespan " << end << ", one column = " << scale << " time unit" << (scale > 1 ? "s" : "") << "\n";
  for (auto [start, rank, id] : rows) {
    Time dur = inst ? inst->job(id).duration : 0;
    std::string bar(static_cast<std::size_t>(end / scale + 1), ' ');
    Time a = start / scale, b = (start + dur + scale - 1) / scale;
    if (dur == 0)
      bar[static_cast<std::size_t>(a)] = '|';
    else
      for (Time c = a; c < b && c < static_cast<Time>(bar.size()); ++c) bar[static_cast<std::size_t>(c)] = '#';
    char label[64];
    std::snprintf(label, sizeof label, "%8lld ", static_cast<long long>(id));
    out << label << bar << " [" << start << "," << start + dur << ")\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"precedence-constrained multi-resource scheduling toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, out;
  int m = 3, d = 2, n = 8, rho = 2, sequences = 3, length = 4, machines = 3;
  std::int64_t gadgets = 0, max_load = 8;
  Time fat_duration = 1, max_dur = 8;
  double edge_prob = 0.3;
  std::uint64_t seed = 1;
  gen->add_option("family", family, "gadget | multiresource | greedy-killer | random | scs | lts")->required();
  gen->add_option("--m", m, "chain exponent (gadget) or layer size (multiresource)");
  gen->add_option("--gadgets", gadgets, "gadget count, 0 = 2^m");
  gen->add_option("--fat-duration", fat_duration, "0 or 1");
  gen->add_option("--d", d, "resource types");
  gen->add_option("--n", n, "size parameter");
  gen->add_option("--edge-prob", edge_prob);
  gen->add_option("--max-dur", max_dur);
  gen->add_option("--rho", rho);
  gen->add_option("--sequences", sequences);
  gen->add_option("--length", length);
  gen->add_option("--machines", machines);
  gen->add_option("--max-load", max_load);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  // run
  auto* run = app.add_subcommand("run", "run an online scheduler through the reveal simulator");
  std::string scheduler = "onl", instance_path, schedule_path, trace_path;
  run->add_option("--scheduler", scheduler)->check(CLI::IsMember({"onl", "greedy"}));
  run->add_option("--instance", instance_path)->required();
  run->add_option("--out", out);
  run->add_option("--trace", trace_path, "ONL trace output");

  // verify
  auto* verify = app.add_subcommand("verify", "check a schedule against an instance");
  verify->add_option("--instance", instance_path)->required();
  verify->add_option("--schedule", schedule_path)->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact brute-force solvers for small inputs");
  std::string oracle_kind, in_path;
  std::size_t limit = 9;
  oracle->add_option("kind", oracle_kind)->required()->check(CLI::IsMember({"rs", "scs", "lts"}));
  oracle->add_option("--in", in_path)->required();
  oracle->add_option("--limit", limit, "positive-duration job cap for rs");
  oracle->add_option("--out", out);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "reductions between SCS/LTS and resource scheduling");
  std::string reduce_kind, out_path, map_path;
  reduce->add_option("kind", reduce_kind)->required()->check(CLI::IsMember({"scs-to-rs", "lts-prep", "lts-to-rs"}));
  reduce->add_option("input", in_path)->required();
  reduce->add_option("output", out_path)->required();
  reduce->add_option("--map", map_path);

  // lift
  auto* lift = app.add_subcommand("lift", "turn a schedule of a reduced instance back into a solution");
  std::string lift_kind;
  lift->add_option("kind", lift_kind)->required()->check(CLI::IsMember({"supersequence", "lts"}));
  lift->add_option("--map", map_path)->required();
  lift->add_option("--schedule", schedule_path)->required();
  lift->add_option("--out", out);

  // embed
  auto* embed = app.add_subcommand("embed", "build the epoch schedule of a supersequence or LTS solution");
  std::string embed_kind, z_text, solution_path;
  embed->add_option("kind", embed_kind)->required()->check(CLI::IsMember({"supersequence", "lts"}));
  embed->add_option("--map", map_path)->required();
  embed->add_option("--z", z_text, "comma separated supersequence");
  embed->add_option("--solution", solution_path, "LTS solution JSON");
  embed->add_option("--out", out);

  // experiment
  auto* exp = app.add_subcommand("experiment", "competitive-ratio measurements");
  ExperimentConfig cfg;
  std::string grid_text = "3", schedulers_text = "onl,greedy";
  exp->add_option("--family", cfg.family)->required()->check(CLI::IsMember({"gadget", "multiresource", "greedy-killer", "random"}));
  exp->add_option("--grid", grid_text, "values such as 3,4,5 or 3-5");
  exp->add_option("--trials", cfg.trials);
  exp->add_option("--seed", cfg.seed);
  exp->add_option("--schedulers", schedulers_text);
  exp->add_option("--fat-duration", cfg.fat_duration);
  exp->add_option("--gadgets", cfg.gadgets);
  exp->add_option("--layer-size", cfg.layer_size);
  exp->add_option("--edge-prob", cfg.edge_prob);
  exp->add_option("--max-dur", cfg.max_dur);
  exp->add_option("--d", cfg.resources);
  exp->add_option("--out", out, "report path; writes <stem>.csv and <stem>.json")->required();

  // gantt
  auto* gantt_cmd = app.add_subcommand("gantt", "static text Gantt chart");
  int width = 100;
  gantt_cmd->add_option("--schedule", schedule_path)->required();
  gantt_cmd->add_option("--instance", instance_path, "durations; without it only starts are drawn");
  gantt_cmd->add_option("--width", width);
  gantt_cmd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      json j;
      if (family == "gadget")
        j = online_to_json(gen_online_lb_gadget(m, gadgets, seed, fat_duration));
      else if (family == "multiresource")
        j = online_to_json(gen_multiresource_lb(d, m, seed));
      else if (family == "greedy-killer")
        j = online_to_json(gen_greedy_killer(n));
      else if (family == "random")
        j = instance_to_json(gen_random_dag(n, edge_prob, max_dur, d, seed));
      else if (family == "scs")
        j = scs_to_json(gen_random_scs(rho, sequences, length, seed));
      else if (family == "lts")
        j = lts_to_json(gen_random_lts(n, machines, edge_prob, max_load, seed));
      else {
        std::cerr << "unknown family '" << family << "'\n";
        return 2;
      }
      emit(j, out);
    } else if (*run) {
      auto online = online_from_json(read_json_file(instance_path));
      if (scheduler == "onl") {
        auto [s, trace] = run_onl(online);
        emit(schedule_to_json(s), out);
        if (!trace_path.empty()) emit(trace_to_json(trace), trace_path);
        std::cerr << "makespan " << makespan(online.instance, s) << "\n";
      } else {
        auto s = run_greedy(online);
        emit(schedule_to_json(s), out);
        std::cerr << "makespan " << makespan(online.instance, s) << "\n";
      }
    } else if (*verify) {
      auto inst = instance_from_json(read_json_file(instance_path));
      auto sched = schedule_from_json(read_json_file(schedule_path));
      auto rep = validate_instance(inst);
      if (rep.feasible()) rep = check_feasible(inst, sched);
      auto j = report_to_json(rep);
      if (rep.feasible()) j["makespan"] = makespan(inst, sched);
      std::cout << j.dump(2) << '\n';
      return rep.feasible() ? 0 : 1;
    } else if (*oracle) {
      auto j = read_json_file(in_path);
      if (oracle_kind == "rs") {
        auto inst = instance_from_json(j);
        auto r = brute_force_optimal(inst, limit);
        emit({{"makespan", r.makespan}, {"schedule", schedule_to_json(r.schedule)}}, out);
      } else if (oracle_kind == "scs") {
        auto r = scs_brute_force(scs_from_json(j));
        emit({{"length", r.length}, {"supersequence", r.supersequence}}, out);
      } else {
        auto r = lts_brute_force(lts_from_json(j));
        emit({{"cost", r.cost}, {"solution", lts_solution_to_json(r.solution)}}, out);
      }
    } else if (*reduce) {
      auto j = read_json_file(in_path);
      if (reduce_kind == "scs-to-rs") {
        auto [inst, map] = scs_to_rs(scs_from_json(j));
        OnlineInstance o = as_online(inst);
        o.chains = map.chains;
        o.meta.family = "scs-reduction";
        emit(online_to_json(o), out_path);
        if (!map_path.empty()) emit(map_to_json(map), map_path);
      } else if (reduce_kind == "lts-prep") {
        auto prep = lts_prep(lts_from_json(j));
        auto o = lts_to_json(prep.prepared);
        o["prep"] = prep_to_json(prep);
        emit(o, out_path);
      } else {
        auto lts = lts_from_json(j);
        auto [inst, map] = lts_to_rs(lts);
        OnlineInstance o = as_online(inst);
        o.chains = map.chains;
        o.meta.family = "lts-reduction";
        emit(online_to_json(o), out_path);
        if (!map_path.empty()) {
          auto mj = map_to_json(map);
          if (j.contains("prep")) mj["prep"] = j["prep"];
          emit(mj, map_path);
        }
      }
    } else if (*lift) {
      auto mj = read_json_file(map_path);
      auto map = map_from_json(mj);
      auto sched = schedule_from_json(read_json_file(schedule_path));
      if (lift_kind == "supersequence") {
        if (map.kind != ReductionKind::Scs) throw Error(ErrorCode::BadFormat, "map is not an SCS reduction");
        auto z = schedule_to_supersequence(map, sched);
        emit({{"supersequence", z}, {"length", z.size()}}, out);
      } else {
        if (map.kind != ReductionKind::Lts) throw Error(ErrorCode::BadFormat, "map is not an LTS reduction");
        auto sol = schedule_to_lts_solution(map, sched);
        json res = {{"solution", lts_solution_to_json(sol)}, {"cost", lts_cost(map.lts, sol)}};
        if (mj.contains("prep")) {
          auto prep = prep_from_json(mj["prep"]);
          prep.prepared = map.lts;
          auto lifted = lift_prepared_solution(prep, sol);
          res["original_solution"] = lts_solution_to_json(lifted);
          res["original_cost"] = lts_cost(prep.original, lifted);
        }
        emit(res, out);
      }
    } else if (*embed) {
      auto map = map_from_json(read_json_file(map_path));
      Schedule s;
      if (embed_kind == "supersequence") {
        if (map.kind != ReductionKind::Scs) throw Error(ErrorCode::BadFormat, "map is not an SCS reduction");
        s = supersequence_to_schedule(map, parse_int_list(z_text));
      } else {
        if (map.kind != ReductionKind::Lts) throw Error(ErrorCode::BadFormat, "map is not an LTS reduction");
        auto sj = read_json_file(solution_path);
        s = lts_solution_to_schedule(map, lts_solution_from_json(sj.contains("solution") ? sj["solution"] : sj));
      }
      emit(schedule_to_json(s), out);
      std::cerr << "makespan " << makespan(map.instance, s) << "\n";
    } else if (*exp) {
      cfg.grid = parse_int_list(grid_text);
      cfg.schedulers.clear();
      std::stringstream ss(schedulers_text);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) cfg.schedulers.push_back(item);
      auto rep = experiment_competitive(cfg);
      std::string stem = out;
      for (const char* ext : {".csv", ".json"})
        if (stem.size() > std::strlen(ext) && stem.ends_with(ext)) stem.resize(stem.size() - std::strlen(ext));
      write_text_file(stem + ".csv", report_csv(rep));
      write_text_file(stem + ".json", experiment_to_json(rep).dump(2) + "\n");
      for (const auto& a : rep.aggregates)
        std::cout << cfg.family << " param=" << a.param << " " << a.scheduler << " mean_ratio=" << a.mean
                  << " stddev=" << a.stddev << " runs=" << a.runs << "\n";
    } else if (*gantt_cmd) {
      auto sched = schedule_from_json(read_json_file(schedule_path));
      std::optional<Instance> inst;
      if (!instance_path.empty()) inst = instance_from_json(read_json_file(instance_path));
      auto text = gantt(sched, inst ? &*inst : nullptr, width);
      if (out.empty() || out == "-")
        std::cout << text;
      else
        write_text_file(out, text);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
