// Thin JSON-in/JSON-out bindings; the python package decodes them into dicts.
#include "presched/generators.hpp"
#include "presched/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace presched;

namespace {

json parse(const std::string& text) { return json::parse(text); }

}  // namespace

PYBIND11_MODULE(_presched, m) {
  m.doc() = "precedence-constrained multi-resource scheduling core";

  py::register_exception<Error>(m, "PreschedError", PyExc_RuntimeError);
  m.def("error_code", [](const std::string& message) {
    auto colon = message.find(':');
    return colon == std::string::npos ? std::string() : message.substr(0, colon);
  });

  m.def("validate_instance", [](const std::string& inst) {
    return report_to_json(validate_instance(instance_from_json(parse(inst)))).dump();
  });
  m.def("check_feasible", [](const std::string& inst, const std::string& sched) {
    return report_to_json(check_feasible(instance_from_json(parse(inst)), schedule_from_json(parse(sched)))).dump();
  });
  m.def("makespan", [](const std::string& inst, const std::string& sched) {
    return makespan(instance_from_json(parse(inst)), schedule_from_json(parse(sched)));
  });
  m.def("cap", &cap);

  m.def("run_onl", [](const std::string& inst) {
    auto [s, trace] = run_onl(online_from_json(parse(inst)));
    return py::make_tuple(schedule_to_json(s).dump(), trace_to_json(trace).dump());
  });
  m.def("run_greedy", [](const std::string& inst) { return schedule_to_json(run_greedy(online_from_json(parse(inst)))).dump(); });
  m.def("brute_force_optimal", [](const std::string& inst, std::size_t limit) {
    auto r = brute_force_optimal(instance_from_json(parse(inst)), limit);
    return py::make_tuple(r.makespan, schedule_to_json(r.schedule).dump());
  }, py::arg("instance"), py::arg("limit") = 9);

  m.def("gen_online_lb_gadget", [](int mm, std::int64_t gadgets, std::uint64_t seed, Time fat) {
    return online_to_json(gen_online_lb_gadget(mm, gadgets, seed, fat)).dump();
  }, py::arg("m"), py::arg("num_gadgets") = 0, py::arg("seed") = 1, py::arg("fat_duration") = 1);
  m.def("gen_multiresource_lb", [](int d, int mm, std::uint64_t seed) {
    return online_to_json(gen_multiresource_lb(d, mm, seed)).dump();
  });
  m.def("gen_greedy_killer", [](int n) { return online_to_json(gen_greedy_killer(n)).dump(); });
  m.def("gen_random_dag", [](int n, double p, Time max_dur, int d, std::uint64_t seed) {
    return instance_to_json(gen_random_dag(n, p, max_dur, d, seed)).dump();
  });

  m.def("scs_brute_force", [](const std::string& scs) {
    auto r = scs_brute_force(scs_from_json(parse(scs)));
    return py::make_tuple(r.length, r.supersequence);
  });
  m.def("lts_brute_force", [](const std::string& lts) {
    auto r = lts_brute_force(lts_from_json(parse(lts)));
    return py::make_tuple(r.cost, lts_solution_to_json(r.solution).dump());
  });
  m.def("is_supersequence", &is_supersequence);

  m.def("scs_to_rs", [](const std::string& scs) {
    auto [inst, map] = scs_to_rs(scs_from_json(parse(scs)));
    return py::make_tuple(instance_to_json(inst).dump(), map_to_json(map).dump());
  });
  m.def("supersequence_to_schedule", [](const std::string& map, const std::vector<int>& z) {
    return schedule_to_json(supersequence_to_schedule(map_from_json(parse(map)), z)).dump();
  });
  m.def("schedule_to_supersequence", [](const std::string& map, const std::string& sched) {
    return schedule_to_supersequence(map_from_json(parse(map)), schedule_from_json(parse(sched)));
  });
  m.def("lts_prep", [](const std::string& lts) {
    auto prep = lts_prep(lts_from_json(parse(lts)));
    auto out = lts_to_json(prep.prepared);
    out["prep"] = prep_to_json(prep);
    return out.dump();
  });
  m.def("lts_to_rs", [](const std::string& lts) {
    auto [inst, map] = lts_to_rs(lts_from_json(parse(lts)));
    return py::make_tuple(instance_to_json(inst).dump(), map_to_json(map).dump());
  });
  m.def("lts_solution_to_schedule", [](const std::string& map, const std::string& sol) {
    return schedule_to_json(lts_solution_to_schedule(map_from_json(parse(map)), lts_solution_from_json(parse(sol)))).dump();
  });
  m.def("schedule_to_lts_solution", [](const std::string& map, const std::string& sched) {
    return lts_solution_to_json(schedule_to_lts_solution(map_from_json(parse(map)), schedule_from_json(parse(sched)))).dump();
  });
}
