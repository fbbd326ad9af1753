#pragma once

#include "presched/baselines.hpp"
#include "presched/harness.hpp"
#include "presched/onl.hpp"
#include "presched/reductions.hpp"

#include <json.hpp>

#include <string>

namespace presched {

using nlohmann::json;

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

// instance fields plus "chains", "meta" and "seed"
json online_to_json(const OnlineInstance& online);
OnlineInstance online_from_json(const json& j);

json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json report_to_json(const FeasibilityReport& rep);
json trace_to_json(const OnlTrace& trace);

json scs_to_json(const ScsInstance& scs);
ScsInstance scs_from_json(const json& j);
json lts_to_json(const LtsInstance& lts);
LtsInstance lts_from_json(const json& j);
json lts_solution_to_json(const LtsSolution& sol);
LtsSolution lts_solution_from_json(const json& j);

json prep_to_json(const LtsPrep& prep);
LtsPrep prep_from_json(const json& j);

// Stores the source problem; loading re-runs the (deterministic) reduction.
json map_to_json(const ReductionMap& map);
ReductionMap map_from_json(const json& j);

json experiment_to_json(const ExperimentReport& rep);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace presched
