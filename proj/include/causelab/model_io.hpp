#pragma once

#include <json.hpp>

#include <string>

#include "causelab/principles.hpp"
#include "causelab/theorems.hpp"

namespace causelab::io {

using nlohmann::json;

// Reported in every CLI output: "⊂" in Γ and in full specifications is read
// as "⊆".
inline constexpr const char* kSubsetConvention = "non-strict";

json read_json_file(const std::string& path);  // throws ModelFormatError

// {"elements": [...], "relations": [[x, y], ...]}; relations may be any
// generating set.
Causet causet_from_json(const json& j);
json causet_to_json(const Causet& c);  // closed order

Region region_from_json(const Causet& c, const json& j);  // list of names
json region_to_json(const Causet& c, Region r);
// "x,y" -> region; the empty string is the empty region.
Region region_from_list(const Causet& c, const std::string& text);

// A list of history keys ["01", "11"], a cylinder {"x": 1}, or "omega" /
// "empty".
Event event_from_json(const HistorySpace& space, const json& j);
json event_to_json(const HistorySpace& space, const Event& e);

// {"causet": ..., "alphabet": 2, "dom": "canonical" | {...}, "measure": ...}.
// A bare causet object is accepted as a model with alphabet 2, canonical dom
// and the uniform measure.
Model model_from_json(const json& j, Model::AxiomCheck check = Model::AxiomCheck::automatic);
// Explicit weights, dom overrides listed; reloads to an equal model.
json model_to_json(const Model& m);

json axioms_to_json(const HistorySpace& space, const DomAxiomReport& rep);
json witness_to_json(const Model& m, const Witness& w);
json verdict_to_json(const Model& m, const Verdict& v);
json matrix_to_json(const Model& m, const ImplicationMatrix& mx, bool with_verdicts = true);
json replication_to_json(const Model& m, Region a, Region b, const ReplicationReport& rep);
json gap_to_json(const Model& m, Region a, Region b, const GapReport& rep);
json sweep_to_json(const SweepReport& rep);

}  // namespace causelab::io
