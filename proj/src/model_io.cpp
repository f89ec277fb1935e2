#include "causelab/model_io.hpp"

#include <fstream>
#include <sstream>

#include "causelab/errors.hpp"

namespace causelab::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(path + ": " + e.what());
  }
}

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ModelFormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw ModelFormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

Causet causet_from_json(const json& j) {
  const json& elems = member(j, "elements");
  if (!elems.is_array()) throw ModelFormatError("'elements' must be an array");
  std::vector<std::string> names;
  for (const auto& e : elems) names.push_back(as_string(e, "element"));
  std::vector<std::pair<std::string, std::string>> rel;
  if (j.contains("relations")) {
    const json& rs = j.at("relations");
    if (!rs.is_array()) throw ModelFormatError("'relations' must be an array");
    for (const auto& r : rs) {
      if (!r.is_array() || r.size() != 2) {
        throw ModelFormatError("each relation must be a pair [earlier, later]");
      }
      rel.emplace_back(as_string(r[0], "relation endpoint"), as_string(r[1], "relation endpoint"));
    }
  }
  return Causet::build(std::move(names), rel);
}

json causet_to_json(const Causet& c) {
  json rel = json::array();
  for (auto [x, y] : c.order()) rel.push_back({c.name(x), c.name(y)});
  return {{"elements", c.names()}, {"relations", rel}};
}

Region region_from_json(const Causet& c, const json& j) {
  if (!j.is_array()) throw ModelFormatError("a region must be a list of element names");
  std::vector<std::string> names;
  for (const auto& e : j) names.push_back(as_string(e, "region member"));
  return c.region(names);
}

json region_to_json(const Causet& c, Region r) { return c.names_of(r); }

Region region_from_list(const Causet& c, const std::string& text) {
  std::vector<std::string> names;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) names.push_back(item);
  }
  return c.region(names);
}

Event event_from_json(const HistorySpace& space, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "omega") return space.omega();
    if (s == "empty") return space.empty_event();
    throw ModelFormatError("unknown event name '" + s + "'");
  }
  if (j.is_array()) {
    Event e = space.empty_event();
    for (const auto& k : j) e.insert(space.parse_key(as_string(k, "history key")));
    return e;
  }
  if (j.is_object()) {
    std::vector<std::pair<int, int>> fixed;
    for (const auto& [name, value] : j.items()) {
      const int idx = space.causet().index_of(name);
      if (idx < 0) throw UnknownElementError("unknown element '" + name + "'");
      if (!value.is_number_integer()) throw ModelFormatError("cylinder values must be integers");
      const int v = value.get<int>();
      if (v < 0 || v >= space.alphabet()) {
        throw ModelFormatError("cylinder value for '" + name + "' is outside the alphabet");
      }
      fixed.emplace_back(idx, v);
    }
    return space.cylinder(fixed);
  }
  throw ModelFormatError("an event must be a list of history keys or a cylinder object");
}

json event_to_json(const HistorySpace& space, const Event& e) {
  json out = json::array();
  for (auto h : e.members()) out.push_back(space.key(h));
  return out;
}

namespace {

Event event_from_key_text(const HistorySpace& space, const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[' || text[0] == '"')) {
    try {
      return event_from_json(space, json::parse(text));
    } catch (const json::parse_error& e) {
      throw ModelFormatError("bad event spec '" + text + "': " + e.what());
    }
  }
  if (text == "omega" || text == "empty") return event_from_json(space, text);
  Event e = space.empty_event();
  std::stringstream ss(text);
  for (std::string k; std::getline(ss, k, ',');) {
    if (!k.empty()) e.insert(space.parse_key(k));
  }
  return e;
}

MeasureTable measure_from_json(const HistorySpace& space, const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "uniform") return MeasureTable::uniform(space);
    if (s == "diagonal") return MeasureTable::diagonal(space);
    throw ModelFormatError("unknown measure '" + s + "'");
  }
  if (j.is_object() && j.contains("weights")) {
    const json& w = j.at("weights");
    if (!w.is_object()) throw ModelFormatError("'weights' must map history keys to rationals");
    std::vector<Rational> weights(space.size(), Rational(0));
    std::vector<bool> seen(space.size(), false);
    for (const auto& [key, value] : w.items()) {
      const auto h = space.parse_key(key);
      if (seen[h]) throw ModelFormatError("history '" + key + "' weighted twice");
      seen[h] = true;
      if (value.is_string()) {
        weights[h] = parse_rational(value.get<std::string>());
      } else if (value.is_number_integer()) {
        weights[h] = Rational(value.get<long>());
      } else {
        throw ModelFormatError("weights must be strings like \"1/2\" or integers");
      }
    }
    return MeasureTable(space, std::move(weights));
  }
  if (j.is_object() && j.contains("random")) {
    const json& r = j.at("random");
    const auto seed = r.value("seed", std::uint64_t{0});
    const auto bound = r.value("denominator_bound", std::uint64_t{10});
    return MeasureTable::random(space, seed, bound);
  }
  throw ModelFormatError("measure must be \"uniform\", \"diagonal\", {\"weights\": ...} or {\"random\": ...}");
}

DomMap dom_from_json(const HistorySpace& space, const json& j) {
  DomMap dom;
  if (j.is_string()) {
    if (j.get<std::string>() != "canonical") throw ModelFormatError("dom must be \"canonical\" or a table");
    return dom;
  }
  if (j.is_object()) {
    for (const auto& [key, region] : j.items()) {
      dom.set(event_from_key_text(space, key), region_from_json(space.causet(), region));
    }
    return dom;
  }
  if (j.is_array()) {
    for (const auto& entry : j) {
      dom.set(event_from_json(space, member(entry, "event")),
              region_from_json(space.causet(), member(entry, "region")));
    }
    return dom;
  }
  throw ModelFormatError("dom must be \"canonical\" or a table");
}

}  // namespace

Model model_from_json(const json& j, Model::AxiomCheck check) {
  if (j.is_object() && j.contains("elements")) {
    HistorySpace space(causet_from_json(j), 2);
    auto m = MeasureTable::uniform(space);
    return Model(std::move(space), DomMap{}, std::move(m), check);
  }
  const Causet c = causet_from_json(member(j, "causet"));
  int alphabet = 2;
  if (j.contains("alphabet")) {
    if (!j.at("alphabet").is_number_integer()) throw ModelFormatError("'alphabet' must be an integer");
    alphabet = j.at("alphabet").get<int>();
  }
  HistorySpace space(c, alphabet);
  DomMap dom = j.contains("dom") ? dom_from_json(space, j.at("dom")) : DomMap{};
  MeasureTable m = j.contains("measure") ? measure_from_json(space, j.at("measure"))
                                         : MeasureTable::uniform(space);
  return Model(std::move(space), std::move(dom), std::move(m), check);
}

json model_to_json(const Model& m) {
  const auto& space = m.space();
  json weights = json::object();
  for (std::size_t h = 0; h < space.size(); ++h) {
    if (m.measure().weights()[h] != 0) weights[space.key(h)] = to_string(m.measure().weights()[h]);
  }
  json dom = "canonical";
  if (!m.dom().is_canonical()) {
    dom = json::array();
    for (const auto& [e, r] : m.dom().overrides()) {
      dom.push_back({{"event", event_to_json(space, e)}, {"region", region_to_json(m.causet(), r)}});
    }
  }
  return {{"causet", causet_to_json(m.causet())},
          {"alphabet", space.alphabet()},
          {"dom", dom},
          {"measure", {{"weights", weights}}}};
}

json axioms_to_json(const HistorySpace& space, const DomAxiomReport& rep) {
  json axioms = json::array();
  for (int i = 0; i < 4; ++i) {
    const auto& a = rep.axiom[i];
    json entry = {{"axiom", i + 1}, {"passed", a.passed}, {"checked", a.checked}};
    if (!a.passed) {
      json w = json::array();
      for (const auto& e : a.witness) w.push_back(event_to_json(space, e));
      json regions = json::array();
      for (auto r : a.witness_regions) regions.push_back(region_to_json(space.causet(), r));
      entry["witness"] = {{"events", w}, {"regions", regions}, {"detail", a.detail}};
    }
    axioms.push_back(entry);
  }
  return {{"passed", rep.passed()},
          {"axioms", axioms},
          {"null_families_skipped", rep.null_families_skipped}};
}

json witness_to_json(const Model& m, const Witness& w) {
  const auto& space = m.space();
  return {{"kind", w.kind},
          {"A", event_to_json(space, w.a)},
          {"B", event_to_json(space, w.b)},
          {"region_A", region_to_json(m.causet(), w.region_a)},
          {"region_B", region_to_json(m.causet(), w.region_b)},
          {"screener", event_to_json(space, w.screener)},
          {"lhs", w.lhs},
          {"rhs", w.rhs}};
}

json verdict_to_json(const Model& m, const Verdict& v) {
  json ws = json::array();
  for (const auto& w : v.witnesses) ws.push_back(witness_to_json(m, w));
  return {{"principle", principle_name(v.principle)},
          {"satisfied", v.satisfied},
          {"capped", v.capped},
          {"counts",
           {{"region_pairs", v.counts.region_pairs},
            {"skipped_region_pairs", v.counts.skipped_region_pairs},
            {"event_pairs", v.counts.event_pairs},
            {"screenings", v.counts.screenings},
            {"vacuous_screenings", v.counts.vacuous_screenings}}},
          {"vacuous", v.counts.screenings == v.counts.vacuous_screenings},
          {"violations", v.violations},
          {"witnesses", ws},
          {"warnings", v.warnings}};
}

json matrix_to_json(const Model& m, const ImplicationMatrix& mx, bool with_verdicts) {
  json holds = json::object();
  json implies = json::object();
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string pi(principle_name(kAllPrinciples[i]));
    holds[pi] = mx.holds[i];
    for (std::size_t k = 0; k < 4; ++k) {
      if (i == k) continue;
      implies[pi + " => " + std::string(principle_name(kAllPrinciples[k]))] = mx.implies[i][k];
    }
  }
  json out = {{"holds", holds}, {"implications", implies}};
  if (with_verdicts) {
    json vs = json::array();
    for (const auto& v : mx.verdicts) vs.push_back(verdict_to_json(m, v));
    out["verdicts"] = vs;
  }
  return out;
}

namespace {

json step_to_json(const StepResult& s) {
  json out = {{"passed", s.passed}, {"checked", s.checked}, {"skipped", s.skipped}};
  if (!s.passed) out["witness"] = s.witness;
  return out;
}

}  // namespace

json replication_to_json(const Model& m, Region a, Region b, const ReplicationReport& rep) {
  const auto& c = m.causet();
  json out = {{"region_A", region_to_json(c, a)},
              {"region_B", region_to_json(c, b)},
              {"flank_X", region_to_json(c, rep.flank_x)},
              {"flank_Y", region_to_json(c, rep.flank_y)},
              {"mutual_past", region_to_json(c, rep.mutual)},
              {"truncated_joint_past", region_to_json(c, rep.truncated_joint)},
              {"status", rep.applicable ? (rep.passed() ? "passed" : "failed") : "not-applicable"}};
  if (!rep.applicable) {
    out["reason"] = rep.reason;
  } else {
    out["step1"] = step_to_json(rep.step1);
    out["step2"] = step_to_json(rep.step2);
    out["step3"] = step_to_json(rep.step3);
  }
  return out;
}

json gap_to_json(const Model& m, Region a, Region b, const GapReport& rep) {
  const auto& space = m.space();
  json missing = json::array(), extra = json::array();
  for (const auto& e : rep.missing) missing.push_back(event_to_json(space, e));
  for (const auto& e : rep.extra) extra.push_back(event_to_json(space, e));
  return {{"region_A", region_to_json(m.causet(), a)},
          {"region_B", region_to_json(m.causet(), b)},
          {"status", rep.equal ? "equal" : "mismatch"},
          {"composed", rep.composed},
          {"full_specifications", rep.full_specs},
          {"missing", missing},
          {"extra", extra}};
}

json sweep_to_json(const SweepReport& rep) {
  return {{"name", rep.name},
          {"passed", rep.passed},
          {"models", rep.models},
          {"checked", rep.checked},
          {"causets_per_size", rep.causets_per_size},
          {"failure_count", rep.failure_count},
          {"failures", rep.failures}};
}

}  // namespace causelab::io
