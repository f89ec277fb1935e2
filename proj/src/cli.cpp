#include "causelab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "causelab/enumerate.hpp"
#include "causelab/errors.hpp"
#include "causelab/hunter.hpp"
#include "causelab/model_io.hpp"
#include "causelab/theorems.hpp"

namespace causelab {

namespace {

using io::json;

struct Common {
  std::string model_path;
  bool pretty = false;
  std::string caps;
  std::string relevance = "printed";
  std::string zero_screener = "vacuous";
  bool strict_caps = false;
  int workers = 1;
};

// Thrown for bad flag values that CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Execution execution(int workers) {
  Execution e;
  e.workers = std::max(1, workers);
  e.backend = e.workers > 1 ? Backend::openmp : Backend::serial;
  return e;
}

Caps parse_caps(const std::string& text, bool strict) {
  Caps caps;
  caps.strict = strict;
  if (text.empty()) return caps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--caps: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    std::uint64_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--caps: bad number in '" + item + "'");
    }
    if (key == "region") {
      if (value < 1 || value > 64) throw UsageError("--caps: region must be in 1..64");
      caps.max_region_size = static_cast<int>(value);
    } else if (key == "algebra") {
      caps.max_algebra = value;
    } else if (key == "witnesses") {
      caps.max_witnesses = value;
    } else {
      throw UsageError("--caps: unknown key '" + key + "'");
    }
  }
  return caps;
}

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  o.caps = parse_caps(c.caps, c.strict_caps);
  o.zero_screener = c.zero_screener == "strict" ? ZeroScreener::strict : ZeroScreener::vacuous;
  return o;
}

SearchFilters parse_filters(const std::string& text) {
  SearchFilters f;
  if (text.empty() || text == "none") return f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "flank") {
      f.require_flank = true;
    } else if (item == "finite-pair") {
      f.require_finite_pair = true;
    } else if (item == "all") {
      f.require_flank = f.require_finite_pair = true;
    } else {
      throw UsageError("--filters: unknown filter '" + item + "'");
    }
  }
  return f;
}

json parse_json_text(const std::string& text, const char* flag) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    // Bare words such as omega are accepted unquoted.
    if (!text.empty() && text.front() != '[' && text.front() != '{') return json(text);
    throw UsageError(std::string(flag) + ": not valid JSON");
  }
}

json base_report(const char* command) {
  json j;
  j["command"] = command;
  j["subset_convention"] = io::kSubsetConvention;
  return j;
}

void emit(std::ostream& out, const json& j, bool pretty) {
  out << (pretty ? j.dump(2) : j.dump()) << '\n';
}

Model load_model(const Common& c) { return io::model_from_json(io::read_json_file(c.model_path)); }

std::optional<Region> region_flag(const Causet& causet, const std::string& text, bool given) {
  if (!given) return std::nullopt;
  return io::region_from_list(causet, text);
}

std::string where(const Common& c, const char* what) {
  if (c.model_path.empty() || std::string_view(what).starts_with(c.model_path)) return "";
  return c.model_path + ": ";
}

void require_spacelike(const Causet& c, Region a, Region b) {
  if (!is_spacelike(c, a, b)) throw NotSpacelikeError("regions are not spacelike separated");
  if (!a.disjoint(b)) throw NotDisjointError("regions overlap");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal sets, full specifications and screening-off principles", "causelab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Common common;
  auto add_common = [&common](CLI::App* sub, bool needs_model) {
    auto* opt = sub->add_option("--model", common.model_path, "Model or causet JSON file");
    if (needs_model) opt->required()->check(CLI::ExistingFile);
    sub->add_flag("--pretty", common.pretty, "Indent JSON output");
  };
  auto add_check = [&common](CLI::App* sub) {
    sub->add_option("--caps", common.caps, "region=K,algebra=M,witnesses=W");
    sub->add_flag("--strict-caps", common.strict_caps, "Fail instead of skipping capped work");
    sub->add_option("--zero-screener", common.zero_screener, "vacuous|strict")
        ->check(CLI::IsMember({"vacuous", "strict"}));
    sub->add_option("--workers", common.workers, "OpenMP threads; 1 runs the serial path")
        ->check(CLI::Range(1, 1024));
  };

  std::string region_a, region_b;
  auto add_pair = [&](CLI::App* sub, bool required) {
    auto* a = sub->add_option("--a", region_a, "Region as comma-separated element names");
    auto* b = sub->add_option("--b", region_b, "Region as comma-separated element names");
    if (required) {
      a->required();
      b->required();
    }
  };

  auto* validate = app.add_subcommand("validate", "Parse a model and check the dom axioms");
  add_common(validate, true);

  auto* regions = app.add_subcommand("regions", "Pasts, complements and flank regions");
  add_common(regions, true);
  add_pair(regions, false);

  std::string region_r;
  auto* fullspec = app.add_subcommand("fullspec", "Γ(R) size and full specifications Φ(R)");
  add_common(fullspec, true);
  fullspec->add_option("--region", region_r, "Region R")->required();
  bool by_definition = false;
  fullspec->add_flag("--by-definition", by_definition, "Compute Φ(R) from Γ(R) atoms");

  int family_size = 3;
  std::size_t pool_events = 64;
  std::uint64_t seed = 0;
  auto* axioms = app.add_subcommand("dom-axioms", "Check the dom axioms");
  add_common(axioms, true);
  axioms->add_option("--family-size", family_size, "Largest family checked")->check(CLI::Range(1, 6));
  axioms->add_option("--events", pool_events, "Sampled pool size when Ω is too large");
  axioms->add_option("--seed", seed, "Sampling seed");

  std::string event_a, event_b, cause;
  std::size_t max_size = 2;
  bool region_mode = false;
  auto* ccs = app.add_subcommand("ccs", "Correlation, common causes and common cause systems");
  add_common(ccs, true);
  ccs->add_option("--event-a", event_a, "Event as JSON")->required();
  ccs->add_option("--event-b", event_b, "Event as JSON")->required();
  ccs->add_option("--cause", cause, "Candidate common cause as JSON");
  ccs->add_option("--max-size", max_size, "Largest partition searched")->check(CLI::Range(1, 64));
  ccs->add_flag("--region-mode", region_mode, "Search partitions Φ(R) only");
  ccs->add_option("--relevance", common.relevance, "printed|conditional")
      ->check(CLI::IsMember({"printed", "conditional"}));
  ccs->add_option("--zero-screener", common.zero_screener, "vacuous|strict")
      ->check(CLI::IsMember({"vacuous", "strict"}));

  std::string principle = "all";
  auto* check = app.add_subcommand("check", "Check SO1, SO2, FIN-SO1, FIN-SO2");
  add_common(check, true);
  add_check(check);
  check->add_option("--principle", principle, "so1|so2|fin-so1|fin-so2|all")
      ->check(CLI::IsMember({"so1", "so2", "fin-so1", "fin-so2", "all"}));

  auto* replicate = app.add_subcommand("replicate", "Replay the SO1 => SO2 argument on a pair");
  add_common(replicate, true);
  add_pair(replicate, true);
  replicate->add_option("--caps", common.caps, "region=K,algebra=M,witnesses=W");
  replicate->add_option("--zero-screener", common.zero_screener, "vacuous|strict")
      ->check(CLI::IsMember({"vacuous", "strict"}));

  auto* gap = app.add_subcommand("gap", "Compare composed screeners with Φ(P2)");
  add_common(gap, true);
  add_pair(gap, true);

  SearchConfig search;
  std::string filters;
  std::string resume;
  std::size_t measures = 1;
  auto* hunt_cmd = app.add_subcommand("hunt", "Search small causets for separating models");
  hunt_cmd->add_flag("--pretty", common.pretty, "Ignored; hunt writes JSON lines");
  add_check(hunt_cmd);
  hunt_cmd->add_option("--max-elements", search.max_elements, "Largest causet")
      ->check(CLI::Range(1, kEnumerationHardLimit));
  hunt_cmd->add_option("--alphabet", search.alphabet, "Values per element")->check(CLI::Range(2, 10));
  hunt_cmd->add_option("--measures", measures, "Measures per causet")->check(CLI::Range(1, 100000));
  hunt_cmd->add_option("--seed", search.seed, "Measure seed");
  hunt_cmd->add_option("--denominator-bound", search.denominator_bound, "Largest random weight")
      ->check(CLI::Range(1, 1000000));
  hunt_cmd->add_flag("--include-diagonal", search.include_diagonal, "Add the diagonal measure");
  hunt_cmd->add_option("--filters", filters, "flank,finite-pair|all|none");
  hunt_cmd->add_option("--resume", resume, "Checkpoint file");
  std::size_t max_batches = 0;
  hunt_cmd->add_option("--max-batches", max_batches, "Stop after this many batches of 32 causets");

  int theorem_elements = 4;
  auto* theorems = app.add_subcommand("theorems", "Exhaustive region and specification sweeps");
  theorems->add_flag("--pretty", common.pretty, "Indent JSON output");
  add_check(theorems);
  theorems->add_option("--max-elements", theorem_elements, "Largest causet")
      ->check(CLI::Range(1, kEnumerationHardLimit));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate) {
      const Model m = load_model(common);
      json j = base_report("validate");
      j["model"] = io::model_to_json(m);
      j["histories"] = m.space().size();
      if (m.axioms()) j["dom_axioms"] = io::axioms_to_json(m.space(), *m.axioms());
      const bool ok = !m.axioms() || m.axioms()->passed();
      j["valid"] = ok;
      emit(out, j, common.pretty);
      return ok ? 0 : 1;
    }

    if (*regions) {
      const Model m = load_model(common);
      const Causet& c = m.causet();
      const auto a = region_flag(c, region_a, regions->count("--a") > 0);
      const auto b = region_flag(c, region_b, regions->count("--b") > 0);
      json j = base_report("regions");
      j["causet"] = io::causet_to_json(c);
      auto describe = [&c](Region r) {
        json d;
        d["region"] = io::region_to_json(c, r);
        d["past"] = io::region_to_json(c, past(c, r));
        d["causal_complement"] = io::region_to_json(c, causal_complement(c, r));
        d["causal_closure"] = io::region_to_json(c, causal_closure(c, r));
        d["causally_finite"] = is_causally_finite(c, r);
        return d;
      };
      if (a) j["a"] = describe(*a);
      if (b) j["b"] = describe(*b);
      if (a && b) {
        const bool spacelike = a->disjoint(*b) && is_spacelike(c, *a, *b);
        j["spacelike"] = spacelike;
        j["mutual_past"] = io::region_to_json(c, mutual_past(c, *a, *b));
        j["truncated_joint_past"] = io::region_to_json(c, truncated_joint_past(c, *a, *b));
        const auto flank = flank_regions(c, *a, *b);
        j["flank_x"] = io::region_to_json(c, flank.x);
        j["flank_y"] = io::region_to_json(c, flank.y);
        if (spacelike) {
          const auto rep = verify_crucial_identity(c, *a, *b);
          j["crucial_identity"] = {
              {"extended_a", io::region_to_json(c, rep.extended_a)},
              {"extended_b", io::region_to_json(c, rep.extended_b)},
              {"extended_spacelike", rep.extended_spacelike},
              {"truncated_joint_of_extended", io::region_to_json(c, rep.truncated_joint)},
              {"holds", rep.holds()}};
          emit(out, j, common.pretty);
          return rep.holds() ? 0 : 1;
        }
      }
      emit(out, j, common.pretty);
      return 0;
    }

    if (*fullspec) {
      const Model m = load_model(common);
      const Region r = io::region_from_list(m.causet(), region_r);
      const auto g = gamma(m.space(), m.dom(), r);
      const auto phi = by_definition ? full_specifications_by_definition(m.space(), m.dom(), r)
                                     : full_specifications(m.space(), m.dom(), r);
      Event seen = m.space().empty_event();
      bool partition = true;
      for (const auto& f : phi) {
        partition = partition && !f.empty() && f.disjoint(seen);
        seen |= f;
      }
      partition = partition && seen.is_full();
      json j = base_report("fullspec");
      j["region"] = io::region_to_json(m.causet(), r);
      j["gamma_size"] = g.size();
      j["full_specifications"] = json::array();
      for (const auto& f : phi) j["full_specifications"].push_back(io::event_to_json(m.space(), f));
      j["count"] = phi.size();
      j["partition"] = partition;
      emit(out, j, common.pretty);
      return partition ? 0 : 1;
    }

    if (*axioms) {
      const Model m = io::model_from_json(io::read_json_file(common.model_path),
                                          Model::AxiomCheck::skip);
      DomAxiomOptions opts;
      opts.family_size = family_size;
      json j = base_report("dom-axioms");
      if (m.space().size() <= opts.exhaustive_cap) {
        j["mode"] = "exhaustive";
      } else {
        j["mode"] = "sampled";
        opts.pool = sample_events(m.space(), pool_events, seed, m.causet().size());
        for (const auto& [e, r] : m.dom().overrides()) opts.pool.push_back(e);
      }
      const auto rep = check_dom_axioms(m.space(), m.dom(), opts);
      j["family_size"] = family_size;
      j["dom_axioms"] = io::axioms_to_json(m.space(), rep);
      j["passed"] = rep.passed();
      emit(out, j, common.pretty);
      return rep.passed() ? 0 : 1;
    }

    if (*ccs) {
      const Model m = load_model(common);
      const auto& space = m.space();
      const Event a = io::event_from_json(space, parse_json_text(event_a, "--event-a"));
      const Event b = io::event_from_json(space, parse_json_text(event_b, "--event-b"));
      const ZeroScreener zs =
          common.zero_screener == "strict" ? ZeroScreener::strict : ZeroScreener::vacuous;
      json j = base_report("ccs");
      const bool correlated = is_correlated(m.measure(), a, b);
      j["correlated"] = correlated;
      j["prob_a"] = to_string(prob(m.measure(), a));
      j["prob_b"] = to_string(prob(m.measure(), b));
      j["prob_ab"] = to_string(prob(m.measure(), a & b));
      bool ok = correlated;
      if (!cause.empty()) {
        const Event c = io::event_from_json(space, parse_json_text(cause, "--cause"));
        CommonCauseOptions cc;
        cc.relevance = common.relevance == "conditional" ? Relevance::conditional : Relevance::printed;
        cc.zero_screener = zs;
        const auto v = is_common_cause(m.measure(), a, b, c, cc);
        json failed = json::array();
        for (const auto& f : v.failed_conditions) {
          failed.push_back({{"condition", f.condition}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        }
        j["common_cause"] = {{"cause", io::event_to_json(space, c)},
                             {"relevance", common.relevance},
                             {"qualifies", v.qualifies},
                             {"failed_conditions", failed}};
        ok = v.qualifies;
      } else {
        FindCcsOptions fo;
        fo.max_size = max_size;
        fo.region_mode = region_mode;
        fo.zero_screener = zs;
        const auto found = find_ccs(space, m.dom(), m.measure(), a, b, fo);
        json systems = json::array();
        for (const auto& part : found) {
          json cells = json::array();
          for (const auto& cell : part) cells.push_back(io::event_to_json(space, cell));
          systems.push_back(cells);
        }
        j["search"] = {{"max_size", max_size},
                       {"mode", region_mode ? "region" : "exhaustive"}};
        j["systems"] = systems;
        ok = ok && !found.empty();
      }
      emit(out, j, common.pretty);
      return ok ? 0 : 1;
    }

    if (*check) {
      const CheckOptions opts = check_options(common);
      const Model m = load_model(common);
      const Execution exec = execution(common.workers);
      json j = base_report("check");
      bool ok = true;
      if (principle == "all") {
        const auto mx = implication_matrix(m, opts, exec);
        j["result"] = io::matrix_to_json(m, mx);
        for (bool h : mx.holds) ok = ok && h;
      } else {
        const auto v = check_principle(m, *parse_principle(principle), opts, exec);
        j["result"] = io::verdict_to_json(m, v);
        ok = v.satisfied;
      }
      emit(out, j, common.pretty);
      return ok ? 0 : 1;
    }

    if (*replicate) {
      const CheckOptions opts = check_options(common);
      const Model m = load_model(common);
      const Region a = io::region_from_list(m.causet(), region_a);
      const Region b = io::region_from_list(m.causet(), region_b);
      require_spacelike(m.causet(), a, b);
      const auto rep = replicate_so1_to_so2(m, a, b, opts);
      json j = base_report("replicate");
      j["result"] = io::replication_to_json(m, a, b, rep);
      emit(out, j, common.pretty);
      return rep.passed() || !rep.applicable ? 0 : 1;
    }

    if (*gap) {
      const Model m = load_model(common);
      const Region a = io::region_from_list(m.causet(), region_a);
      const Region b = io::region_from_list(m.causet(), region_b);
      require_spacelike(m.causet(), a, b);
      const auto rep = gap_closure_check(m, a, b);
      json j = base_report("gap");
      j["result"] = io::gap_to_json(m, a, b, rep);
      emit(out, j, common.pretty);
      return rep.equal ? 0 : 1;
    }

    if (*hunt_cmd) {
      search.check = check_options(common);
      search.filters = parse_filters(filters);
      search.measures_per_model = measures;
      search.exec = execution(common.workers);
      HuntOptions ho;
      if (!resume.empty()) ho.checkpoint = resume;
      ho.max_batches = max_batches;
      const auto summary = hunt(search, out, ho);
      return summary.findings > 0 ? 1 : 0;
    }

    if (*theorems) {
      const CheckOptions opts = check_options(common);
      const Execution exec = execution(common.workers);
      std::vector<SweepReport> reps;
      reps.push_back(region_theorem_sweep(theorem_elements, exec));
      reps.push_back(partition_sweep(std::min(theorem_elements, 4), 2, exec));
      reps.push_back(composition_sweep(std::min(theorem_elements, 4), 2, exec));
      DomSweepOptions dso;
      dso.sampled_elements = std::min(theorem_elements, 4);
      dso.exhaustive_elements = std::min(theorem_elements, 3);
      reps.push_back(dom_axiom_sweep(dso, exec));
      reps.push_back(replication_sweep(std::min(theorem_elements, 4), opts, exec));
      json j = base_report("theorems");
      j["max_elements"] = theorem_elements;
      j["sweeps"] = json::array();
      bool ok = true;
      for (const auto& r : reps) {
        j["sweeps"].push_back(io::sweep_to_json(r));
        ok = ok && r.passed;
      }
      j["passed"] = ok;
      emit(out, j, common.pretty);
      return ok ? 0 : 1;
    }
  } catch (const InternalConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return 3;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << where(common, e.what()) << e.what() << '\n';
    return 2;
  } catch (const io::json::exception& e) {
    err << "error: " << where(common, e.what()) << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace causelab
