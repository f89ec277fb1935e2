#include "causelab/hunter.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

#include "causelab/enumerate.hpp"
#include "causelab/errors.hpp"
#include "causelab/model_io.hpp"

namespace causelab {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string hex16(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ModelOutcome {
  std::array<bool, 4> holds{};
  bool capped = false;
  std::uint64_t witnesses_replayed = 0;
  std::uint64_t witness_failures = 0;
  std::uint64_t replications = 0;
  std::uint64_t replication_failures = 0;
  std::optional<Finding> finding;
};

struct CausetOutcome {
  bool filtered = false;
  std::uint64_t duplicate_measures = 0;
  std::uint64_t gap_checks = 0;
  std::uint64_t gap_mismatches = 0;
  std::vector<ModelOutcome> models;
  std::string consistency_error;
};

bool passes_filters(const Causet& c, const SearchConfig& cfg) {
  const int k = cfg.check.caps.max_region_size;
  if (cfg.filters.require_flank) {
    bool any = false;
    for (const auto& [a, b] : spacelike_pairs(c, k, false)) {
      const auto f = flank_regions(c, a, b);
      if (!f.x.empty() || !f.y.empty()) { any = true; break; }
    }
    if (!any) return false;
  }
  if (cfg.filters.require_finite_pair && spacelike_pairs(c, k, true).empty()) return false;
  return true;
}

CausetOutcome evaluate_causet(const Causet& c, std::size_t index, const SearchConfig& cfg) {
  CausetOutcome out;
  if (!passes_filters(c, cfg)) {
    out.filtered = true;
    return out;
  }
  const HistorySpace space(c, cfg.alphabet);
  const auto fingerprint = causet_fingerprint(c);
  const auto pairs = spacelike_pairs(c, cfg.check.caps.max_region_size, false);

  struct Sampled {
    MeasureTable measure;
    std::string kind;
  };
  std::vector<Sampled> measures;
  {
    auto base = sample_measures(space, cfg.measures_per_model, mix(cfg.seed, index),
                                cfg.denominator_bound);
    for (std::size_t j = 0; j < base.size(); ++j) {
      measures.push_back({std::move(base[j]), j == 0 ? "uniform" : "random"});
    }
    if (cfg.include_diagonal) measures.push_back({MeasureTable::diagonal(space), "diagonal"});
  }

  // Gap closure depends only on the causet and dom.
  bool gap_mismatch = false;
  {
    const Model probe(space, DomMap{}, MeasureTable::uniform(space), Model::AxiomCheck::skip);
    for (const auto& [a, b] : pairs) {
      ++out.gap_checks;
      if (!gap_closure_check(probe, a, b).equal) {
        ++out.gap_mismatches;
        gap_mismatch = true;
      }
    }
  }

  std::set<std::uint64_t> seen;
  for (std::size_t j = 0; j < measures.size(); ++j) {
    const auto digest = measures[j].measure.digest();
    if (!seen.insert(digest).second) {
      ++out.duplicate_measures;
      continue;
    }
    const Model model(space, DomMap{}, measures[j].measure);
    ModelOutcome mo;
    ImplicationMatrix mx;
    try {
      mx = implication_matrix(model, cfg.check);
    } catch (const InternalConsistencyError& e) {
      out.consistency_error = fingerprint + ": " + e.what();
      return out;
    }
    mo.holds = mx.holds;
    for (std::size_t p = 0; p < 4; ++p) {
      mo.capped |= mx.verdicts[p].capped;
      for (const auto& w : mx.verdicts[p].witnesses) {
        ++mo.witnesses_replayed;
        if (!replay_witness(model, kAllPrinciples[p], w)) ++mo.witness_failures;
      }
    }
    if (mx.so1()) {
      for (const auto& [a, b] : pairs) {
        ++mo.replications;
        if (!replicate_so1_to_so2(model, a, b, cfg.check).passed()) ++mo.replication_failures;
      }
    }

    std::vector<std::string> tags;
    if ((!mx.so1() && mx.fin_so1()) || (!mx.so2() && mx.fin_so2())) {
      tags.emplace_back("separates finite/infinite");
    }
    if (mx.fin_so2() && !mx.fin_so1()) tags.emplace_back("FIN-SO2 ∧ ¬FIN-SO1 candidate");
    if (mx.fin_so1() && !mx.fin_so2()) tags.emplace_back("FIN-SO1 ∧ ¬FIN-SO2 candidate");
    if (mx.so2() && !mx.so1()) tags.emplace_back("per-model SO2∧¬SO1");
    if (mx.so1() && !mx.so2()) tags.emplace_back("per-model SO1∧¬SO2");
    if (gap_mismatch) tags.emplace_back("gap-closure mismatch");
    if (mo.replication_failures > 0) tags.emplace_back("replication failure");
    if (mo.witness_failures > 0) tags.emplace_back("witness replay failure");

    if (!tags.empty()) {
      Finding f;
      f.causet_fingerprint = fingerprint;
      f.measure_digest = hex16(digest);
      f.causet_index = index;
      f.measure_index = j;
      f.measure_kind = measures[j].kind;
      f.holds = mx.holds;
      f.tags = std::move(tags);
      f.model_json = io::model_to_json(model).dump();
      mo.finding = std::move(f);
    }
    out.models.push_back(std::move(mo));
  }
  return out;
}

io::json finding_to_json(const Finding& f) {
  io::json holds = io::json::object();
  for (std::size_t p = 0; p < 4; ++p) holds[std::string(principle_name(kAllPrinciples[p]))] = f.holds[p];
  return {{"causet", f.causet_fingerprint},
          {"measure", f.measure_digest},
          {"causet_index", f.causet_index},
          {"measure_index", f.measure_index},
          {"measure_kind", f.measure_kind},
          {"holds", holds},
          {"tags", f.tags},
          {"model", io::json::parse(f.model_json)}};
}

io::json summary_to_json(const HuntSummary& s) {
  return {{"causets", s.causets},
          {"causets_filtered", s.causets_filtered},
          {"models", s.models},
          {"duplicate_measures", s.duplicate_measures},
          {"capped_models", s.capped_models},
          {"findings", s.findings},
          {"truth_table", s.truth_table},
          {"tags", s.tags},
          {"consistency_failures", s.consistency_failures},
          {"witnesses_replayed", s.witnesses_replayed},
          {"witness_failures", s.witness_failures},
          {"gap_checks", s.gap_checks},
          {"gap_mismatches", s.gap_mismatches},
          {"replications", s.replications},
          {"replication_failures", s.replication_failures},
          {"next_index", s.next_index}};
}

HuntSummary summary_from_json(const io::json& j) {
  HuntSummary s;
  s.causets = j.at("causets");
  s.causets_filtered = j.at("causets_filtered");
  s.models = j.at("models");
  s.duplicate_measures = j.at("duplicate_measures");
  s.capped_models = j.at("capped_models");
  s.findings = j.at("findings");
  s.truth_table = j.at("truth_table").get<std::map<std::string, std::uint64_t>>();
  s.tags = j.at("tags").get<std::map<std::string, std::uint64_t>>();
  s.consistency_failures = j.at("consistency_failures");
  s.witnesses_replayed = j.at("witnesses_replayed");
  s.witness_failures = j.at("witness_failures");
  s.gap_checks = j.at("gap_checks");
  s.gap_mismatches = j.at("gap_mismatches");
  s.replications = j.at("replications");
  s.replication_failures = j.at("replication_failures");
  s.next_index = j.at("next_index");
  return s;
}

void write_checkpoint(const std::string& path, const SearchConfig& cfg, const HuntSummary& s) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw Error(path + ": cannot write checkpoint");
    f << io::json{{"config", config_digest(cfg)}, {"summary", summary_to_json(s)}}.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::vector<MeasureTable> sample_measures(const HistorySpace& space, std::size_t k,
                                          std::uint64_t seed, std::uint64_t denominator_bound) {
  if (k == 0) throw Error("at least one measure per model is required");
  std::vector<MeasureTable> out;
  out.reserve(k);
  out.push_back(MeasureTable::uniform(space));
  for (std::size_t j = 1; j < k; ++j) {
    out.push_back(MeasureTable::random(space, mix(seed, j), denominator_bound));
  }
  return out;
}

std::string truth_table_key(const std::array<bool, 4>& holds) {
  std::string key;
  for (std::size_t p = 0; p < 4; ++p) {
    if (p) key += " ";
    key += std::string(principle_name(kAllPrinciples[p])) + "=" + (holds[p] ? "1" : "0");
  }
  return key;
}

std::string config_digest(const SearchConfig& cfg) {
  const auto& caps = cfg.check.caps;
  return "max_elements=" + std::to_string(cfg.max_elements) +
         ";alphabet=" + std::to_string(cfg.alphabet) +
         ";measures=" + std::to_string(cfg.measures_per_model) +
         ";seed=" + std::to_string(cfg.seed) +
         ";denominator_bound=" + std::to_string(cfg.denominator_bound) +
         ";diagonal=" + (cfg.include_diagonal ? "1" : "0") +
         ";region=" + std::to_string(caps.max_region_size) +
         ";algebra=" + std::to_string(caps.max_algebra) +
         ";witnesses=" + std::to_string(caps.max_witnesses) +
         ";zero=" + (cfg.check.zero_screener == ZeroScreener::strict ? "strict" : "vacuous") +
         ";flank=" + (cfg.filters.require_flank ? "1" : "0") +
         ";finite_pair=" + (cfg.filters.require_finite_pair ? "1" : "0");
}

HuntSummary hunt(const SearchConfig& cfg, std::ostream& out, const HuntOptions& opts) {
  if (cfg.max_elements < 1) throw LimitError("max_elements must be at least 1");
  if (cfg.measures_per_model < 1) throw Error("measures_per_model must be at least 1");

  std::vector<Causet> causets;
  for (int n = 1; n <= cfg.max_elements; ++n) {
    for (auto& c : enumerate_causets(n)) causets.push_back(std::move(c));
  }

  HuntSummary sum;
  if (opts.checkpoint && std::filesystem::exists(*opts.checkpoint)) {
    const auto j = io::read_json_file(*opts.checkpoint);
    if (j.value("config", std::string{}) != config_digest(cfg)) {
      throw Error(*opts.checkpoint + ": checkpoint was written under a different configuration");
    }
    sum = summary_from_json(j.at("summary"));
  }

  const std::size_t batch = std::max<std::size_t>(1, opts.batch);
  std::size_t batches = 0;
  while (sum.next_index < causets.size()) {
    if (opts.max_batches != 0 && batches++ == opts.max_batches) break;
    const std::size_t begin = sum.next_index;
    const std::size_t end = std::min(causets.size(), begin + batch);
    std::vector<CausetOutcome> results(end - begin);
    std::vector<std::exception_ptr> errors(end - begin);
    auto one = [&](std::size_t i) {
      try {
        results[i - begin] = evaluate_causet(causets[i], i, cfg);
      } catch (...) {
        errors[i - begin] = std::current_exception();
      }
    };
    if (cfg.exec.backend == Backend::openmp && cfg.exec.workers > 1) {
      const auto lo = static_cast<std::ptrdiff_t>(begin), hi = static_cast<std::ptrdiff_t>(end);
#pragma omp parallel for schedule(dynamic) num_threads(cfg.exec.workers)
      for (std::ptrdiff_t i = lo; i < hi; ++i) one(static_cast<std::size_t>(i));
    } else {
      for (std::size_t i = begin; i < end; ++i) one(i);
    }

    for (std::size_t i = begin; i < end; ++i) {
      if (errors[i - begin]) std::rethrow_exception(errors[i - begin]);
      const auto& r = results[i - begin];
      if (!r.consistency_error.empty()) {
        ++sum.consistency_failures;
        throw InternalConsistencyError(r.consistency_error);
      }
      ++sum.causets;
      if (r.filtered) {
        ++sum.causets_filtered;
        continue;
      }
      sum.duplicate_measures += r.duplicate_measures;
      sum.gap_checks += r.gap_checks;
      sum.gap_mismatches += r.gap_mismatches;
      for (const auto& m : r.models) {
        ++sum.models;
        ++sum.truth_table[truth_table_key(m.holds)];
        sum.capped_models += m.capped ? 1 : 0;
        sum.witnesses_replayed += m.witnesses_replayed;
        sum.witness_failures += m.witness_failures;
        sum.replications += m.replications;
        sum.replication_failures += m.replication_failures;
        if (m.finding) {
          ++sum.findings;
          for (const auto& t : m.finding->tags) ++sum.tags[t];
          out << finding_to_json(*m.finding).dump() << "\n";
        }
      }
    }
    sum.next_index = end;
    if (opts.checkpoint) write_checkpoint(*opts.checkpoint, cfg, sum);
  }

  io::json summary = summary_to_json(sum);
  summary["config"] = config_digest(cfg);
  summary["subset_convention"] = io::kSubsetConvention;
  out << io::json{{"summary", summary}}.dump() << "\n";
  out.flush();
  return sum;
}

}  // namespace causelab
