#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causelab/principles.hpp"

namespace causelab {

// Uniform first, then k-1 seeded random measures with weights in
// {0, ..., denominator_bound} normalized exactly.
std::vector<MeasureTable> sample_measures(const HistorySpace& space, std::size_t k,
                                          std::uint64_t seed, std::uint64_t denominator_bound);

struct SearchFilters {
  bool require_flank = false;        // some spacelike pair has a nonempty flank region
  bool require_finite_pair = false;  // some spacelike pair of causally finite regions
};

struct SearchConfig {
  int max_elements = 3;
  int alphabet = 2;
  std::size_t measures_per_model = 1;
  std::uint64_t seed = 0;
  std::uint64_t denominator_bound = 10;
  bool include_diagonal = false;  // add the perfectly correlated measure
  CheckOptions check;
  SearchFilters filters;
  Execution exec;
};

// Deterministic text identifying a config; checkpoints refuse to resume
// under a different one.
std::string config_digest(const SearchConfig& cfg);

struct Finding {
  std::string causet_fingerprint;
  std::string measure_digest;  // 16 hex digits
  std::size_t causet_index = 0;
  std::size_t measure_index = 0;
  std::string measure_kind;  // uniform | random | diagonal
  std::array<bool, 4> holds{};
  std::vector<std::string> tags;
  std::string model_json;  // replayable model, serialized
};

struct HuntSummary {
  std::uint64_t causets = 0;
  std::uint64_t causets_filtered = 0;
  std::uint64_t models = 0;
  std::uint64_t duplicate_measures = 0;
  std::uint64_t capped_models = 0;
  std::uint64_t findings = 0;
  std::map<std::string, std::uint64_t> truth_table;
  std::map<std::string, std::uint64_t> tags;
  std::uint64_t consistency_failures = 0;
  std::uint64_t witnesses_replayed = 0;
  std::uint64_t witness_failures = 0;
  std::uint64_t gap_checks = 0;
  std::uint64_t gap_mismatches = 0;
  std::uint64_t replications = 0;
  std::uint64_t replication_failures = 0;
  std::size_t next_index = 0;  // first causet index not yet processed
};

struct HuntOptions {
  // Checkpoint file; when it exists and matches the config the hunt resumes
  // after the last completed causet.
  std::optional<std::string> checkpoint;
  std::size_t batch = 32;
  // Stop after this many batches (0 runs to completion); a later call with
  // the same checkpoint continues from there.
  std::size_t max_batches = 0;
};

// Sweeps every causet with 1..max_elements elements under the sampled
// measures, writing one JSON line per Finding to `out` and a final summary
// line. Output depends only on the config. Throws InternalConsistencyError
// if SOk => FIN-SOk fails anywhere.
HuntSummary hunt(const SearchConfig& cfg, std::ostream& out, const HuntOptions& opts = {});

std::string truth_table_key(const std::array<bool, 4>& holds);

}  // namespace causelab
