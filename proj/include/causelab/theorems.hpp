#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causelab/principles.hpp"

namespace causelab {

// Outcome of one exhaustive property sweep. Failures are findings and are
// listed, never thrown.
struct SweepReport {
  std::string name;
  bool passed = true;
  std::uint64_t models = 0;
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> causets_per_size;  // index = element count
  std::vector<std::string> failures;            // capped at 64 entries
  std::uint64_t failure_count = 0;

  void fail(std::string what);
};

// For every causet with 1..max_elements elements and every unordered
// spacelike pair of nonempty regions: A ∪ X and B ∪ Y are spacelike,
// P2(A ∪ X, B ∪ Y) = P1(A, B), P2(A, B) = X ⊔ Y ⊔ P1(A, B) with the three
// parts disjoint, and P1(A, B) misses A ∪ B.
SweepReport region_theorem_sweep(int max_elements, const Execution& exec = {});

// Φ(R) computed from its definition is a partition of Ω with
// alphabet^|R| cells, for every region of every canonical product model.
SweepReport partition_sweep(int max_elements, int alphabet = 2, const Execution& exec = {});

// Φ(X ⊔ Y) = {F ∩ G : F ∈ Φ(X), G ∈ Φ(Y)} for every pair of disjoint regions.
SweepReport composition_sweep(int max_elements, int alphabet = 2, const Execution& exec = {});

// Canonical dom against its axioms: exhaustive families up to family_size
// for models with at most exhaustive_elements elements, and families of
// `sampled_events` seeded events on models with exactly sampled_elements.
struct DomSweepOptions {
  int exhaustive_elements = 3;
  int family_size = 3;
  int sampled_elements = 4;
  std::size_t sampled_events = 100;
  std::uint64_t seed = 1;
  int alphabet = 2;
};
SweepReport dom_axiom_sweep(const DomSweepOptions& opts = {}, const Execution& exec = {});

// On canonical product models under the uniform measure where SO1 holds,
// replication steps 1-3 pass and the gap check reports equality for every
// spacelike pair within the caps. Any other outcome is listed as a finding.
SweepReport replication_sweep(int max_elements, const CheckOptions& opts = {},
                              const Execution& exec = {});

}  // namespace causelab
