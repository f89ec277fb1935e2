#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causelab/histories.hpp"
#include "causelab/measure.hpp"

namespace causelab {

enum class Principle { so1, so2, fin_so1, fin_so2 };

inline constexpr std::array<Principle, 4> kAllPrinciples = {
    Principle::so1, Principle::so2, Principle::fin_so1, Principle::fin_so2};

std::string_view principle_name(Principle p);         // "SO1", ..., "FIN-SO2"
std::optional<Principle> parse_principle(std::string_view text);  // "so1", "fin-so2", ...

// Screeners come from Φ(P1) for the SO1 family and Φ(P2) for SO2.
bool uses_mutual_past(Principle p);
bool restricts_to_finite(Principle p);
Region screener_region(const Causet& c, Principle p, Region a, Region b);

// Serial loops are the reference; OpenMP runs the same work units.
enum class Backend { serial, openmp };

struct Execution {
  Backend backend = Backend::serial;
  int workers = 1;
};

struct Caps {
  int max_region_size = 3;
  std::uint64_t max_algebra = 256;  // per-region |Γ|
  bool strict = false;              // throw CapExceededError instead of marking "capped"
  std::size_t max_witnesses = 256;  // stored per verdict; violations are always counted
};

struct CheckOptions {
  Caps caps;
  ZeroScreener zero_screener = ZeroScreener::vacuous;
  // Refuse to check a model whose dom fails its axioms.
  bool require_axioms = false;
};

// A causet, its history space, a dom map and a measure. The dom axioms are
// checked once on construction and the report kept alongside.
class Model {
 public:
  enum class AxiomCheck { automatic, skip };

  Model(HistorySpace space, DomMap dom, MeasureTable measure,
        AxiomCheck check = AxiomCheck::automatic);

  const HistorySpace& space() const { return space_; }
  const Causet& causet() const { return space_.causet(); }
  const DomMap& dom() const { return dom_; }
  const MeasureTable& measure() const { return measure_; }
  const std::optional<DomAxiomReport>& axioms() const { return axioms_; }

 private:
  HistorySpace space_;
  DomMap dom_;
  MeasureTable measure_;
  std::optional<DomAxiomReport> axioms_;
};

// Seeded events decidable on small random regions: a random region of at
// most `max_region` elements, then a random union of its cylinders.
std::vector<Event> sample_events(const HistorySpace& space, std::size_t count,
                                 std::uint64_t seed, int max_region);

struct Witness {
  std::string kind = "screening";  // or "null-screener" in strict zero mode
  Event a;
  Event b;
  Region region_a;
  Region region_b;
  Event screener;
  std::string lhs;  // μ(A∩B|C)
  std::string rhs;  // μ(A|C) μ(B|C)
};

struct CheckedCounts {
  std::uint64_t region_pairs = 0;
  std::uint64_t skipped_region_pairs = 0;
  std::uint64_t event_pairs = 0;
  std::uint64_t screenings = 0;
  std::uint64_t vacuous_screenings = 0;
};

struct Verdict {
  Principle principle = Principle::so1;
  bool satisfied = true;
  bool capped = false;
  CheckedCounts counts;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> warnings;
};

// Sweeps every unordered pair of disjoint spacelike nonempty regions within
// the caps (causally finite ones only for FIN variants), every A ∈ Γ(𝒜),
// B ∈ Γ(ℬ) and every screener C ∈ Φ(Pk(𝒜, ℬ)), recording each failure of
// μ(A∩B|C) = μ(A|C) μ(B|C).
Verdict check_principle(const Model& model, Principle which, const CheckOptions& opts = {},
                        const Execution& exec = {});

// Re-evaluates a witness from scratch with exact rationals. True when the
// witness is well formed for `which` and reproduces its lhs != rhs.
bool replay_witness(const Model& model, Principle which, const Witness& w);

struct ImplicationMatrix {
  std::array<Verdict, 4> verdicts;  // kAllPrinciples order
  std::array<bool, 4> holds{};
  // implies[i][j]: holds[i] => holds[j] on this model.
  std::array<std::array<bool, 4>, 4> implies{};

  bool so1() const { return holds[0]; }
  bool so2() const { return holds[1]; }
  bool fin_so1() const { return holds[2]; }
  bool fin_so2() const { return holds[3]; }
};

// Runs all four checks. Throws InternalConsistencyError if SOk holds while
// FIN-SOk fails.
ImplicationMatrix implication_matrix(const Model& model, const CheckOptions& opts = {},
                                     const Execution& exec = {});

struct StepResult {
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;  // null conditioning events (step 2)
  std::string witness;
};

struct ReplicationReport {
  bool applicable = false;
  std::string reason;
  Region flank_x;
  Region flank_y;
  Region mutual;
  Region truncated_joint;
  StepResult step1;  // C screens the four derived pairs
  StepResult step2;  // conditional factorization given X ∩ Y ∩ C
  StepResult step3;  // C ∩ X ∩ Y ∈ Φ(P2)
  bool passed() const { return applicable && step1.passed && step2.passed && step3.passed; }
};

// Replays the SO1 => SO2 argument on one spacelike pair. The report is
// "not applicable" when SO1 already fails on (a, b). Throws
// NotSpacelikeError.
ReplicationReport replicate_so1_to_so2(const Model& model, Region a, Region b,
                                       const CheckOptions& opts = {});

struct GapReport {
  bool equal = false;
  std::size_t composed = 0;  // |{C ∩ X ∩ Y nonempty}|
  std::size_t full_specs = 0;  // |Φ(P2)|
  std::vector<Event> missing;  // in Φ(P2), never composed
  std::vector<Event> extra;    // composed, not in Φ(P2)
};

// Compares {C ∩ X ∩ Y ≠ ∅ : C ∈ Φ(P1), X ∈ Φ(𝒳), Y ∈ Φ(𝒴)} with Φ(P2).
// Throws NotSpacelikeError.
GapReport gap_closure_check(const Model& model, Region a, Region b);

// Unordered disjoint spacelike nonempty region pairs with both sides of at
// most max_size elements; only causally finite regions when finite_only.
std::vector<std::pair<Region, Region>> spacelike_pairs(const Causet& c, int max_size,
                                                       bool finite_only);

}  // namespace causelab
