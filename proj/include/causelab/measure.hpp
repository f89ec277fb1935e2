#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causelab/histories.hpp"

namespace causelab {

using Rational = mpq_class;

std::string to_string(const Rational& q);  // "1/2", "0", "3"
Rational parse_rational(const std::string& text);

enum class Relevance { printed, conditional };
enum class ZeroScreener { vacuous, strict };

// Exact probability weights, one per history, summing to exactly 1.
class MeasureTable {
 public:
  // Throws MeasureError on negative weights, a size mismatch or a total != 1.
  MeasureTable(const HistorySpace& space, std::vector<Rational> weights);

  static MeasureTable uniform(const HistorySpace& space);
  // Integer weights normalized by their total; at least one must be positive.
  static MeasureTable from_integers(const HistorySpace& space,
                                    const std::vector<std::uint64_t>& weights);
  // Equal weight on the constant histories (every element takes the same
  // value): perfect correlation between any two elements.
  static MeasureTable diagonal(const HistorySpace& space);
  // Weights drawn uniformly from {0, ..., denominator_bound} per history and
  // normalized exactly. Deterministic in seed.
  static MeasureTable random(const HistorySpace& space, std::uint64_t seed,
                             std::uint64_t denominator_bound);

  std::size_t size() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }

  // Integer view: weights as numerators over one common denominator, when
  // the denominator fits in 62 bits. Screening checks use it to compare
  // cross products in 128-bit integers.
  bool has_integer_view() const { return denominator_ != 0; }
  std::uint64_t denominator() const { return denominator_; }
  const std::vector<std::uint64_t>& numerators() const { return numerators_; }

  // Numerator sum over e in the integer view.
  std::uint64_t mass(const Event& e) const;

  // FNV-1a over the canonical weight strings.
  std::uint64_t digest() const;

  bool operator==(const MeasureTable& o) const { return weights_ == o.weights_; }

 private:
  std::vector<Rational> weights_;
  std::vector<std::uint64_t> numerators_;
  std::uint64_t denominator_ = 0;
};

Rational prob(const MeasureTable& m, const Event& e);
// Throws ZeroConditionError when prob(given) = 0.
Rational cond_prob(const MeasureTable& m, const Event& e, const Event& given);

// μ(A ∩ B) > μ(A) μ(B), exactly.
bool is_correlated(const MeasureTable& m, const Event& a, const Event& b);

struct ConditionFailure {
  std::string condition;  // screen-on-C, screen-on-C^c, relevance-A, relevance-B, not-correlated
  std::string lhs;
  std::string rhs;
};

struct CommonCauseOptions {
  Relevance relevance = Relevance::printed;
  ZeroScreener zero_screener = ZeroScreener::vacuous;
};

struct CommonCauseVerdict {
  bool qualifies = false;
  std::vector<ConditionFailure> failed_conditions;
};

// Reichenbachian common cause: C and C^c both screen off A from B, plus the
// relevance conditions, either as printed (μ(A∩C) > μ(A∩C^c)) or in
// conditional form (μ(A|C) > μ(A|C^c)).
CommonCauseVerdict is_common_cause(const MeasureTable& m, const Event& a, const Event& b,
                                   const Event& c, const CommonCauseOptions& opts = {});

struct CcsVerdict {
  bool qualifies = false;
  bool correlated = false;
  // First failure found: "not-correlated", "screening" (cell set) or
  // "relevance" (cell and other_cell set).
  std::optional<std::string> failure;
  std::optional<std::size_t> cell;
  std::optional<std::size_t> other_cell;
  std::string lhs;
  std::string rhs;
};

// Common cause system check. Throws NotAPartitionError unless `partition`
// splits Ω into nonempty, pairwise disjoint cells.
CcsVerdict is_ccs(const MeasureTable& m, const Event& a, const Event& b,
                  const std::vector<Event>& partition,
                  ZeroScreener zero_screener = ZeroScreener::vacuous);

struct FindCcsOptions {
  std::size_t max_size = 2;
  // All set partitions of Ω are tried when |Ω| <= exhaustive_cap.
  std::size_t exhaustive_cap = 8;
  // Search only partitions of the form Φ(R) over regions R.
  bool region_mode = false;
  ZeroScreener zero_screener = ZeroScreener::vacuous;
};

// Qualifying partitions with at most max_size cells, in a fixed order.
// Throws CapExceededError when |Ω| exceeds the exhaustive cap outside region
// mode.
std::vector<std::vector<Event>> find_ccs(const HistorySpace& space, const DomMap& dom,
                                         const MeasureTable& m, const Event& a, const Event& b,
                                         const FindCcsOptions& opts = {});

}  // namespace causelab
