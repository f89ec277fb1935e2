#include "causelab/measure.hpp"

#include <algorithm>
#include <set>

#include "causelab/errors.hpp"

namespace causelab {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    // Finite decimal, read exactly: "0.25" -> 25/100.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t places = text.size() - dot - 1;
    const bool ok = places > 0 && digits.find_first_not_of("0123456789", digits[0] == '-') ==
                                      std::string::npos;
    if (!ok || q.get_num().set_str(digits, 10) != 0) {
      throw MeasureError("not a rational number: '" + text + "'");
    }
    mpz_ui_pow_ui(q.get_den_mpz_t(), 10, places);
    q.canonicalize();
    return q;
  }
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw MeasureError("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw MeasureError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t as_u64(const mpz_class& z) {
  // mpz_get_ui is only 64-bit on LP64 targets; assemble explicitly.
  mpz_class hi = z >> 32;
  mpz_class lo = z - (hi << 32);
  return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
}

mpz_class from_u64(std::uint64_t v) {
  return (mpz_class(static_cast<unsigned long>(v >> 32)) << 32) +
         static_cast<unsigned long>(v & 0xffffffffU);
}

}  // namespace

MeasureTable::MeasureTable(const HistorySpace& space, std::vector<Rational> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() != space.size()) {
    throw MeasureError("measure has " + std::to_string(weights_.size()) + " weights for " +
                       std::to_string(space.size()) + " histories");
  }
  Rational total = 0;
  for (auto& w : weights_) {
    w.canonicalize();
    if (w < 0) throw MeasureError("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw MeasureError("weights sum to " + to_string(total) + ", not 1");

  mpz_class lcm = 1;
  for (const auto& w : weights_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), w.get_den_mpz_t());
  if (mpz_sizeinbase(lcm.get_mpz_t(), 2) <= 62) {
    denominator_ = as_u64(lcm);
    numerators_.reserve(weights_.size());
    for (const auto& w : weights_) {
      mpz_class num = w.get_num() * (lcm / w.get_den());
      numerators_.push_back(as_u64(num));
    }
  }
}

MeasureTable MeasureTable::uniform(const HistorySpace& space) {
  return MeasureTable(space, std::vector<Rational>(space.size(), Rational(1, space.size())));
}

MeasureTable MeasureTable::from_integers(const HistorySpace& space,
                                         const std::vector<std::uint64_t>& weights) {
  mpz_class total = 0;
  for (auto w : weights) total += from_u64(w);
  if (total == 0) throw MeasureError("all integer weights are zero");
  std::vector<Rational> q;
  q.reserve(weights.size());
  for (auto w : weights) {
    Rational r(from_u64(w), total);
    r.canonicalize();
    q.push_back(std::move(r));
  }
  return MeasureTable(space, std::move(q));
}

MeasureTable MeasureTable::diagonal(const HistorySpace& space) {
  std::set<std::size_t> constant;
  for (int v = 0; v < space.alphabet(); ++v) {
    std::size_t h = 0;
    for (int i = 0; i < space.elements(); ++i) h += static_cast<std::size_t>(v) * space.stride(i);
    constant.insert(h);
  }
  std::vector<std::uint64_t> w(space.size(), 0);
  for (auto h : constant) w[h] = 1;
  return from_integers(space, w);
}

MeasureTable MeasureTable::random(const HistorySpace& space, std::uint64_t seed,
                                  std::uint64_t denominator_bound) {
  if (denominator_bound == 0) throw MeasureError("denominator bound must be positive");
  std::uint64_t state = seed;
  std::vector<std::uint64_t> w(space.size());
  while (true) {
    std::uint64_t total = 0;
    for (auto& x : w) {
      x = splitmix64(state) % (denominator_bound + 1);
      total += x;
    }
    if (total > 0) break;
  }
  return from_integers(space, w);
}

std::uint64_t MeasureTable::mass(const Event& e) const {
  std::uint64_t sum = 0;
  const auto words = e.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::uint64_t b = words[i]; b != 0; b &= b - 1) {
      sum += numerators_[i * 64 + std::countr_zero(b)];
    }
  }
  return sum;
}

std::uint64_t MeasureTable::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& w : weights_) {
    for (char ch : to_string(w) + ",") {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

Rational prob(const MeasureTable& m, const Event& e) {
  if (m.has_integer_view()) {
    Rational q(from_u64(m.mass(e)), from_u64(m.denominator()));
    q.canonicalize();
    return q;
  }
  Rational sum = 0;
  for (auto h : e.members()) sum += m.weights()[h];
  return sum;
}

Rational cond_prob(const MeasureTable& m, const Event& e, const Event& given) {
  const Rational pg = prob(m, given);
  if (pg == 0) throw ZeroConditionError("conditioning on a probability-zero event");
  return Rational(prob(m, e & given) / pg);
}

bool is_correlated(const MeasureTable& m, const Event& a, const Event& b) {
  return prob(m, a & b) > prob(m, a) * prob(m, b);
}

namespace {

// Screening of A, B by one cell. Returns false and fills lhs/rhs on failure.
bool screens(const MeasureTable& m, const Event& a, const Event& b, const Event& c,
             ZeroScreener mode, std::string& lhs, std::string& rhs) {
  const Rational pc = prob(m, c);
  if (pc == 0) {
    if (mode == ZeroScreener::vacuous) return true;
    lhs = rhs = "undefined";
    return false;
  }
  const Rational l = prob(m, a & b & c) / pc;
  const Rational r = (prob(m, a & c) / pc) * (prob(m, b & c) / pc);
  if (l == r) return true;
  lhs = to_string(l);
  rhs = to_string(r);
  return false;
}

}  // namespace

CommonCauseVerdict is_common_cause(const MeasureTable& m, const Event& a, const Event& b,
                                   const Event& c, const CommonCauseOptions& opts) {
  CommonCauseVerdict v;
  const Event cc = c.complement();
  if (!is_correlated(m, a, b)) {
    v.failed_conditions.push_back(
        {"not-correlated", to_string(prob(m, a & b)), to_string(prob(m, a) * prob(m, b))});
  }
  std::string lhs, rhs;
  if (!screens(m, a, b, c, opts.zero_screener, lhs, rhs)) {
    v.failed_conditions.push_back({"screen-on-C", lhs, rhs});
  }
  if (!screens(m, a, b, cc, opts.zero_screener, lhs, rhs)) {
    v.failed_conditions.push_back({"screen-on-C^c", lhs, rhs});
  }
  auto relevance = [&](const Event& e, const char* name) {
    if (opts.relevance == Relevance::printed) {
      const Rational l = prob(m, e & c), r = prob(m, e & cc);
      if (!(l > r)) v.failed_conditions.push_back({name, to_string(l), to_string(r)});
      return;
    }
    const Rational pc = prob(m, c), pcc = prob(m, cc);
    if (pc == 0 || pcc == 0) {
      v.failed_conditions.push_back({name, "undefined", "undefined"});
      return;
    }
    const Rational l = prob(m, e & c) / pc, r = prob(m, e & cc) / pcc;
    if (!(l > r)) v.failed_conditions.push_back({name, to_string(l), to_string(r)});
  };
  relevance(a, "relevance-A");
  relevance(b, "relevance-B");
  v.qualifies = v.failed_conditions.empty();
  return v;
}

namespace {

void require_partition(const std::vector<Event>& partition, std::size_t universe) {
  if (partition.empty()) throw NotAPartitionError("partition has no cells");
  Event seen(universe);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const auto& cell = partition[i];
    if (cell.universe() != universe) throw NotAPartitionError("cell from another history space");
    if (cell.empty()) throw NotAPartitionError("cell " + std::to_string(i) + " is empty");
    if (!cell.disjoint(seen)) throw NotAPartitionError("cell " + std::to_string(i) + " overlaps an earlier cell");
    seen |= cell;
  }
  if (!seen.is_full()) throw NotAPartitionError("cells do not cover every history");
}

}  // namespace

CcsVerdict is_ccs(const MeasureTable& m, const Event& a, const Event& b,
                  const std::vector<Event>& partition, ZeroScreener zero_screener) {
  require_partition(partition, m.size());
  CcsVerdict v;
  v.correlated = is_correlated(m, a, b);
  if (!v.correlated) {
    v.failure = "not-correlated";
    v.lhs = to_string(prob(m, a & b));
    v.rhs = to_string(prob(m, a) * prob(m, b));
    return v;
  }
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (!screens(m, a, b, partition[i], zero_screener, v.lhs, v.rhs)) {
      v.failure = "screening";
      v.cell = i;
      return v;
    }
  }
  std::vector<std::optional<std::pair<Rational, Rational>>> cond(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const Rational pc = prob(m, partition[i]);
    if (pc == 0) continue;
    cond[i] = std::make_pair(Rational(prob(m, a & partition[i]) / pc),
                             Rational(prob(m, b & partition[i]) / pc));
  }
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (std::size_t j = i + 1; j < partition.size(); ++j) {
      if (!cond[i] || !cond[j]) continue;
      const Rational prod = (cond[i]->first - cond[j]->first) * (cond[i]->second - cond[j]->second);
      if (!(prod > 0)) {
        v.failure = "relevance";
        v.cell = i;
        v.other_cell = j;
        v.lhs = to_string(prod);
        v.rhs = "0";
        return v;
      }
    }
  }
  v.qualifies = true;
  return v;
}

std::vector<std::vector<Event>> find_ccs(const HistorySpace& space, const DomMap& dom,
                                         const MeasureTable& m, const Event& a, const Event& b,
                                         const FindCcsOptions& opts) {
  std::vector<std::vector<Event>> out;
  if (!is_correlated(m, a, b) || opts.max_size == 0) return out;
  const std::size_t n = space.size();

  if (opts.region_mode) {
    std::set<std::vector<Event>> seen;
    const int elems = space.elements();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems); ++mask) {
      const Region r(mask);
      std::uint64_t cells = 1;
      bool too_many = false;
      for (int i = 0; i < r.size() && !too_many; ++i) {
        cells *= space.alphabet();
        too_many = cells > opts.max_size;
      }
      if (too_many) continue;
      auto phi = full_specifications(space, dom, r);
      if (phi.size() > opts.max_size || !seen.insert(phi).second) continue;
      if (is_ccs(m, a, b, phi, opts.zero_screener).qualifies) out.push_back(std::move(phi));
    }
    return out;
  }

  if (n > opts.exhaustive_cap) {
    throw CapExceededError("exhaustive partition search needs |Omega| <= " +
                           std::to_string(opts.exhaustive_cap) + "; use region mode");
  }
  // Restricted growth strings: block[h] <= 1 + max(block[0..h-1]).
  std::vector<std::size_t> block(n, 0), high(n, 0);
  while (true) {
    const std::size_t blocks = high[n - 1] + 1;
    if (blocks <= opts.max_size) {
      std::vector<Event> cells(blocks, Event(n));
      for (std::size_t h = 0; h < n; ++h) cells[block[h]].insert(h);
      if (is_ccs(m, a, b, cells, opts.zero_screener).qualifies) out.push_back(std::move(cells));
    }
    // Next string in lexicographic order; cells beyond max_size are pruned.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 1;
    while (i >= 1 && !(block[i] <= high[i - 1] && block[i] + 1 < opts.max_size)) --i;
    if (i < 1) break;
    ++block[i];
    high[i] = std::max(high[i - 1], block[i]);
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j) {
      block[j] = 0;
      high[j] = high[i];
    }
  }
  return out;
}

}  // namespace causelab
