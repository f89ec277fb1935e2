#include "causelab/principles.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <set>

#include "causelab/errors.hpp"

namespace causelab {

std::string_view principle_name(Principle p) {
  switch (p) {
    case Principle::so1: return "SO1";
    case Principle::so2: return "SO2";
    case Principle::fin_so1: return "FIN-SO1";
    case Principle::fin_so2: return "FIN-SO2";
  }
  return "?";
}

std::optional<Principle> parse_principle(std::string_view text) {
  if (text == "so1" || text == "SO1") return Principle::so1;
  if (text == "so2" || text == "SO2") return Principle::so2;
  if (text == "fin-so1" || text == "FIN-SO1") return Principle::fin_so1;
  if (text == "fin-so2" || text == "FIN-SO2") return Principle::fin_so2;
  return std::nullopt;
}

bool uses_mutual_past(Principle p) { return p == Principle::so1 || p == Principle::fin_so1; }
bool restricts_to_finite(Principle p) { return p == Principle::fin_so1 || p == Principle::fin_so2; }

Region screener_region(const Causet& c, Principle p, Region a, Region b) {
  return uses_mutual_past(p) ? mutual_past(c, a, b) : truncated_joint_past(c, a, b);
}

// ---------------------------------------------------------------- Model

std::vector<Event> sample_events(const HistorySpace& space, std::size_t count,
                                 std::uint64_t seed, int max_region) {
  std::uint64_t state = seed;
  auto next = [&state] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  const int n = space.elements();
  const int cap = std::min(max_region, n);
  std::vector<Event> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int size = cap <= 0 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(cap + 1));
    std::vector<int> order(n);
    for (int k = 0; k < n; ++k) order[k] = k;
    for (int k = n - 1; k > 0; --k) {
      std::swap(order[k], order[static_cast<int>(next() % static_cast<std::uint64_t>(k + 1))]);
    }
    Region r;
    for (int k = 0; k < size; ++k) r.insert(order[k]);
    const auto atoms = space.cylinders(r);
    Event e = space.empty_event();
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (k % 64 == 0) bits = next();
      if ((bits >> (k % 64)) & 1U) e |= atoms[k];
    }
    out.push_back(std::move(e));
  }
  return out;
}

Model::Model(HistorySpace space, DomMap dom, MeasureTable measure, AxiomCheck check)
    : space_(std::move(space)), dom_(std::move(dom)), measure_(std::move(measure)) {
  if (measure_.size() != space_.size()) {
    throw MeasureError("measure does not match the history space");
  }
  for (const auto& [e, r] : dom_.overrides()) {
    if (e.universe() != space_.size()) throw ModelFormatError("dom override from another space");
    space_.causet().check(r);
  }
  if (check == AxiomCheck::skip) return;
  DomAxiomOptions opts;
  if (space_.size() <= 4) {
    opts.family_size = 3;
  } else {
    opts.family_size = 2;
    opts.pool = sample_events(space_, 48, 0x5eedULL, 2);
    for (const auto& [e, r] : dom_.overrides()) opts.pool.push_back(e);
  }
  axioms_ = check_dom_axioms(space_, dom_, opts);
}

// ------------------------------------------------------- region sweeps

std::vector<std::pair<Region, Region>> spacelike_pairs(const Causet& c, int max_size,
                                                       bool finite_only) {
  std::vector<Region> regions;
  const std::uint64_t limit = std::uint64_t{1} << c.size();
  for (std::uint64_t m = 1; m < limit; ++m) {
    const Region r(m);
    if (r.size() > max_size) continue;
    if (finite_only && !is_causally_finite(c, r)) continue;
    regions.push_back(r);
  }
  std::vector<Region> pasts;
  pasts.reserve(regions.size());
  for (auto r : regions) pasts.push_back(past(c, r));
  std::vector<std::pair<Region, Region>> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (pasts[i].disjoint(regions[j]) && regions[i].disjoint(pasts[j])) {
        out.emplace_back(regions[i], regions[j]);
      }
    }
  }
  return out;
}

namespace {

// Whether some spacelike pair has a side larger than max_size. Exact up to
// 12 elements; beyond that any causet big enough to hold one is assumed to.
bool oversized_pairs_exist(const Causet& c, int max_size, bool finite_only) {
  const int n = c.size();
  if (n < max_size + 2) return false;
  if (n > 12) return true;
  const std::uint64_t all = c.elements().bits();
  for (std::uint64_t a = 1; a <= all; ++a) {
    const Region ra(a);
    if (finite_only && !is_causally_finite(c, ra)) continue;
    const Region pa = past(c, ra);
    const std::uint64_t rest = all & ~pa.bits();
    for (std::uint64_t b = rest; b != 0; b = (b - 1) & rest) {
      const Region rb(b);
      if (ra.size() <= max_size && rb.size() <= max_size) continue;
      if (!past(c, rb).disjoint(ra)) continue;
      if (finite_only && !is_causally_finite(c, rb)) continue;
      return true;
    }
  }
  return false;
}

using u128 = unsigned __int128;

mpz_class to_mpz(u128 v) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

std::uint64_t mass_and(const std::vector<std::uint64_t>& num, const Event& x, const Event& y) {
  std::uint64_t sum = 0;
  const auto wx = x.words(), wy = y.words();
  for (std::size_t i = 0; i < wx.size(); ++i) {
    for (std::uint64_t b = wx[i] & wy[i]; b != 0; b &= b - 1) {
      sum += num[i * 64 + std::countr_zero(b)];
    }
  }
  return sum;
}

struct Unit {
  Region a;
  Region b;
  std::size_t gamma_a;
  std::size_t gamma_b;
  std::size_t screeners;
};

struct UnitResult {
  CheckedCounts counts;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
};

void record(UnitResult& res, std::size_t cap, Witness w) {
  ++res.violations;
  if (res.witnesses.size() < cap) res.witnesses.push_back(std::move(w));
}

UnitResult run_unit(const Model& model, const Unit& unit, const std::vector<Event>& ga,
                    const std::vector<Event>& gb, const std::vector<Event>& cs,
                    const CheckOptions& opts) {
  UnitResult res;
  res.counts.region_pairs = 1;
  res.counts.event_pairs = ga.size() * gb.size();
  const auto& m = model.measure();
  const std::size_t cap = std::max<std::size_t>(1, opts.caps.max_witnesses);
  const std::uint64_t per_screener = ga.size() * gb.size();

  for (const auto& c : cs) {
    res.counts.screenings += per_screener;
    const bool null = m.has_integer_view() ? m.mass(c) == 0 : prob(m, c) == 0;
    if (null) {
      res.counts.vacuous_screenings += per_screener;
      if (opts.zero_screener == ZeroScreener::strict) {
        const Event omega = model.space().omega();
        record(res, cap, {"null-screener", omega, omega, unit.a, unit.b, c, "undefined", "undefined"});
      }
      continue;
    }
    if (m.has_integer_view()) {
      const auto& num = m.numerators();
      const std::uint64_t wc = m.mass(c);
      std::vector<Event> bc;
      std::vector<std::uint64_t> wbc;
      bc.reserve(gb.size());
      for (const auto& b : gb) {
        bc.push_back(b & c);
        wbc.push_back(m.mass(bc.back()));
      }
      for (const auto& a : ga) {
        const Event ac = a & c;
        const std::uint64_t wac = m.mass(ac);
        for (std::size_t j = 0; j < gb.size(); ++j) {
          const std::uint64_t wabc = mass_and(num, ac, bc[j]);
          if (static_cast<u128>(wabc) * wc == static_cast<u128>(wac) * wbc[j]) continue;
          Rational lhs(mpz_class(static_cast<unsigned long>(wabc)), mpz_class(static_cast<unsigned long>(wc)));
          Rational rhs(to_mpz(static_cast<u128>(wac) * wbc[j]), to_mpz(static_cast<u128>(wc) * wc));
          lhs.canonicalize();
          rhs.canonicalize();
          record(res, cap, {"screening", a, gb[j], unit.a, unit.b, c, to_string(lhs), to_string(rhs)});
        }
      }
    } else {
      const Rational pc = prob(m, c);
      for (const auto& a : ga) {
        const Rational pac = prob(m, a & c) / pc;
        for (const auto& b : gb) {
          const Rational lhs = prob(m, a & b & c) / pc;
          const Rational rhs = pac * (prob(m, b & c) / pc);
          if (lhs != rhs) {
            record(res, cap, {"screening", a, b, unit.a, unit.b, c, to_string(lhs), to_string(rhs)});
          }
        }
      }
    }
  }
  return res;
}

}  // namespace

Verdict check_principle(const Model& model, Principle which, const CheckOptions& opts,
                        const Execution& exec) {
  Verdict v;
  v.principle = which;
  const auto& c = model.causet();
  const auto& space = model.space();
  if (model.axioms() && !model.axioms()->passed()) {
    if (opts.require_axioms) throw Error("dom map violates its axioms; refusing to check");
    v.warnings.push_back("dom map violates its axioms");
  }

  const bool finite = restricts_to_finite(which);
  const auto pairs = spacelike_pairs(c, opts.caps.max_region_size, finite);
  v.capped = oversized_pairs_exist(c, opts.caps.max_region_size, finite);

  // Everything that can throw happens here, serially, before the sweep.
  std::map<Region, std::size_t> gamma_index;
  std::vector<std::vector<Event>> gammas;
  std::map<Region, std::size_t> phi_index;
  std::vector<std::vector<Event>> phis;
  std::vector<Unit> units;
  for (const auto& [a, b] : pairs) {
    bool skip = false;
    std::size_t idx[2];
    Region sides[2] = {a, b};
    for (int s = 0; s < 2; ++s) {
      auto it = gamma_index.find(sides[s]);
      if (it == gamma_index.end()) {
        if (gamma_size_bound(space, sides[s]) > opts.caps.max_algebra) {
          skip = true;
          break;
        }
        auto g = gamma(space, model.dom(), sides[s]);
        if (g.size() > opts.caps.max_algebra) {
          skip = true;
          break;
        }
        gammas.push_back(std::move(g));
        it = gamma_index.emplace(sides[s], gammas.size() - 1).first;
      }
      idx[s] = it->second;
    }
    const Region p = screener_region(c, which, a, b);
    auto pit = phi_index.find(p);
    if (!skip && pit == phi_index.end()) {
      try {
        phis.push_back(full_specifications(space, model.dom(), p));
        pit = phi_index.emplace(p, phis.size() - 1).first;
      } catch (const CapExceededError&) {
        skip = true;
      }
    }
    if (skip) {
      ++v.counts.skipped_region_pairs;
      v.capped = true;
      continue;
    }
    units.push_back({a, b, idx[0], idx[1], pit->second});
  }
  if (v.capped && opts.caps.strict) {
    throw CapExceededError(std::string(principle_name(which)) +
                           " sweep truncated by region or algebra caps");
  }

  std::vector<UnitResult> results(units.size());
  auto run = [&](std::size_t i) {
    const auto& u = units[i];
    results[i] = run_unit(model, u, gammas[u.gamma_a], gammas[u.gamma_b], phis[u.screeners], opts);
  };
  if (exec.backend == Backend::openmp && exec.workers > 1) {
    const auto count = static_cast<std::ptrdiff_t>(units.size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.workers)
    for (std::ptrdiff_t i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < units.size(); ++i) run(i);
  }

  const std::size_t cap = std::max<std::size_t>(1, opts.caps.max_witnesses);
  for (auto& r : results) {
    v.counts.region_pairs += r.counts.region_pairs;
    v.counts.event_pairs += r.counts.event_pairs;
    v.counts.screenings += r.counts.screenings;
    v.counts.vacuous_screenings += r.counts.vacuous_screenings;
    v.violations += r.violations;
    for (auto& w : r.witnesses) {
      if (v.witnesses.size() >= cap) break;
      v.witnesses.push_back(std::move(w));
    }
  }
  v.satisfied = v.violations == 0;
  return v;
}

bool replay_witness(const Model& model, Principle which, const Witness& w) {
  const auto& c = model.causet();
  const auto& space = model.space();
  const auto& m = model.measure();
  try {
    c.check(w.region_a);
    c.check(w.region_b);
  } catch (const Error&) {
    return false;
  }
  if (w.region_a.empty() || w.region_b.empty()) return false;
  if (!is_spacelike(c, w.region_a, w.region_b)) return false;
  if (restricts_to_finite(which) &&
      !(is_causally_finite(c, w.region_a) && is_causally_finite(c, w.region_b))) {
    return false;
  }
  const auto phi = full_specifications(space, model.dom(), screener_region(c, which, w.region_a, w.region_b));
  if (!std::binary_search(phi.begin(), phi.end(), w.screener)) return false;
  const Rational pc = prob(m, w.screener);
  if (w.kind == "null-screener") return pc == 0;
  if (w.kind != "screening") return false;
  if (!model.dom().of(space, w.a).subset_of(w.region_a)) return false;
  if (!model.dom().of(space, w.b).subset_of(w.region_b)) return false;
  if (pc == 0) return false;
  const Rational lhs = prob(m, w.a & w.b & w.screener) / pc;
  const Rational rhs = (prob(m, w.a & w.screener) / pc) * (prob(m, w.b & w.screener) / pc);
  return lhs != rhs && to_string(lhs) == w.lhs && to_string(rhs) == w.rhs;
}

ImplicationMatrix implication_matrix(const Model& model, const CheckOptions& opts,
                                     const Execution& exec) {
  ImplicationMatrix mx;
  for (std::size_t i = 0; i < kAllPrinciples.size(); ++i) {
    mx.verdicts[i] = check_principle(model, kAllPrinciples[i], opts, exec);
    mx.holds[i] = mx.verdicts[i].satisfied;
  }
  if ((mx.so1() && !mx.fin_so1()) || (mx.so2() && !mx.fin_so2())) {
    throw InternalConsistencyError(
        "an infinite principle holds while its finite restriction fails");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) mx.implies[i][j] = !mx.holds[i] || mx.holds[j];
  }
  return mx;
}

// ------------------------------------------------------- replication

namespace {

std::string describe(const HistorySpace& space, const Event& e) {
  std::string out = "{";
  bool first = true;
  for (auto h : e.members()) {
    if (!first) out += ",";
    out += space.key(h);
    first = false;
  }
  return out + "}";
}

// μ(E∩F|C) = μ(E|C) μ(F|C), cross-multiplied; a null C screens vacuously.
bool screened(const MeasureTable& m, const Event& e, const Event& f, const Event& c) {
  const Rational pc = prob(m, c);
  if (pc == 0) return true;
  return prob(m, e & f & c) * pc == prob(m, e & c) * prob(m, f & c);
}

void fail_step(StepResult& s, std::string witness) {
  if (s.passed) s.witness = std::move(witness);
  s.passed = false;
}

}  // namespace

ReplicationReport replicate_so1_to_so2(const Model& model, Region a, Region b,
                                       const CheckOptions& opts) {
  const auto& c = model.causet();
  const auto& space = model.space();
  const auto& dom = model.dom();
  const auto& m = model.measure();
  if (!is_spacelike(c, a, b)) throw NotSpacelikeError("replication needs spacelike regions");

  ReplicationReport rep;
  const auto flanks = flank_regions(c, a, b);
  rep.flank_x = flanks.x;
  rep.flank_y = flanks.y;
  rep.mutual = mutual_past(c, a, b);
  rep.truncated_joint = truncated_joint_past(c, a, b);

  const auto ga = gamma(space, dom, a, opts.caps.max_algebra);
  const auto gb = gamma(space, dom, b, opts.caps.max_algebra);
  const auto phi_x = full_specifications(space, dom, rep.flank_x);
  const auto phi_y = full_specifications(space, dom, rep.flank_y);
  const auto phi_c = full_specifications(space, dom, rep.mutual);
  const auto phi_p2 = full_specifications(space, dom, rep.truncated_joint);

  for (const auto& cc : phi_c) {
    for (const auto& ea : ga) {
      for (const auto& eb : gb) {
        if (!screened(m, ea, eb, cc)) {
          rep.reason = "SO1 fails on the pair: " + describe(space, ea) + " vs " +
                       describe(space, eb) + " given " + describe(space, cc);
          return rep;
        }
      }
    }
  }
  rep.applicable = true;

  for (const auto& x : phi_x) {
    for (const auto& y : phi_y) {
      for (const auto& cc : phi_c) {
        const Event d = x & y & cc;
        ++rep.step3.checked;
        if (d.empty() || !std::binary_search(phi_p2.begin(), phi_p2.end(), d)) {
          fail_step(rep.step3, "C∩X∩Y = " + describe(space, d) + " is not in Φ(P2)");
        }
        ++rep.step1.checked;
        if (!screened(m, x, y, cc)) {
          fail_step(rep.step1, "(X, Y) not screened by " + describe(space, cc));
        }
        const Rational pd = prob(m, d);
        for (const auto& ea : ga) {
          const Event ax = ea & x;
          for (const auto& eb : gb) {
            const Event by = eb & y;
            rep.step1.checked += 3;
            if (!screened(m, ax, by, cc) || !screened(m, ax, eb, cc) || !screened(m, ea, by, cc)) {
              fail_step(rep.step1, "derived pair for A=" + describe(space, ea) + ", B=" +
                                       describe(space, eb) + " not screened by " +
                                       describe(space, cc));
            }
            if (pd == 0) {
              ++rep.step2.skipped;
              continue;
            }
            ++rep.step2.checked;
            if (prob(m, ea & d) * prob(m, eb & d) != prob(m, ea & eb & d) * pd) {
              fail_step(rep.step2, "factorization fails for A=" + describe(space, ea) + ", B=" +
                                       describe(space, eb) + " given " + describe(space, d));
            }
          }
        }
      }
    }
  }
  return rep;
}

GapReport gap_closure_check(const Model& model, Region a, Region b) {
  const auto& c = model.causet();
  const auto& space = model.space();
  const auto& dom = model.dom();
  if (!is_spacelike(c, a, b)) throw NotSpacelikeError("gap check needs spacelike regions");
  const auto flanks = flank_regions(c, a, b);
  const auto phi_x = full_specifications(space, dom, flanks.x);
  const auto phi_y = full_specifications(space, dom, flanks.y);
  const auto phi_c = full_specifications(space, dom, mutual_past(c, a, b));
  const auto phi_p2 = full_specifications(space, dom, truncated_joint_past(c, a, b));

  std::set<Event> composed;
  for (const auto& x : phi_x) {
    for (const auto& y : phi_y) {
      for (const auto& cc : phi_c) {
        Event d = x & y & cc;
        if (!d.empty()) composed.insert(std::move(d));
      }
    }
  }
  GapReport rep;
  rep.composed = composed.size();
  rep.full_specs = phi_p2.size();
  std::set_difference(phi_p2.begin(), phi_p2.end(), composed.begin(), composed.end(),
                      std::back_inserter(rep.missing));
  std::set_difference(composed.begin(), composed.end(), phi_p2.begin(), phi_p2.end(),
                      std::back_inserter(rep.extra));
  rep.equal = rep.missing.empty() && rep.extra.empty();
  return rep;
}

}  // namespace causelab
