#pragma once

// Brute-force reference implementations. They work straight from the
// definitions on small inputs and share no code with the library beyond the
// Causet, HistorySpace and Event containers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "causelab/causet.hpp"
#include "causelab/histories.hpp"
#include "causelab/measure.hpp"

namespace oracle {

using causelab::Causet;
using causelab::Event;
using causelab::HistorySpace;
using causelab::Region;

using Matrix = std::vector<std::vector<bool>>;

inline bool is_strict_order(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j]) continue;
      if (m[j][i]) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (m[j][k] && !m[i][k]) return false;
      }
    }
  }
  return true;
}

// Full n*n matrix relabelled by perm, read row by row as a bit string.
inline std::vector<bool> relabelled(const Matrix& m, const std::vector<int>& perm) {
  const std::size_t n = m.size();
  std::vector<bool> bits(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bits[perm[i] * n + perm[j]] = m[i][j];
  }
  return bits;
}

inline std::vector<bool> min_form(const Matrix& m) {
  std::vector<int> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best = relabelled(m, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    best = std::min(best, relabelled(m, perm));
  }
  return best;
}

// Every poset has a natural labelling (i < j in the order only if i < j as
// integers), so it is enough to try each subset of the upper triangle, keep
// the strict orders and deduplicate over all n! relabellings.
inline std::size_t count_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::vector<bool>> seen;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs.size()); ++code) {
    Matrix m(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if ((code >> k) & 1U) m[pairs[k].first][pairs[k].second] = true;
    }
    if (is_strict_order(m)) seen.insert(min_form(m));
  }
  return seen.size();
}

inline Matrix matrix_of(const Causet& c) {
  Matrix m(c.size(), std::vector<bool>(c.size(), false));
  for (int i = 0; i < c.size(); ++i) {
    for (int j = 0; j < c.size(); ++j) m[i][j] = c.precedes(i, j);
  }
  return m;
}

inline bool isomorphic(const Causet& a, const Causet& b) {
  return a.size() == b.size() && min_form(matrix_of(a)) == min_form(matrix_of(b));
}

// Region operations unrolled element by element.
inline Region past(const Causet& c, Region r) {
  Region out;
  for (int y = 0; y < c.size(); ++y) {
    for (int x = 0; x < c.size(); ++x) {
      if (r.contains(x) && (x == y || c.precedes(y, x))) out.insert(y);
    }
  }
  return out;
}

inline bool related(const Causet& c, int x, int y) {
  return x == y || c.precedes(x, y) || c.precedes(y, x);
}

inline bool spacelike(const Causet& c, Region a, Region b) {
  for (int x : a.members()) {
    for (int y : b.members()) {
      if (oracle::related(c, x, y)) return false;
    }
  }
  return true;
}

inline Region complement(const Causet& c, Region r) {
  Region out;
  for (int y = 0; y < c.size(); ++y) {
    bool free = true;
    for (int x : r.members()) free = free && !oracle::related(c, x, y);
    if (free) out.insert(y);
  }
  return out;
}

inline Region mutual_past(const Causet& c, Region a, Region b) {
  return oracle::past(c, a) & oracle::past(c, b);
}

inline Region truncated_joint_past(const Causet& c, Region a, Region b) {
  return (oracle::past(c, a) | oracle::past(c, b)) - (a | b);
}

inline bool causally_finite(const Causet& c, Region r) {
  const Region closure = oracle::complement(c, oracle::complement(c, r));
  return !(oracle::past(c, closure) - closure).empty();
}

// Canonical dom by the flip test, history by history.
inline Region dom(const HistorySpace& s, const Event& e) {
  Region out;
  for (std::size_t h = 0; h < s.size(); ++h) {
    for (int el = 0; el < s.elements(); ++el) {
      for (int v = 0; v < s.alphabet(); ++v) {
        if (e.contains(h) != e.contains(s.with_value(h, el, v))) out.insert(el);
      }
    }
  }
  return out;
}

inline Event event_from_mask(const HistorySpace& s, std::uint64_t mask) {
  Event e = s.empty_event();
  for (std::size_t h = 0; h < s.size(); ++h) {
    if ((mask >> h) & 1U) e.insert(h);
  }
  return e;
}

// All events with dom ⊆ r, by filtering the whole power set of Ω.
inline std::vector<Event> gamma(const HistorySpace& s, Region r) {
  std::vector<Event> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.size()); ++m) {
    Event e = event_from_mask(s, m);
    if (oracle::dom(s, e).subset_of(r)) out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Nonempty F with dom(F) ⊆ r, and F ⊆ X or F ⊆ X^c for every X ∈ Γ(r).
inline std::vector<Event> full_specs(const HistorySpace& s, Region r) {
  const auto g = oracle::gamma(s, r);
  std::vector<Event> out;
  for (const auto& f : g) {
    if (f.empty()) continue;
    bool ok = true;
    for (const auto& x : g) {
      ok = ok && (f.subset_of(x) || f.disjoint(x));
    }
    if (ok) out.push_back(f);
  }
  return out;
}

inline mpq_class mass(const std::vector<mpq_class>& w, const Event& e) {
  mpq_class total = 0;
  for (std::size_t h = 0; h < w.size(); ++h) {
    if (e.contains(h)) total += w[h];
  }
  return total;
}

// Number of screening failures for every spacelike pair of nonempty
// regions with at most max_size elements each, using Φ(mutual past) when
// mutual is true and Φ(truncated joint past) otherwise. Null screeners are
// skipped.
inline std::size_t screening_failures(const HistorySpace& s, const std::vector<mpq_class>& w,
                                      bool mutual, bool finite_only, int max_size) {
  const Causet& c = s.causet();
  std::size_t failures = 0;
  const std::uint64_t full = (std::uint64_t{1} << c.size()) - 1;
  for (std::uint64_t am = 1; am <= full; ++am) {
    for (std::uint64_t bm = am + 1; bm <= full; ++bm) {
      const Region a(am), b(bm);
      if (a.size() > max_size || b.size() > max_size) continue;
      if (!a.disjoint(b) || !oracle::spacelike(c, a, b)) continue;
      if (finite_only && (!oracle::causally_finite(c, a) || !oracle::causally_finite(c, b))) continue;
      const Region p = mutual ? oracle::mutual_past(c, a, b) : oracle::truncated_joint_past(c, a, b);
      const auto screeners = oracle::full_specs(s, p);
      for (const auto& ea : oracle::gamma(s, a)) {
        for (const auto& eb : oracle::gamma(s, b)) {
          for (const auto& cc : screeners) {
            const mpq_class mc = oracle::mass(w, cc);
            if (mc == 0) continue;
            const mpq_class lhs = oracle::mass(w, ea & eb & cc) / mc;
            const mpq_class rhs = (oracle::mass(w, ea & cc) / mc) * (oracle::mass(w, eb & cc) / mc);
            if (lhs != rhs) ++failures;
          }
        }
      }
    }
  }
  return failures;
}

}  // namespace oracle
