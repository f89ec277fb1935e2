#include "causelab/enumerate.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "causelab/errors.hpp"

namespace causelab {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

// Bit for pair (i, j), i < j, in column-major order with the first pair in
// the most significant position.
int pair_bit(int n, int i, int j) { return pair_count(n) - 1 - (j * (j - 1) / 2 + i); }

// Depth-first over linear extensions; `pos` is the element placed at each
// position so far. Columns are fixed as positions fill, so a branch stops
// as soon as its prefix exceeds the best code seen.
struct Canonicalizer {
  const Causet& c;
  int n;
  std::vector<int> pos;
  std::uint64_t best = ~std::uint64_t{0};
  Region placed;

  void run(std::uint64_t code, int filled_bits) {
    const int p = static_cast<int>(pos.size());
    if (p == n) {
      best = std::min(best, code);
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (placed.contains(e) || !c.predecessors(e).subset_of(placed)) continue;
      std::uint64_t next = code;
      for (int i = 0; i < p; ++i) {
        if (c.precedes(pos[i], e)) next |= std::uint64_t{1} << pair_bit(n, i, p);
      }
      const int bits = filled_bits + p;
      if (best != ~std::uint64_t{0} && bits > 0) {
        const int shift = pair_count(n) - bits;
        if ((next >> shift) > (best >> shift)) continue;
      }
      pos.push_back(e);
      placed.insert(e);
      run(next, bits);
      placed.erase(e);
      pos.pop_back();
    }
  }
};

}  // namespace

std::uint64_t canonical_code(const Causet& c) {
  Canonicalizer k{c, c.size(), {}, ~std::uint64_t{0}, Region{}};
  if (c.size() <= 1) return 0;
  k.run(0, 0);
  return k.best;
}

Causet causet_from_code(int n, std::uint64_t code) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> rel;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if ((code >> pair_bit(n, i, j)) & 1U) rel.emplace_back(i, j);
    }
  }
  return Causet::from_indices(std::move(names), rel);
}

std::string causet_fingerprint(const Causet& c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%d:%llx", c.size(),
                static_cast<unsigned long long>(canonical_code(c)));
  return buf;
}

std::vector<Causet> enumerate_causets(int n, int hard_limit) {
  if (n < 0 || n > hard_limit) {
    throw LimitError("causet enumeration supports 0.." + std::to_string(hard_limit) +
                     " elements, got " + std::to_string(n));
  }
  // Every poset arises from one on n-1 elements by adding a new maximal
  // element whose strict past is a down-set.
  std::set<std::uint64_t> level{0};
  for (int k = 1; k < n; ++k) {
    std::set<std::uint64_t> next;
    for (auto code : level) {
      const Causet base = causet_from_code(k, code);
      const auto rel = base.order();
      for (std::uint64_t down = 0; down < (std::uint64_t{1} << k); ++down) {
        const Region d(down);
        if (!past(base, d).subset_of(d)) continue;
        auto r = rel;
        for (int m : d.members()) r.emplace_back(m, k);
        std::vector<std::string> names;
        for (int i = 0; i <= k; ++i) names.push_back("e" + std::to_string(i));
        next.insert(canonical_code(Causet::from_indices(std::move(names), r)));
      }
    }
    level = std::move(next);
  }
  std::vector<Causet> out;
  if (n == 0) {
    out.push_back(Causet::from_indices({}, {}));
    return out;
  }
  out.reserve(level.size());
  for (auto code : level) out.push_back(causet_from_code(n, code));
  return out;
}

}  // namespace causelab
