#include <doctest.h>

#include <random>
#include <set>

#include "causelab/enumerate.hpp"
#include "causelab/errors.hpp"
#include "oracles.hpp"

using namespace causelab;

namespace {

// Same order under the element permutation perm.
Causet relabel(const Causet& c, const std::vector<int>& perm) {
  std::vector<std::string> names(c.size());
  for (int i = 0; i < c.size(); ++i) names[perm[i]] = c.name(i);
  std::vector<std::pair<int, int>> rel;
  for (const auto& [x, y] : c.order()) rel.emplace_back(perm[x], perm[y]);
  return Causet::from_indices(names, rel);
}

}  // namespace

TEST_CASE("counts match the brute-force enumerator") {
  for (int n = 1; n <= 5; ++n) {
    INFO("n = ", n);
    CHECK(enumerate_causets(n).size() == oracle::count_posets(n));
  }
}

TEST_CASE("counts at six and seven elements") {
  CHECK(enumerate_causets(6).size() == 318);
  CHECK(enumerate_causets(7).size() == 2045);
}

TEST_CASE("enumeration is pairwise non-isomorphic and sorted") {
  for (int n = 1; n <= 5; ++n) {
    const auto all = enumerate_causets(n);
    std::set<std::vector<bool>> forms;
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      forms.insert(oracle::min_form(oracle::matrix_of(all[i])));
      const std::uint64_t code = canonical_code(all[i]);
      if (i > 0) CHECK(code > last);
      last = code;
    }
    CHECK(forms.size() == all.size());
  }
}

TEST_CASE("canonical code is a relabelling invariant") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; ++n) {
    for (const auto& c : enumerate_causets(n)) {
      const std::uint64_t code = canonical_code(c);
      CHECK(canonical_code(causet_from_code(n, code)) == code);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int t = 0; t < 4; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        const Causet r = relabel(c, perm);
        REQUIRE(oracle::isomorphic(r, c));
        REQUIRE(canonical_code(r) == code);
      }
    }
  }
}

TEST_CASE("named causets") {
  CHECK(causet_fingerprint(causets::anti2()) == causet_fingerprint(Causet::build({"p", "q"}, {})));
  CHECK(causet_fingerprint(causets::chain2()) != causet_fingerprint(causets::anti2()));
  CHECK(causet_fingerprint(causets::diamond()).rfind("4:", 0) == 0);
}

TEST_CASE("hard limit") {
  CHECK_THROWS_AS(enumerate_causets(8), LimitError);
  CHECK_THROWS_AS(enumerate_causets(5, 4), LimitError);
  CHECK(enumerate_causets(0).size() <= 1);
}
