#include <doctest.h>

#include "causelab/causet.hpp"
#include "causelab/enumerate.hpp"
#include "causelab/errors.hpp"
#include "oracles.hpp"

using namespace causelab;

namespace {

Region R(const Causet& c, std::vector<std::string> names) { return c.region(names); }

}  // namespace

TEST_CASE("build closes the relation") {
  const Causet chain = Causet::build({"u", "v"}, {{"u", "v"}});
  CHECK(chain.order() == std::vector<std::pair<int, int>>{{0, 1}});

  const Causet d = causets::diamond();
  CHECK(d.precedes(d.index_of("p"), d.index_of("t")));
  CHECK(d.order().size() == 5);
  CHECK_FALSE(d.precedes(d.index_of("a"), d.index_of("b")));
}

TEST_CASE("build rejects bad input") {
  CHECK_THROWS_AS(Causet::build({"u", "v"}, {{"u", "v"}, {"v", "u"}}), CycleError);
  try {
    Causet::build({"u", "v"}, {{"u", "v"}, {"v", "u"}});
  } catch (const CycleError& e) {
    CHECK(std::string(e.what()).find("u < v < u") != std::string::npos);
  }
  CHECK_THROWS_AS(Causet::build({"u", "u"}, {}), DuplicateElementError);
  CHECK_THROWS_AS(Causet::build({"u"}, {{"u", "w"}}), UnknownElementError);
  CHECK_THROWS_AS(Causet::build({"u"}, {{"u", "u"}}), CycleError);
  CHECK_THROWS_AS(causets::anti2().check(Region::of({5})), ForeignRegionError);
}

TEST_CASE("past") {
  const Causet d = causets::diamond();
  CHECK(past(d, R(d, {"t"})) == d.elements());
  CHECK(past(d, Region{}).empty());
  const Causet a = causets::anti2();
  CHECK(past(a, R(a, {"x"})) == R(a, {"x"}));
}

TEST_CASE("spacelike separation") {
  const Causet d = causets::diamond();
  CHECK(is_spacelike(d, R(d, {"a"}), R(d, {"b"})));
  CHECK_FALSE(is_spacelike(d, R(d, {"a"}), R(d, {"a"})));
  const Causet c = causets::chain2();
  CHECK_FALSE(is_spacelike(c, R(c, {"u"}), R(c, {"v"})));
}

TEST_CASE("mutual and truncated joint pasts") {
  const Causet d = causets::diamond();
  CHECK(mutual_past(d, R(d, {"a"}), R(d, {"b"})) == R(d, {"p"}));
  CHECK(truncated_joint_past(d, R(d, {"a"}), R(d, {"b"})) == R(d, {"p"}));
  CHECK(truncated_joint_past(d, R(d, {"a"}), R(d, {"t"})) == R(d, {"p", "b"}));
  const Causet a = causets::anti2();
  CHECK(mutual_past(a, R(a, {"x"}), R(a, {"y"})).empty());
  CHECK(truncated_joint_past(a, R(a, {"x"}), R(a, {"y"})).empty());
}

TEST_CASE("causal complement and closure") {
  const Causet d = causets::diamond();
  CHECK(causal_complement(d, R(d, {"a"})) == R(d, {"b"}));
  CHECK(causal_complement(d, R(d, {"p"})).empty());
  CHECK(causal_complement(d, Region{}) == d.elements());
  CHECK(causal_closure(d, R(d, {"a"})) == R(d, {"a"}));
  const Causet c3 = causets::chain3();
  CHECK(causal_closure(c3, R(c3, {"c1"})) == c3.elements());
  const Causet a = causets::anti2();
  CHECK(causal_closure(a, R(a, {"x"})) == R(a, {"x"}));
}

TEST_CASE("causal finiteness") {
  const Causet d = causets::diamond();
  CHECK(is_causally_finite(d, R(d, {"a"})));
  CHECK_FALSE(is_causally_finite(d, d.elements()));
  const Causet a = causets::anti2();
  CHECK_FALSE(is_causally_finite(a, R(a, {"x"})));
  CHECK_FALSE(is_causally_finite(a, a.elements()));
}

TEST_CASE("flank regions") {
  const Causet d = causets::diamond();
  auto f = flank_regions(d, R(d, {"a"}), R(d, {"b"}));
  CHECK(f.x.empty());
  CHECK(f.y.empty());
  const Causet w = causets::w_causet();
  f = flank_regions(w, R(w, {"a"}), R(w, {"b"}));
  CHECK(f.x == R(w, {"q"}));
  CHECK(f.y.empty());
  const Causet a = causets::anti2();
  f = flank_regions(a, R(a, {"x"}), R(a, {"y"}));
  CHECK(f.x.empty());
  CHECK(f.y.empty());
}

TEST_CASE("crucial identity on named causets") {
  const Causet d = causets::diamond();
  auto rep = verify_crucial_identity(d, R(d, {"a"}), R(d, {"b"}));
  CHECK(rep.holds());
  CHECK(rep.mutual == R(d, {"p"}));
  CHECK(rep.truncated_joint == R(d, {"p"}));

  const Causet w = causets::w_causet();
  rep = verify_crucial_identity(w, R(w, {"a"}), R(w, {"b"}));
  CHECK(rep.holds());
  CHECK(rep.extended_a == R(w, {"q", "a"}));
  CHECK(rep.truncated_joint.empty());
  CHECK(rep.mutual.empty());

  CHECK_THROWS_AS(verify_crucial_identity(d, R(d, {"a"}), R(d, {"t"})), NotSpacelikeError);
}

TEST_CASE("region operations agree with the element-wise oracle") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& c : enumerate_causets(n)) {
      const std::uint64_t full = c.elements().bits();
      for (std::uint64_t am = 0; am <= full; ++am) {
        const Region a(am);
        REQUIRE(past(c, a) == oracle::past(c, a));
        REQUIRE(causal_complement(c, a) == oracle::complement(c, a));
        REQUIRE(is_causally_finite(c, a) == oracle::causally_finite(c, a));
        for (std::uint64_t bm = 0; bm <= full; ++bm) {
          const Region b(bm);
          const bool sl = !a.empty() && !b.empty() && a.disjoint(b);
          if (sl) REQUIRE(is_spacelike(c, a, b) == oracle::spacelike(c, a, b));
          REQUIRE(mutual_past(c, a, b) == oracle::mutual_past(c, a, b));
          REQUIRE(truncated_joint_past(c, a, b) == oracle::truncated_joint_past(c, a, b));
        }
      }
    }
  }
}
