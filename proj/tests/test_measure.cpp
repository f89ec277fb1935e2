#include <doctest.h>

#include "causelab/errors.hpp"
#include "causelab/measure.hpp"
#include "oracles.hpp"

using namespace causelab;

namespace {

struct Perf {
  HistorySpace s{causets::anti2(), 2};
  MeasureTable m = MeasureTable::diagonal(s);
  Event a = s.cylinder({{0, 1}});
  Event b = s.cylinder({{1, 1}});
};

}  // namespace

TEST_CASE("rationals") {
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK(to_string(Rational(0)) == "0");
  CHECK(to_string(Rational(6, 2)) == "3");
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK_THROWS(parse_rational("1."));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("measure tables validate their weights") {
  const HistorySpace s(causets::anti2(), 2);
  CHECK_THROWS_AS(MeasureTable(s, {Rational(1, 2), Rational(1, 2)}), MeasureError);
  CHECK_THROWS_AS(MeasureTable(s, {1, 1, -1, 0}), MeasureError);
  CHECK_THROWS_AS(MeasureTable(s, {Rational(1, 4), Rational(1, 4), Rational(1, 4), 0}), MeasureError);
  const auto u = MeasureTable::uniform(s);
  CHECK(prob(u, s.omega()) == Rational(1));
  CHECK(u.has_integer_view());
  CHECK(u.denominator() == 4);
  CHECK(u.mass(s.cylinder({{0, 1}})) == 2);
  CHECK(MeasureTable::from_integers(s, {1, 0, 0, 1}) == MeasureTable::diagonal(s));
}

TEST_CASE("random measures are exact and seeded") {
  const HistorySpace s(causets::diamond(), 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = MeasureTable::random(s, seed, 10);
    Rational total = 0;
    for (const auto& w : m.weights()) {
      CHECK(w >= 0);
      total += w;
    }
    CHECK(total == 1);
    CHECK(m == MeasureTable::random(s, seed, 10));
  }
  CHECK_FALSE(MeasureTable::random(s, 1, 10) == MeasureTable::random(s, 2, 10));
}

TEST_CASE("conditional probability") {
  Perf p;
  CHECK(cond_prob(p.m, p.a, p.b) == 1);
  CHECK(cond_prob(p.m, p.a, p.s.omega()) == Rational(1, 2));
  CHECK_THROWS_AS(cond_prob(p.m, p.a, p.s.empty_event()), ZeroConditionError);
  const Event off = p.s.cylinder({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(cond_prob(p.m, p.a, off), ZeroConditionError);
}

TEST_CASE("correlation") {
  Perf p;
  CHECK(is_correlated(p.m, p.a, p.b));
  CHECK_FALSE(is_correlated(MeasureTable::uniform(p.s), p.a, p.b));
  CHECK_FALSE(is_correlated(p.m, p.a, p.s.omega()));
}

TEST_CASE("common causes") {
  Perf p;
  SUBCASE("an event is a common cause of itself with itself") {
    const auto v = is_common_cause(p.m, p.a, p.a, p.a);
    CHECK(v.qualifies);
  }
  SUBCASE("the value at x explains the perfect correlation") {
    CHECK(is_common_cause(p.m, p.a, p.b, p.a).qualifies);
    CommonCauseOptions conditional;
    conditional.relevance = Relevance::conditional;
    CHECK(is_common_cause(p.m, p.a, p.b, p.a, conditional).qualifies);
  }
  SUBCASE("omega does not screen") {
    const auto v = is_common_cause(p.m, p.a, p.b, p.s.omega());
    CHECK_FALSE(v.qualifies);
    bool screen_failed = false;
    for (const auto& f : v.failed_conditions) screen_failed |= f.condition == "screen-on-C";
    CHECK(screen_failed);
  }
}

TEST_CASE("common cause systems") {
  Perf p;
  const std::vector<Event> by_x{p.s.cylinder({{0, 0}}), p.s.cylinder({{0, 1}})};
  CHECK(is_ccs(p.m, p.a, p.b, by_x).qualifies);
  const auto whole = is_ccs(p.m, p.a, p.b, {p.s.omega()});
  CHECK_FALSE(whole.qualifies);
  CHECK(whole.failure == std::optional<std::string>("screening"));

  const auto u = MeasureTable::uniform(p.s);
  const auto nc = is_ccs(u, p.a, p.b, by_x);
  CHECK_FALSE(nc.qualifies);
  CHECK(nc.failure == std::optional<std::string>("not-correlated"));

  CHECK_THROWS_AS(is_ccs(p.m, p.a, p.b, {p.a, p.a}), NotAPartitionError);
  CHECK_THROWS_AS(is_ccs(p.m, p.a, p.b, {p.a}), NotAPartitionError);
}

TEST_CASE("searching for common cause systems") {
  Perf p;
  const DomMap dom;
  const std::vector<Event> by_x{p.s.cylinder({{0, 0}}), p.s.cylinder({{0, 1}})};
  FindCcsOptions opts;
  opts.max_size = 2;
  auto found = find_ccs(p.s, dom, p.m, p.a, p.b, opts);
  CHECK(std::find(found.begin(), found.end(), by_x) != found.end());

  opts.max_size = 1;
  CHECK(find_ccs(p.s, dom, p.m, p.a, p.b, opts).empty());

  opts.max_size = 2;
  CHECK(find_ccs(p.s, dom, MeasureTable::uniform(p.s), p.a, p.b, opts).empty());

  // Every partition found really qualifies, and a brute-force count over
  // all 15 partitions of the four histories agrees.
  opts.max_size = 4;
  found = find_ccs(p.s, dom, p.m, p.a, p.b, opts);
  std::size_t brute = 0;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) {
      for (std::uint64_t c = 0; c < 4; ++c) {
        // Restricted growth strings: history 0 in block 0.
        const std::uint64_t blocks[4] = {0, a, b, c};
        const bool rgs = a <= 1 && b <= a + 1 && c <= std::max(a, b) + 1;
        if (!rgs) continue;
        std::vector<Event> part(std::max({a, b, c}) + 1, p.s.empty_event());
        for (std::size_t h = 0; h < 4; ++h) part[blocks[h]].insert(h);
        if (is_ccs(p.m, p.a, p.b, part).qualifies) ++brute;
      }
    }
  }
  CHECK(found.size() == brute);
  for (const auto& part : found) CHECK(is_ccs(p.m, p.a, p.b, part).qualifies);

  opts.region_mode = true;
  found = find_ccs(p.s, dom, p.m, p.a, p.b, opts);
  CHECK(std::find(found.begin(), found.end(), by_x) != found.end());
}

TEST_CASE("integer view matches exact arithmetic") {
  const HistorySpace s(causets::w_causet(), 2);
  const auto m = MeasureTable::random(s, 9, 7);
  REQUIRE(m.has_integer_view());
  for (std::uint64_t mask = 0; mask < 256; mask += 7) {
    const Event e = oracle::event_from_mask(s, mask);
    Rational q(m.mass(e), m.denominator());
    q.canonicalize();
    CHECK(q == oracle::mass(m.weights(), e));
  }
}
