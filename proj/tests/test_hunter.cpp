#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "causelab/errors.hpp"
#include "causelab/hunter.hpp"
#include "causelab/model_io.hpp"

using namespace causelab;
using io::json;

namespace {

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

std::string run(const SearchConfig& cfg, const HuntOptions& opts = {}) {
  std::ostringstream out;
  hunt(cfg, out, opts);
  return out.str();
}

}  // namespace

TEST_CASE("sampled measures") {
  const HistorySpace s(causets::diamond(), 2);
  const auto one = sample_measures(s, 1, 3, 10);
  REQUIRE(one.size() == 1);
  CHECK(one.front() == MeasureTable::uniform(s));

  const auto a = sample_measures(s, 5, 42, 10);
  const auto b = sample_measures(s, 5, 42, 10);
  CHECK(a == b);
  for (const auto& m : a) {
    Rational total = 0;
    for (const auto& w : m.weights()) total += w;
    CHECK(total == 1);
  }
  CHECK_THROWS(sample_measures(s, 0, 1, 10));
}

TEST_CASE("hunt finds the ANTI2 separation when the diagonal measure is included") {
  SearchConfig cfg;
  cfg.max_elements = 2;
  cfg.include_diagonal = true;
  const auto out = lines(run(cfg));
  REQUIRE(out.size() == 2);
  const json& f = out.front();
  CHECK(f["holds"] == json{{"SO1", false}, {"SO2", false}, {"FIN-SO1", true}, {"FIN-SO2", true}});
  CHECK(f["tags"] == json::array({"separates finite/infinite"}));
  CHECK(out.back()["summary"]["findings"] == 1);
  CHECK(out.back()["summary"]["consistency_failures"] == 0);
  CHECK(out.back()["summary"]["witness_failures"] == 0);
}

TEST_CASE("uniform measures alone give no findings") {
  SearchConfig cfg;
  cfg.max_elements = 2;
  const auto out = lines(run(cfg));
  REQUIRE(out.size() == 1);
  const json& s = out.front()["summary"];
  CHECK(s["findings"] == 0);
  CHECK(s["truth_table"] == json{{"SO1=1 SO2=1 FIN-SO1=1 FIN-SO2=1", 3}});
}

TEST_CASE("findings replay to the same matrix") {
  SearchConfig cfg;
  cfg.max_elements = 3;
  cfg.measures_per_model = 3;
  cfg.seed = 2;
  cfg.include_diagonal = true;
  const auto out = lines(run(cfg));
  std::set<std::pair<std::string, std::string>> seen;
  REQUIRE(out.size() > 1);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    const json& f = out[i];
    CHECK(seen.emplace(f["causet"], f["measure"]).second);
    const Model m = io::model_from_json(f["model"]);
    const auto mx = implication_matrix(m, cfg.check);
    for (std::size_t p = 0; p < 4; ++p) {
      CHECK(f["holds"][std::string(principle_name(kAllPrinciples[p]))] == mx.holds[p]);
    }
  }
}

TEST_CASE("worker count does not change the report") {
  SearchConfig cfg;
  cfg.max_elements = 3;
  cfg.measures_per_model = 4;
  cfg.seed = 7;
  const std::string serial = run(cfg);
  for (int workers : {2, 4, 8}) {
    SearchConfig par = cfg;
    par.exec = {Backend::openmp, workers};
    CHECK(run(par) == serial);
  }
  SearchConfig other = cfg;
  other.seed = 8;
  CHECK(run(other) != serial);
}

TEST_CASE("filters") {
  SearchConfig cfg;
  cfg.max_elements = 3;
  cfg.filters.require_flank = true;
  const auto s = lines(run(cfg)).back()["summary"];
  CHECK(s["causets"] == 8);
  // Among causets up to three elements only q < a with a free b has a
  // nonempty flank region.
  CHECK(s["causets_filtered"] == 7);
}

TEST_CASE("checkpoint and resume") {
  const auto dir = std::filesystem::temp_directory_path() / "causelab_hunt_test";
  std::filesystem::create_directories(dir);
  const std::string ckpt = (dir / "ckpt.json").string();
  std::filesystem::remove(ckpt);

  SearchConfig cfg;
  cfg.max_elements = 3;
  cfg.measures_per_model = 3;
  cfg.seed = 1;
  cfg.include_diagonal = true;
  const auto full = lines(run(cfg));

  HuntOptions first;
  first.checkpoint = ckpt;
  first.batch = 3;
  first.max_batches = 1;
  auto part1 = lines(run(cfg, first));
  CHECK(part1.back()["summary"]["next_index"] == 3);

  HuntOptions rest;
  rest.checkpoint = ckpt;
  rest.batch = 3;
  auto part2 = lines(run(cfg, rest));

  std::vector<json> joined(part1.begin(), part1.end() - 1);
  joined.insert(joined.end(), part2.begin(), part2.end());
  CHECK(joined == full);

  SearchConfig changed = cfg;
  changed.seed = 99;
  std::ostringstream sink;
  CHECK_THROWS_AS(hunt(changed, sink, rest), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config digest ignores the worker count") {
  SearchConfig a, b;
  b.exec = {Backend::openmp, 8};
  CHECK(config_digest(a) == config_digest(b));
  b.seed = 3;
  CHECK(config_digest(a) != config_digest(b));
}
