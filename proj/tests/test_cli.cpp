#include <doctest.h>

#include <sstream>

#include "causelab/cli.hpp"
#include "causelab/model_io.hpp"

using causelab::run_cli;
using causelab::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const char* name) { return std::string(CAUSELAB_MODELS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("check reports the omega screener on ANTI2 with perfect correlation") {
  const auto r = cli({"check", "--model", model("anti2_perf.json"), "--principle", "so2"});
  CHECK(r.code == 1);
  CHECK(r.err.empty());
  const json j = json::parse(r.out);
  CHECK(j["subset_convention"] == "non-strict");
  CHECK(j["result"]["satisfied"] == false);
  bool found = false;
  for (const auto& w : j["result"]["witnesses"]) {
    if (w["A"] == json{"10", "11"} && w["B"] == json{"01", "11"}) {
      found = true;
      CHECK(w["screener"].size() == 4);
      CHECK(w["lhs"] == "1/2");
      CHECK(w["rhs"] == "1/4");
    }
  }
  CHECK(found);

  const auto all = cli({"check", "--model", model("anti2_perf.json")});
  CHECK(all.code == 1);
  const json h = json::parse(all.out)["result"]["holds"];
  CHECK(h == json{{"SO1", false}, {"SO2", false}, {"FIN-SO1", true}, {"FIN-SO2", true}});

  CHECK(cli({"check", "--model", model("diamond.json"), "--workers", "4"}).code == 0);
}

TEST_CASE("theorems pass up to four elements") {
  const auto r = cli({"theorems", "--max-elements", "4"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["sweeps"].size() == 5);
}

TEST_CASE("input errors exit 2 with one line on stderr") {
  auto r = cli({"validate", "--model", model("cyclic.json")});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("cyclic") != std::string::npos);
  CHECK(r.err.find("cyclic.json") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  CHECK(cli({"validate", "--model", model("missing.json")}).code == 2);
  CHECK(cli({"check", "--model", model("diamond.json"), "--principle", "so3"}).code == 2);
  CHECK(cli({"check", "--model", model("diamond.json"), "--caps", "region=x"}).code == 2);
  CHECK(cli({"check", "--model", model("diamond.json"), "--caps", "depth=2"}).code == 2);
  CHECK(cli({"hunt", "--filters", "nonsense"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({}).code == 2);
  CHECK(cli({"gap", "--model", model("diamond.json"), "--a", "a", "--b", "t"}).code == 2);
  CHECK(cli({"regions", "--model", model("diamond.json"), "--a", "z"}).code == 2);
}

TEST_CASE("help exits 0") {
  const auto r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("hunt") != std::string::npos);
}

TEST_CASE("validate") {
  auto r = cli({"validate", "--model", model("diamond.json")});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["valid"] == true);
  r = cli({"validate", "--model", model("chain2.json")});
  CHECK(r.code == 0);
  r = cli({"validate", "--model", model("broken_dom.json")});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["dom_axioms"]["passed"] == false);
}

TEST_CASE("regions") {
  const auto r = cli({"regions", "--model", model("w_causet.json"), "--a", "a", "--b", "b"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["spacelike"] == true);
  CHECK(j["flank_x"] == json{"q"});
  CHECK(j["flank_y"] == json::array());
  CHECK(j["crucial_identity"]["holds"] == true);
  CHECK(j["a"]["past"] == json{"q", "a"});
}

TEST_CASE("fullspec") {
  auto r = cli({"fullspec", "--model", model("anti2_uniform.json"), "--region", "x"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["gamma_size"] == 4);
  CHECK(j["count"] == 2);
  CHECK(j["partition"] == true);
  r = cli({"fullspec", "--model", model("anti2_uniform.json"), "--region", "", "--by-definition"});
  j = json::parse(r.out);
  CHECK(j["count"] == 1);
  CHECK(j["gamma_size"] == 2);
}

TEST_CASE("dom-axioms") {
  CHECK(cli({"dom-axioms", "--model", model("anti2_uniform.json")}).code == 0);
  CHECK(cli({"dom-axioms", "--model", model("broken_dom.json")}).code == 1);
  const auto r = cli({"dom-axioms", "--model", model("diamond.json"), "--family-size", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["mode"] == "sampled");
}

TEST_CASE("ccs") {
  auto r = cli({"ccs", "--model", model("anti2_perf.json"), "--event-a", R"({"x":1})",
                "--event-b", R"({"y":1})", "--cause", R"({"x":1})"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["common_cause"]["qualifies"] == true);

  r = cli({"ccs", "--model", model("anti2_perf.json"), "--event-a", R"({"x":1})", "--event-b",
           R"({"y":1})", "--cause", "omega"});
  CHECK(r.code == 1);

  r = cli({"ccs", "--model", model("anti2_perf.json"), "--event-a", R"(["10","11"])",
           "--event-b", R"({"y":1})", "--max-size", "2"});
  CHECK(r.code == 0);
  CHECK(!json::parse(r.out)["systems"].empty());

  r = cli({"ccs", "--model", model("anti2_uniform.json"), "--event-a", R"({"x":1})",
           "--event-b", R"({"y":1})"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["correlated"] == false);
}

TEST_CASE("replicate and gap") {
  auto r = cli({"replicate", "--model", model("w_causet.json"), "--a", "a", "--b", "b"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["status"] == "passed");
  r = cli({"replicate", "--model", model("anti2_perf.json"), "--a", "x", "--b", "y"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["status"] == "not-applicable");
  r = cli({"gap", "--model", model("diamond.json"), "--a", "a", "--b", "b"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["status"] == "equal");
}

TEST_CASE("hunt output is JSON lines and repeatable") {
  const std::vector<std::string> args{"hunt", "--max-elements", "2", "--include-diagonal"};
  const auto a = cli(args);
  CHECK(a.code == 1);
  auto w = args;
  w.insert(w.end(), {"--workers", "8"});
  CHECK(cli(w).out == a.out);
  std::istringstream in(a.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    CHECK(json::accept(line));
    ++n;
  }
  CHECK(n == 2);
  CHECK(cli({"hunt", "--max-elements", "2"}).code == 0);
}

TEST_CASE("pretty output is the same document") {
  const auto plain = cli({"check", "--model", model("diamond.json")});
  const auto pretty = cli({"check", "--model", model("diamond.json"), "--pretty"});
  CHECK(plain.out != pretty.out);
  CHECK(json::parse(plain.out) == json::parse(pretty.out));
  CHECK(cli({"check", "--model", model("diamond.json")}).out == plain.out);
}
