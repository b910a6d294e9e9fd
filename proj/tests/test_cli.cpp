#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <dcrn/cli.hpp>
#include <json.hpp>

#include "oracle.hpp"

namespace fs = std::filesystem;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dcrn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dcrn::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dcrn_cli_test_" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("analyze") {
  const Result r = run({"analyze", "--net", oracle::data("example.net")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "weakly reversible: true"));
  CHECK(has(r.out, "S⊥ basis: (1,1)"));
  CHECK(has(r.out, "complex balanced: true"));

  const Result open = run({"analyze", "--net", oracle::data("open_chain.net")});
  CHECK(open.code == 0);
  CHECK(has(open.out, "weakly reversible: false"));
  CHECK(has(open.out, "complex balanced: false"));

  CHECK(run({"analyze", "--net", oracle::data("empty.net")}).code == 2);
  CHECK(run({"analyze", "--net", oracle::data("missing.net")}).code == 2);
  CHECK(run({"analyze"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
}

TEST_CASE("simulate writes files and a verdict") {
  const fs::path dir = scratch("sim");
  const Result r = run({"simulate", "--net", oracle::data("example.net"), "--history", "const 0.5 1.5", "--h", "0.01",
                        "--t-end", "100", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(has(r.out, "verdict: PositiveEquilibrium"));
  CHECK(has(r.out, "predicted equilibrium: (0.80277563"));
  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.rfind("t,X1,X2,V,C_1\n", 0) == 0);
  CHECK(fs::exists(dir / "species_X1.csv"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["verdict"]["kind"] == "PositiveEquilibrium");

  const fs::path again = scratch("sim2");
  run({"simulate", "--net", oracle::data("example.net"), "--history", "const 0.5 1.5", "--h", "0.01", "--t-end", "100",
       "--out", again.string()});
  CHECK(slurp(dir / "trajectory.csv") == slurp(again / "trajectory.csv"));
  CHECK(slurp(dir / "manifest.json") == slurp(again / "manifest.json"));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("simulate verdicts") {
  const Result d =
      run({"simulate", "--net", oracle::data("example.net"), "--history", "zero affine(1,1)", "--t-end", "20"});
  CHECK(d.code == 0);
  CHECK(has(d.out, "verdict: Boundary"));
  CHECK(has(d.out, "vanished species: X1"));

  const Result s = run({"simulate", "--net", oracle::data("example.net"), "--history", "const 0.5 1.5", "--t-end", "1"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "verdict: Undetermined"));

  CHECK(run({"simulate", "--net", oracle::data("example.net"), "--history", "const -1 1"}).code == 1);
  CHECK(run({"simulate", "--net", oracle::data("example.net")}).code == 1);
  CHECK(run({"simulate", "--net", oracle::data("example.net"), "--history", "const 1 1", "--h", "0.7"}).code == 1);
}

TEST_CASE("integration failure exits with 4 and names the time") {
  const fs::path net = scratch("stiff.net");
  std::ofstream(net) << "species A\nreaction A -> 0 ; rate 10000 ; delay none\n";
  const Result r = run({"simulate", "--net", net.string(), "--history", "const 1", "--t-end", "1"});
  CHECK(r.code == 4);
  CHECK(has(r.err, "t = "));
  fs::remove(net);
}

TEST_CASE("equilibrium") {
  const Result r = run({"equilibrium", "--net", oracle::data("example.net"), "--history", "const 0.5 1.5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "in-class equilibrium: (0.8027756377,0.8027756377)"));
  CHECK(run({"equilibrium", "--net", oracle::data("open_chain.net")}).code == 3);
}

TEST_CASE("chain-expand") {
  const Result r = run({"chain-expand", "--net", oracle::data("example_const.net"), "--n", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "species X1 X2 z1_1 z1_2 z1_3"));
  CHECK(run({"chain-expand", "--net", oracle::data("example.net"), "--n", "3"}).code == 3);
}

TEST_CASE("verify suites") {
  const Result c = run({"verify", "classes", "--net", oracle::data("example.net"), "--history", "const 0.5 1.5"});
  CHECK(c.code == 0);
  CHECK(has(c.out, "distinct delayed classes: 1"));

  const Result ch = run({"verify", "chain", "--net", oracle::data("example_const.net"), "--history", "const 0.5 1.5"});
  CHECK(ch.code == 0);
  CHECK(has(ch.out, "monotone: pass"));

  const Result l = run({"verify", "lyapunov", "--net", oracle::data("example.net"), "--t-end", "30", "--history",
                        "const 0.5 1.5", "--history", "sqrtaffine(1,1) const(0.5)", "--history",
                        "sqrtaffine(1,1) zero", "--history", "zero affine(1,1)"});
  CHECK(l.code == 0);
  CHECK(has(l.out, "V non-increasing: pass (max positive increment"));

  CHECK(run({"verify", "nonsense", "--net", oracle::data("example.net")}).code == 1);
  CHECK(run({"verify", "lyapunov", "--net", oracle::data("open_chain.net"), "--history", "const 1 1 1"}).code == 3);
}
