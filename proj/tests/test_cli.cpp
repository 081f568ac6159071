#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aristo/cli.hpp"
#include "aristo/report.hpp"

using namespace aristo;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "aristo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(int(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("complex literal grammar") {
  CHECK(parse_complex("1.25-0.5i") == Complex(1.25, -0.5));
  CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
  CHECK(parse_complex("3+4i") == Complex(3.0, 4.0));
  CHECK(parse_complex("1e-3+2.5e1i") == Complex(1e-3, 25.0));
  for (const char* bad : {"", "i", "1+", "1+2", "1+2j", "abc", "1 + 2i", "2i"}) {
    CHECK_THROWS_AS((void)parse_complex(bad), Error);
  }
  const State3 s = parse_state("2,1-0.5i,0");
  CHECK(s.v == Complex(1.0, -0.5));
  CHECK_THROWS_AS((void)parse_state("1,2"), Error);
  const Couplings k = parse_couplings("1,2,3", 0.5);
  CHECK(k.c == 3.0);
  CHECK(k.omega == 0.5);
  CHECK_THROWS_AS((void)parse_couplings("1,2"), Error);
}

TEST_CASE("usage errors exit 2 with help on the diagnostic stream") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"simulate"},
           {"simulate", "--initial", "1,2"},
           {"simulate", "--initial", "2,1,0", "--format", "xml"},
           {"verify", "--suite", "nope"},
           {"verify", "--samples", "0"},
           {"classify"},
           {"scan", "--p-range", "0:1", "--q-range", "0:1:2"},
           {"reduce", "--couplings", "1,1,1", "--state", "1+1i,0,2"}}) {
    const Run r = run(args);
    CHECK_MESSAGE(r.code == kExitUsage, (args.empty() ? std::string("<none>") : args[0]));
    CHECK(r.err.find("Usage") != std::string::npos);
  }
}

TEST_CASE("simulate: initial state too close to a collision is a usage error") {
  const Run r = run({"simulate", "--initial", "1,1,0"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("simulate: CSV output") {
  const Run r = run({"simulate", "--couplings", "1,1,1", "--initial", "2,1,0", "--t0", "0", "--t1", "0.1"});
  REQUIRE(r.code == kExitOk);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == kTrajectoryCsvHeader);
  double prev_t = -1.0, h1_0 = NAN;
  while (std::getline(is, line)) {
    std::vector<double> v;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 12);
    CHECK(v[0] > prev_t);
    prev_t = v[0];
    if (std::isnan(h1_0)) h1_0 = v[7];
    CHECK(std::abs(v[7] - h1_0) <= 1e-9);
    CHECK(std::abs(v[8]) <= 1e-9);
  }
  CHECK(prev_t == 0.1);
}

TEST_CASE("simulate: JSON output and collision exit code") {
  const std::string path = "test_cli_collision.json";
  const Run r = run({"simulate", "--couplings", "0,0,1", "--initial", "1,0,5", "--t1", "1", "--direction", "-1",
                     "--format", "json", "--output", path});
  CHECK(r.code == kExitNumeric);
  const nlohmann::json j = nlohmann::json::parse(read_file(path));
  CHECK(j.contains("meta"));
  CHECK(j.contains("samples"));
  CHECK(j["termination"]["reason"] == "collision");
  std::remove(path.c_str());
}

TEST_CASE("verify: exit codes") {
  const Run ok = run({"verify", "--suite", "roots", "--couplings", "1,1,0"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("SKIP root-profile (ZeroCouplingC") != std::string::npos);
  // Far outside the finite-difference comfort zone some checks genuinely fail.
  const Run bad = run({"verify", "--suite", "extended", "--box", "1e9", "--samples", "20"});
  CHECK(bad.code == kExitVerifyFailed);
  CHECK(bad.out.find("FAIL extended-jacobi") != std::string::npos);
}

TEST_CASE("verify: tensor suite lines") {
  const Run r = run({"verify", "--suite", "tensors", "--couplings", "1,1,1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS jacobi-P_f1") != std::string::npos);
  CHECK(r.out.find("PASS hamilton-P_f1-H_f ") != std::string::npos);
  CHECK(r.out.find("ERRATUM hamilton-P_f2-H1") != std::string::npos);
  CHECK(r.out.find("PASS hamilton-P_f2-H1[conjugate-uv]") != std::string::npos);
  CHECK(r.out.find("ERRATUM hamilton-P_n1-H_n-unit-calibration") != std::string::npos);
}

TEST_CASE("verify: JSON is deterministic for a fixed seed") {
  const std::vector<std::string> args = {"verify", "--suite", "conserved", "--samples", "15", "--seed", "7", "--json"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const nlohmann::json j = nlohmann::json::parse(a.out);
  CHECK(j["schema_version"] == kSchemaVersion);
  const Run c = run({"verify", "--suite", "conserved", "--samples", "15", "--seed", "8", "--json"});
  CHECK(c.out != a.out);
}

TEST_CASE("classify") {
  const Run r = run({"classify", "--couplings", "1,1,1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("case: full_symmetric") != std::string::npos);
  CHECK(r.out.find("lambda: 0+27i") != std::string::npos);
  CHECK(r.out.find("delta: 108") != std::string::npos);
  const Run locus = run({"classify", "--couplings", "1,1,-2"});
  CHECK(locus.out.find("special locus: a+b+c=0") != std::string::npos);
  const Run js = run({"classify", "--couplings", "1,2,3", "--json"});
  const nlohmann::json j = nlohmann::json::parse(js.out);
  CHECK(j["root_residual"].get<double>() <= 1e-10);
}

TEST_CASE("scan") {
  const Run r = run({"scan", "--p-range", "-1:1:3", "--q-range", "0.6666666666666666:0.6666666666666666:1"});
  CHECK(r.code == kExitOk);
  std::istringstream is(r.out);
  std::string header, row0, row1;
  std::getline(is, header);
  std::getline(is, row0);
  std::getline(is, row1);
  CHECK(header == kScanCsvHeader);
  CHECK(row1.rfind("0,0.6666666666666666,108", 0) == 0);
}

TEST_CASE("reduce") {
  const Run r = run({"reduce", "--couplings", "1,1,1", "--state", "5,1,0"});
  CHECK(r.code == kExitOk);
  auto value = [&](const std::string& key) {
    const auto at = ("\n" + r.out).find("\n" + key + ": ");
    REQUIRE(at != std::string::npos);
    return std::stod(r.out.substr(at + key.size() + 2));
  };
  CHECK(value("zeta") == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(value("eta") == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(value("xi") == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  const Run sing = run({"reduce", "--couplings", "1,1,1", "--state", "1,1,0"});
  CHECK(sing.code == kExitNumeric);
  CHECK(sing.err.find("ReducedSingular") != std::string::npos);
}
