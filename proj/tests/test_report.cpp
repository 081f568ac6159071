#include <doctest.h>

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "aristo/report.hpp"

using namespace aristo;

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = d(rng) * std::pow(10.0, double(i % 20) - 10.0);
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("trajectory CSV and JSON") {
  const Couplings k{1, 1, 1, 1};
  IntegrationConfig cfg;
  cfg.t1 = 0.05;
  const Trajectory traj = integrate(ModelKind::Auxiliary, State3(2.0, 1.0, 0.0), k, cfg);
  const std::string csv = trajectory_csv(traj);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,u_re,u_im,v_re,v_im,w_re,w_im,h1_re,h1_im,h2_re,h2_im,hfund_dirres");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
  }
  CHECK(rows == traj.samples.size());

  const nlohmann::json j = trajectory_json(traj, k, cfg);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j.contains("meta"));
  CHECK(j["samples"].size() == traj.samples.size());
  CHECK(j["termination"]["reason"] == "completed");
  CHECK(j["meta"]["fundamental"] == "h_full");
  CHECK(trajectory_csv(traj) == csv);
}

TEST_CASE("verify report serialization is deterministic") {
  VerifyOptions o;
  o.suite = "roots";
  o.samples = 20;
  o.seed = 5;
  const VerifyReport r1 = run_verify(o);
  const VerifyReport r2 = run_verify(o);
  CHECK(verify_json(r1).dump() == verify_json(r2).dump());
  const nlohmann::json j = verify_json(r1);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["meta"]["seed"] == 5);
  CHECK(j["checks"].size() == r1.checks.size());
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("pass"));
    CHECK(c.contains("expected_erratum"));
    CHECK(c.contains("note"));
  }
  const std::string text = verify_text(r1);
  CHECK(text.find("ERRATUM special-locus-2-q") != std::string::npos);
}

TEST_CASE("scan ranges and grid") {
  const ScanRange r = parse_range("-1:1:5");
  CHECK(r.n == 5);
  CHECK(r.at(0) == -1.0);
  CHECK(r.at(4) == 1.0);
  CHECK_THROWS_AS((void)parse_range("1:2"), Error);
  CHECK_THROWS_AS((void)parse_range("1:2:0"), Error);
  CHECK_THROWS_AS((void)parse_range("a:2:3"), Error);

  const std::vector<ScanRow> rows = scan_grid(parse_range("-1:1:3"), ScanRange{2.0 / 3.0, 2.0 / 3.0, 1});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].p == -1.0);
  CHECK(rows[1].p == 0.0);
  CHECK(rows[1].delta == doctest::Approx(108.0));
  CHECK(rows[1].n_real_roots == 3);
  CHECK(rows[1].min_root_gap == doctest::Approx(std::sqrt(3.0)));
  CHECK(std::abs(rows[1].lambda - Complex(0, 27)) <= 1e-12);
  const std::string csv = scan_csv(rows);
  CHECK(csv.rfind("p,q,delta,n_real_roots,min_root_gap,lambda_re,lambda_im\n", 0) == 0);

  // Row-major with p outer.
  const auto grid = scan_grid(parse_range("0:1:2"), parse_range("0:1:3"));
  REQUIRE(grid.size() == 6);
  CHECK(grid[0].p == 0.0);
  CHECK(grid[2].p == 0.0);
  CHECK(grid[3].p == 1.0);
  CHECK(grid[1].q == 0.5);
  // Negative discriminant: one real root.
  for (const auto& row : scan_grid(parse_range("-2:2:9"), parse_range("-2:2:9"))) {
    if (row.delta < -1e-9) CHECK(row.n_real_roots == 1);
    if (row.delta > 1e-9) CHECK(row.n_real_roots == 3);
  }
}

TEST_CASE("profile serialization") {
  const nlohmann::json j = profile_json(classify(Couplings{1, 1, -2, 1}));
  CHECK(j["schema_version"] == kSchemaVersion);
  bool flagged = false;
  for (const auto& loc : j["special_loci"]) {
    if (loc["member"].get<bool>()) flagged = flagged || loc["constraint"] == "a+b+c=0";
  }
  CHECK(flagged);
  const std::string text = profile_text(classify(Couplings{1, 1, 1, 1}));
  CHECK(text.find("full_symmetric") != std::string::npos);
}
