#include <doctest.h>

#include <algorithm>

#include "aristo/sampling.hpp"
#include "aristo/verify.hpp"

using namespace aristo;

namespace {

const CheckResult* find(const std::vector<CheckResult>& checks, const std::string& name) {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

CheckResult make(bool pass) {
  CheckResult c;
  c.name = "claim";
  c.samples = 1;
  c.pass = pass;
  return c;
}

}  // namespace

TEST_CASE("erratum protocol") {
  SUBCASE("a passing claim runs no candidates") {
    std::vector<CheckResult> out;
    bool ran = false;
    audit_claim(out, make(true), {{"x", [&] {
                                     ran = true;
                                     return make(true);
                                   }}});
    CHECK(out.size() == 1);
    CHECK(!ran);
    CHECK(!out[0].expected_erratum);
  }
  SUBCASE("the first passing candidate is reported after the claim") {
    std::vector<CheckResult> out;
    audit_claim(out, make(false), {{"first", [] { return make(false); }}, {"second", [] { return make(true); }},
                                   {"third", [] { return make(true); }}});
    REQUIRE(out.size() == 2);
    CHECK(out[0].expected_erratum);
    CHECK(!out[0].pass);
    CHECK(out[0].note->find("second") != std::string::npos);
    CHECK(out[1].name == "claim[second]");
    CHECK(out[1].pass);
  }
  SUBCASE("no passing candidate leaves a failure") {
    std::vector<CheckResult> out;
    audit_claim(out, make(false), {{"first", [] { return make(false); }}});
    REQUIRE(out.size() == 1);
    CHECK(!out[0].acceptable());
  }
}

TEST_CASE("sampler is deterministic and respects the separation floor") {
  BoxSampler a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = a.real_state();
    CHECK(x == b.real_state());
    CHECK(x.cwiseAbs().maxCoeff() <= 5.0);
    CHECK(std::min({std::abs(x[0] - x[1]), std::abs(x[1] - x[2]), std::abs(x[2] - x[0])}) >= 0.1);
  }
  CHECK(a.uniform(0, 1) != c.uniform(0, 1));
  BoxSampler tiny(1, 0.01, 0.1);
  CHECK_THROWS_AS((void)tiny.real_state(), Error);
}

TEST_CASE("suite selection and argument errors") {
  CHECK(suite_names().size() == 6);
  VerifyOptions o;
  o.suite = "nope";
  CHECK_THROWS_AS((void)run_verify(o), Error);
  o.suite = "roots";
  o.samples = 0;
  CHECK_THROWS_AS((void)run_verify(o), Error);
  o.samples = 10;
  o.box = -1.0;
  CHECK_THROWS_AS((void)run_verify(o), Error);
}

TEST_CASE("documented errata are reproduced with notes") {
  VerifyOptions o;
  o.samples = 30;
  const VerifyReport r = run_verify(o);
  CHECK(r.acceptable());
  for (const char* name : {"relation-2-coefficient", "hamilton-P_f2-H1", "hamilton-P_n1-H_n-unit-calibration",
                           "special-locus-2-q", "special-locus-2-mu", "h2-physical-conservation",
                           "extended-hamilton-tau"}) {
    const CheckResult* c = find(r.checks, name);
    REQUIRE_MESSAGE(c, name);
    CHECK_MESSAGE(c->expected_erratum, name);
    CHECK_MESSAGE(c->note.has_value(), name);
  }
  CHECK(*find(r.checks, "relation-2-coefficient")->calibration == doctest::Approx(6.0));
  CHECK(*find(r.checks, "hamilton-P_n1-H_n-unit-calibration")->calibration == doctest::Approx(3.0));
  CHECK(find(r.checks, "hamilton-P_f2-H1[conjugate-uv]")->pass);
  CHECK(find(r.checks, "special-locus-2-q[q=-2.33333]")->pass);
  CHECK(find(r.checks, "special-locus-2-mu[mu=0.0689655]")->pass);
  for (const char* name : {"gradient-identity", "h1-conservation", "h2-conservation", "h3-conservation", "relation-1",
                           "jacobi-P_f1", "jacobi-P_f2", "jacobi-P_s1", "jacobi-P_s2", "jacobi-P_n1", "jacobi-P_n2",
                           "hamilton-P_f1-H_f", "extended-jacobi", "extended-hamilton", "symmetry-commutator",
                           "characteristics-slope", "delta-identity", "root-solver-agreement"}) {
    const CheckResult* c = find(r.checks, name);
    REQUIRE_MESSAGE(c, name);
    CHECK_MESSAGE(c->pass, name);
  }
}

TEST_CASE("extended suite for generic couplings") {
  VerifyOptions o;
  o.suite = "extended";
  o.couplings = Couplings{1, 2, 3, 1};
  o.seed = 7;
  const VerifyReport r = run_verify(o);
  CHECK(r.acceptable());
  CHECK(find(r.checks, "extended-jacobi")->pass);
  CHECK(find(r.checks, "extended-hamilton")->pass);
  CHECK(find(r.checks, "extended-hamilton-h1")->pass);
  CHECK(find(r.checks, "symmetry-commutator")->pass);
}
