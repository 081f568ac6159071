#include <doctest.h>

#include <cmath>
#include <random>

#include "aristo/reduction.hpp"
#include "aristo/roots.hpp"
#include "oracles.hpp"

using namespace aristo;

namespace {

const double kS3 = std::sqrt(3.0);

bool is_error(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("shifted parameters") {
  const ShiftParams full = pq_of(Couplings{1, 1, 1, 1});
  CHECK(full.p == 0.0);
  CHECK(full.q == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const ShiftParams g = pq_of(Couplings{1, 2, 3, 1});
  CHECK(g.p == doctest::Approx(-1.0 / (kS3 * 3.0)).epsilon(1e-15));
  CHECK(g.q == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(is_error(ErrorKind::ZeroCouplingC, [] { (void)pq_of(Couplings{1, 1, 0, 1}); }));
}

TEST_CASE("lambda at the printed values") {
  CHECK(std::abs(lambda_of(0.0, 2.0 / 3.0) - Complex(0.0, 27.0)) <= 1e-12);
  // p = 0 and -1 - 12 q > 0: lambda = (-1 - 12 q)^(3/2).
  for (double q : {-1.0, -0.5, -2.0}) {
    CHECK(std::abs(lambda_of(0.0, q) - std::pow(-1.0 - 12.0 * q, 1.5)) <= 1e-12 * std::pow(-1.0 - 12.0 * q, 1.5));
  }
}

TEST_CASE("full-symmetric roots are {0, +sqrt3, -sqrt3}") {
  const CubicRoots r = cubic_roots(0.0, 2.0 / 3.0);
  CHECK(!r.fallback);
  CHECK(oracle::set_distance(r.roots, {Complex(0), Complex(kS3), Complex(-kS3)}) <= 1e-12);
}

TEST_CASE("semi-symmetric roots at p = 0, q = 1") {
  const CubicRoots r = cubic_roots(0.0, 1.0);
  const double s = std::sqrt(13.0) / kS3;
  CHECK(oracle::set_distance(r.roots, {Complex(0), Complex(s), Complex(-s)}) <= 1e-12);
}

TEST_CASE("closed-form roots agree with an independent solver on random (p, q)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double p = d(rng), q = d(rng);
    const auto [P, Q] = depressed_coefficients(p, q);
    const auto ref = oracle::cubic_roots(0.0, P, Q);
    const CubicRoots got = cubic_roots(p, q);
    CHECK(oracle::set_distance(got.roots, ref) <= 1e-9);
    CHECK(got.max_residual <= 1e-10);
    CHECK(std::abs(got.roots[0] + got.roots[1] + got.roots[2]) <= 1e-10);
  }
}

TEST_CASE("depressed cubic in the shifted variable") {
  // The cubic in theta is theta D(theta) - N(theta) with the slope N/D of the
  // characteristics; the shift theta = t + p/3 removes the quadratic term.
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double p = d(rng), q = d(rng);
    const auto [P, Q] = depressed_coefficients(p, q);
    const Complex t(d(rng), d(rng));
    CHECK(std::abs(depressed_cubic(p, q, t) - (t * t * t + P * t + Q)) <= 1e-12 * (1.0 + std::norm(t) * std::abs(t)));
  }
}

TEST_CASE("real roots are invariant rays of the reduced flow") {
  for (const Couplings k : {Couplings{1, 1, 1, 1}, Couplings{1, 2, 3, 1}, Couplings{2, 0.5, 1, 1}}) {
    const RootProfile prof = classify(k);
    REQUIRE(prof.roots_valid);
    for (double theta : prof.real_roots()) {
      // On the ray xi = theta eta the slope of the characteristics is theta.
      try {
        CHECK(characteristic_slope(1.0, theta, k) == doctest::Approx(theta).epsilon(1e-9));
      } catch (const Error& e) {
        // The ray may pass through a pole of the reduced field.
        CHECK((e.kind() == ErrorKind::ReducedSingular || e.kind() == ErrorKind::VerticalSlope));
      }
    }
  }
}

TEST_CASE("discriminant identity against the depressed coefficients") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double p = d(rng), q = d(rng);
    const auto [P, Q] = depressed_coefficients(p, q);
    const double direct = -4.0 * P * P * P - 27.0 * Q * Q;
    const double scale = 4.0 * std::abs(P * P * P) + 27.0 * Q * Q;
    CHECK(std::abs(discriminant(p, q) - direct) <= 1e-10 * scale);
  }
  CHECK(discriminant(0.0, 2.0 / 3.0) == doctest::Approx(108.0).epsilon(1e-12));
}

TEST_CASE("numerator quadratic matches the characteristics numerator") {
  // (a+b+c) + sqrt3 (a-b) theta - 3 c theta^2 vanishes at the numerator roots.
  for (const Couplings k : {Couplings{1, 2, 3, 1}, Couplings{1, 1, 1, 1}, Couplings{3, -1, 0.5, 1}}) {
    const ShiftParams pq = pq_of(k);
    const auto [tp, tm] = numerator_roots(pq.p, pq.q);
    for (Complex th : {tp, tm}) {
      const Complex val = k.sum() + kS3 * (k.a - k.b) * th - 3.0 * k.c * th * th;
      CHECK(std::abs(val) <= 1e-12 * (std::abs(k.sum()) + std::abs(kS3 * (k.a - k.b) * th) + std::abs(3.0 * k.c * th * th)));
    }
  }
}

TEST_CASE("printed discriminant factors and the special loci") {
  CHECK(denp_value(-1.0 / 3.0) == doctest::Approx(0.0));
  CHECK(denp_value(-1.0 / 12.0) == doctest::Approx(0.0));
  CHECK(std::abs(denp_value(-7.0 / 3.0)) <= 1e-9);
  CHECK(std::abs(denp_value(-3.0 / 7.0)) > 1.0);
  for (double q : {-1.3, 0.2, 1.7}) {
    CHECK(denp_recomputed(q) ==
          doctest::Approx(256.0 * (1 + 3 * q) * std::pow(7 + 3 * q, 3) / 81.0).epsilon(1e-12));
  }
  const auto loci = special_loci();
  REQUIRE(loci.size() == 3);
  CHECK(loci[0].q_consistent);
  CHECK(loci[2].q_consistent);
  CHECK(!loci[1].q_consistent);
  CHECK(loci[1].printed_q == doctest::Approx(-3.0 / 7.0));
  CHECK(loci[1].audited_q == doctest::Approx(-7.0 / 3.0));
  REQUIRE(loci[1].printed_mu);
  REQUIRE(loci[1].audited_mu);
  CHECK(*loci[1].printed_mu == doctest::Approx(1.0 / 29.0));
  CHECK(*loci[1].audited_mu == doctest::Approx(2.0 / 29.0));
  CHECK(!loci[1].mu_consistent);
  // 7(a+b)+9c = 0 with a = b = 1 gives c = -14/9 and mu = (2a+c)/(8a+c) = 2/29.
  const double c = -14.0 / 9.0;
  CHECK((2.0 + c) / (8.0 + c) == doctest::Approx(2.0 / 29.0));
  CHECK(*semi_symmetric_mu_at(-3.0 / 7.0) == doctest::Approx(2.0 / 29.0));
}

TEST_CASE("classification") {
  const RootProfile full = classify(Couplings{1, 1, 1, 1});
  CHECK(full.case_label == CouplingCase::FullSymmetric);
  REQUIRE(full.lambda);
  CHECK(std::abs(*full.lambda - Complex(0, 27)) <= 1e-12);
  REQUIRE(full.delta);
  CHECK(*full.delta == doctest::Approx(108.0));
  REQUIRE(full.mu);
  CHECK(*full.mu == doctest::Approx(1.0 / 3.0));

  const RootProfile ni = classify(Couplings{1, 1, 0, 1});
  CHECK(ni.case_label == CouplingCase::NonInteracting);
  REQUIRE(ni.mu);
  CHECK(*ni.mu == doctest::Approx(0.25));
  CHECK(!ni.pq);

  const RootProfile gen = classify(Couplings{1, 2, 3, 1});
  CHECK(gen.case_label == CouplingCase::Generic);
  CHECK(gen.roots_valid);
  CHECK(gen.root_residual <= 1e-10);

  const RootProfile k_case = classify(Couplings{1, 0, 0, 1});
  REQUIRE(k_case.k);
  CHECK(*k_case.k == doctest::Approx(1.0 / kS3));
}

TEST_CASE("singular direction test") {
  // theta_real = 1/sqrt3: the excluded direction is perpendicular to (0, 2, -2), i.e. v = w.
  CHECK(!singular_direction_ok(State3(3.0, 1.0, 1.0), 1.0 / kS3));
  CHECK(singular_direction_ok(State3(3.0, 1.0, 0.0), 1.0 / kS3));
}
