#include <doctest.h>

#include <cmath>

#include "aristo/conserved.hpp"
#include "aristo/model.hpp"
#include "aristo/reduction.hpp"
#include "oracles.hpp"

using namespace aristo;

namespace {

const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);
const double kS6 = std::sqrt(6.0);

bool in_sector(const PlanePoint& p) {
  return p.eta > 0.05 && kS3 * p.xi - p.eta > 0.05 && kS3 * p.xi + p.eta > 0.05;
}

}  // namespace

TEST_CASE("plane basis is orthonormal and maps (5,1,0) as expected") {
  const Eigen::Matrix3d B = plane_basis();
  CHECK((B * B.transpose() - Eigen::Matrix3d::Identity()).norm() <= 1e-15);
  const PlanePoint p = to_plane(Vec3(5.0, 1.0, 0.0));
  CHECK(p.zeta == doctest::Approx(2.0 * kS3));
  CHECK(p.eta == doctest::Approx(2.0 * kS2));
  CHECK(p.xi == doctest::Approx(kS6));
  CHECK((from_plane(p) - Vec3(5.0, 1.0, 0.0)).norm() <= 1e-14);
  CHECK_THROWS_AS((void)to_plane(State3(Complex(1, 1), 0.0, 2.0)), Error);
}

TEST_CASE("reduced field is the planar image of the auxiliary field") {
  oracle::States gen(31);
  for (const Couplings k : {Couplings{1, 1, 1, 1}, Couplings{1, 2, 3, 1}}) {
    for (int i = 0; i < 100; ++i) {
      const Vec3 x = gen.next();
      const PlanePoint p = to_plane(x);
      const Vec3 U = oracle::aux_rhs(State3(x), k.a, k.b, k.c).real();
      const Vec3 image = plane_basis() * U;
      const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
      const double scale = image.norm();
      CHECK(std::abs(image[0]) <= 1e-13 * scale);
      CHECK(std::abs(image[1] - v.eta) <= 1e-12 * scale);
      CHECK(std::abs(image[2] - v.xi) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("reduced potential: gradient and independence of zeta") {
  oracle::States gen(32);
  const Couplings k{1, 2, 3, 1};
  int used = 0;
  for (int i = 0; i < 1000 && used < 50; ++i) {
    const PlanePoint p = to_plane(gen.next());
    if (!in_sector(p)) continue;
    ++used;
    const PlaneVelocity g = grad_reduced_potential(p.eta, p.xi, k);
    const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
    CHECK(std::abs(g.eta - v.eta) <= 1e-12 * (std::abs(v.eta) + std::abs(v.xi)));
    CHECK(std::abs(g.xi - v.xi) <= 1e-12 * (std::abs(v.eta) + std::abs(v.xi)));
    const double h = 1e-6;
    const double fd_eta =
        (reduced_potential(p.eta + h, p.xi, k) - reduced_potential(p.eta - h, p.xi, k)) / (2.0 * h);
    CHECK(fd_eta == doctest::Approx(v.eta).epsilon(1e-6));
    // F(eta, xi) and the three-body potential differ by a constant independent of zeta.
    const auto full = [&](double zeta) {
      return potential(State3(from_plane(PlanePoint{zeta, p.eta, p.xi})), k).real() -
             reduced_potential(p.eta, p.xi, k);
    };
    CHECK(full(0.0) == doctest::Approx(full(1.7)).epsilon(1e-12));
  }
  CHECK(used == 50);
  CHECK_THROWS_AS((void)reduced_potential(-1.0, 2.0, k), Error);
}

TEST_CASE("characteristic slope") {
  oracle::States gen(33);
  const Couplings k{1, 2, 3, 1};
  for (int i = 0; i < 100; ++i) {
    const PlanePoint p = to_plane(gen.next());
    PlaneVelocity v;
    try {
      v = reduced_rhs(p.eta, p.xi, k);
    } catch (const Error&) {
      continue;
    }
    const double slope = characteristic_slope(p.eta, p.xi, k);
    CHECK(slope == doctest::Approx(v.xi / v.eta).epsilon(1e-10));
    for (double s : {2.0, -3.0, 0.5}) {
      CHECK(characteristic_slope(s * p.eta, s * p.xi, k) == doctest::Approx(slope).epsilon(1e-12));
    }
  }
  try {
    (void)reduced_rhs(0.0, 1.0, k);
    FAIL("expected ReducedSingular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReducedSingular);
  }
}

TEST_CASE("h_f in the plane") {
  oracle::States gen(34);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x = gen.next();
    const PlanePoint p = to_plane(x);
    const double lhs = h_full(State3(Vec3(from_plane(PlanePoint{0.0, p.eta, p.xi})))).real();
    CHECK(lhs == doctest::Approx(h_full_plane(p.eta, p.xi)).epsilon(1e-10));
  }
  CHECK(conformal_factor_full(Vec3(2.0, 1.0, 0.0)) == doctest::Approx(-1.0 / (kS6 * 1.0 * 1.0 * -2.0)));
}

TEST_CASE("conformal factor: both coordinate forms agree") {
  oracle::States gen(35);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x = gen.next();
    const PlanePoint p = to_plane(x);
    CHECK(conformal_factor_full(p.eta, p.xi) == doctest::Approx(conformal_factor_full(x)).epsilon(1e-10));
  }
}

TEST_CASE("Liouville: the reciprocal of the conformal factor is the invariant density") {
  oracle::States gen(36);
  const Couplings k{1, 1, 1, 1};
  const PlaneDensity phi = [](double e, double x) { return conformal_factor_full(e, x); };
  const PlaneDensity inv = [](double e, double x) { return 1.0 / conformal_factor_full(e, x); };
  const PlaneDensity one = [](double, double) { return 1.0; };
  double worst_phi = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 50; ++i) {
    const PlanePoint p = to_plane(gen.next());
    worst_phi = std::max(worst_phi, liouville_residual(phi, p.eta, p.xi, k).normalized());
    worst_inv = std::max(worst_inv, liouville_residual(inv, p.eta, p.xi, k).normalized());
  }
  CHECK(worst_inv <= 1e-6);
  CHECK(worst_phi > 1e-2);
  // phi = 1: the residual is the Laplacian of F, which does not vanish.
  CHECK(liouville_residual(one, 1.0, 2.0, k).value > 1e-3);
}

TEST_CASE("Liouville in three dimensions") {
  oracle::States gen(37);
  const Couplings k{1, 1, 1, 1};
  const SpaceDensity inv = [](const Vec3& x) { return 1.0 / conformal_factor_full(x); };
  for (int i = 0; i < 50; ++i) {
    CHECK(liouville_residual_3d(inv, gen.next(), k).within(1e-6));
  }
}
