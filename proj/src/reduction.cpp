#include "aristo/reduction.hpp"

#include <cmath>
#include <numbers>

#include "aristo/model.hpp"
#include "aristo/numdiff.hpp"

namespace aristo {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kSqrt6 = std::sqrt(6.0);

bool tiny(double x, double scale) { return std::abs(x) <= 1e-14 * std::max(1.0, scale); }

}  // namespace

Eigen::Matrix3d plane_basis() {
  Eigen::Matrix3d m;
  m << 1.0 / kSqrt3, 1.0 / kSqrt3, 1.0 / kSqrt3,
       1.0 / kSqrt2, -1.0 / kSqrt2, 0.0,
       1.0 / kSqrt6, 1.0 / kSqrt6, -2.0 / kSqrt6;
  return m;
}

PlanePoint to_plane(const Vec3& x) {
  return PlanePoint{(x[0] + x[1] + x[2]) / kSqrt3, (x[0] - x[1]) / kSqrt2,
                    (x[0] + x[1] - 2.0 * x[2]) / kSqrt6};
}

PlanePoint to_plane(const State3& s) {
  if (!s.is_real()) throw Error(ErrorKind::InvalidArgument, "plane coordinates need a real state");
  return to_plane(s.real());
}

Vec3 from_plane(const PlanePoint& p) {
  const double z = p.zeta / kSqrt3;
  const double e = p.eta / kSqrt2;
  const double x = p.xi / kSqrt6;
  return Vec3(z + e + x, z - e + x, z - 2.0 * x);
}

PlaneVelocity reduced_rhs(double eta, double xi, const Couplings& k) {
  const double plus = kSqrt3 * xi + eta;
  const double minus = kSqrt3 * xi - eta;
  const double scale = std::abs(eta) + std::abs(xi);
  if (tiny(eta, scale) || tiny(plus, scale) || tiny(minus, scale)) {
    throw Error(ErrorKind::ReducedSingular, "eta = 0 or sqrt3 xi = +-eta");
  }
  return PlaneVelocity{k.c / eta + k.b / plus - k.a / minus, kSqrt3 * (k.b / plus + k.a / minus)};
}

double reduced_potential(double eta, double xi, const Couplings& k) {
  const double plus = kSqrt3 * xi + eta;
  const double minus = kSqrt3 * xi - eta;
  if (!(eta > 0.0 && plus > 0.0 && minus > 0.0)) {
    throw Error(ErrorKind::NonPositiveLogArgument, "need eta > 0 and sqrt3 xi > |eta|");
  }
  return k.c * std::log(eta) + k.b * std::log(plus) + k.a * std::log(minus);
}

PlaneVelocity grad_reduced_potential(double eta, double xi, const Couplings& k) {
  const double plus = kSqrt3 * xi + eta;
  const double minus = kSqrt3 * xi - eta;
  // d/d eta: c/eta + b/plus - a/minus;  d/d xi: sqrt3 b/plus + sqrt3 a/minus
  return PlaneVelocity{k.c / eta + k.b / plus - k.a / minus,
                       k.b * kSqrt3 / plus + k.a * kSqrt3 / minus};
}

double characteristic_slope(double eta, double xi, const Couplings& k) {
  const double den = k.sum() * eta * eta + kSqrt3 * (k.a - k.b) * eta * xi - 3.0 * k.c * xi * xi;
  const double num = kSqrt3 * (k.a - k.b) * eta * eta + 3.0 * (k.a + k.b) * eta * xi;
  const double scale = (std::abs(k.sum()) + std::abs(k.a - k.b) * kSqrt3 + 3.0 * std::abs(k.c)) *
                       (eta * eta + xi * xi);
  if (std::abs(den) <= 1e-14 * scale) {
    throw Error(ErrorKind::VerticalSlope, "characteristic denominator vanishes");
  }
  return -num / den;
}

double conformal_factor_full(double eta, double xi) {
  const double den = kSqrt3 * eta * (3.0 * xi * xi - eta * eta);
  const double scale = std::pow(std::abs(eta) + std::abs(xi), 3);
  if (std::abs(den) <= 1e-14 * scale) {
    throw Error(ErrorKind::ConformalSingular, "eta (3 xi^2 - eta^2) = 0");
  }
  return 1.0 / den;
}

double conformal_factor_full(const Vec3& x) {
  const double den = kSqrt6 * (x[0] - x[1]) * (x[1] - x[2]) * (x[2] - x[0]);
  if (den == 0.0) throw Error(ErrorKind::ConformalSingular, "two coordinates coincide");
  return -1.0 / den;
}

double h_full_plane(double eta, double xi) { return xi * xi * xi - 3.0 * xi * eta * eta; }

Residual liouville_residual(const PlaneDensity& phi, double eta, double xi, const Couplings& k) {
  const PlaneVelocity vel = reduced_rhs(eta, xi, k);
  const double dphi_deta = numdiff::central([&](double e) { return phi(e, xi); }, eta);
  const double dphi_dxi = numdiff::central([&](double x) { return phi(eta, x); }, xi);
  // Laplacian of F as the divergence of its gradient, the reduced velocity.
  const double div = numdiff::central([&](double e) { return reduced_rhs(e, xi, k).eta; }, eta) +
                     numdiff::central([&](double x) { return reduced_rhs(eta, x, k).xi; }, xi);
  const double value = phi(eta, xi);
  const double t1 = vel.eta * dphi_deta;
  const double t2 = vel.xi * dphi_dxi;
  const double t3 = value * div;
  return Residual{std::abs(t1 + t2 + t3), std::abs(t1) + std::abs(t2) + std::abs(t3)};
}

Residual liouville_residual_3d(const SpaceDensity& phi, const Vec3& x, const Couplings& k) {
  const auto field = [&](const Vec3& y) -> Vec3 { return auxiliary_rhs(State3(y), k).real(); };
  const Vec3 U = field(x);
  const double value = phi(x);
  double total = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto along = [&](double t) {
      Vec3 y = x;
      y[i] = t;
      return y;
    };
    const double dphi = numdiff::central([&](double t) { return phi(along(t)); }, x[i]);
    const double dU = numdiff::central([&](double t) { return field(along(t))[i]; }, x[i]);
    const double a = U[i] * dphi;
    const double b = value * dU;
    total += a + b;
    scale += std::abs(a) + std::abs(b);
  }
  return Residual{std::abs(total), scale};
}

}  // namespace aristo
