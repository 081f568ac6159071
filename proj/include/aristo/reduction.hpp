#pragma once

// Orthonormal coordinates adapted to the centre of mass, the reduced planar
// gradient flow on level sets of u+v+w, and the density/symplectic residuals.

#include <functional>

#include "aristo/types.hpp"

namespace aristo {

/// zeta = (u+v+w)/sqrt3, eta = (u-v)/sqrt2, xi = (u+v-2w)/sqrt6.
struct PlanePoint {
  double zeta = 0.0;
  double eta = 0.0;
  double xi = 0.0;
};

struct PlaneVelocity {
  double eta = 0.0;
  double xi = 0.0;
};

/// Rows are grad zeta, grad eta, grad xi. Orthogonal.
Eigen::Matrix3d plane_basis();

PlanePoint to_plane(const Vec3& x);
/// Throws InvalidArgument for a state with non-zero imaginary parts.
PlanePoint to_plane(const State3& s);
Vec3 from_plane(const PlanePoint& p);

/// Reduced flow (eta', xi'). Throws ReducedSingular when eta or sqrt3 xi +- eta vanish.
PlaneVelocity reduced_rhs(double eta, double xi, const Couplings& k);

/// F = c ln eta + b ln(sqrt3 xi + eta) + a ln(sqrt3 xi - eta) on the sector
/// where all three arguments are positive (NonPositiveLogArgument otherwise).
double reduced_potential(double eta, double xi, const Couplings& k);
/// Logarithmic-derivative gradient of reduced_potential; equals reduced_rhs.
PlaneVelocity grad_reduced_potential(double eta, double xi, const Couplings& k);

/// d xi / d eta along the reduced flow. Throws VerticalSlope when the
/// denominator (a+b+c) eta^2 + sqrt3 (a-b) eta xi - 3c xi^2 vanishes.
double characteristic_slope(double eta, double xi, const Couplings& k);

/// phi_f = 1/(sqrt3 eta (3 xi^2 - eta^2)). Throws ConformalSingular on its poles.
double conformal_factor_full(double eta, double xi);
/// The same factor on (u, v, w): -1/(sqrt6 (u-v)(v-w)(w-u)).
double conformal_factor_full(const Vec3& x);

/// h_f = xi^3 - 3 xi eta^2.
double h_full_plane(double eta, double xi);

using PlaneDensity = std::function<double(double eta, double xi)>;
using SpaceDensity = std::function<double(const Vec3&)>;

/// eta' d(phi)/d eta + xi' d(phi)/d xi + phi Laplacian(F), with density
/// derivatives and the Laplacian by central differences.
Residual liouville_residual(const PlaneDensity& phi, double eta, double xi, const Couplings& k);

/// U . grad(phi) + phi div U in three dimensions, by central differences.
Residual liouville_residual_3d(const SpaceDensity& phi, const Vec3& x, const Couplings& k);

}  // namespace aristo
