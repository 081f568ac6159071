#pragma once

// Poisson tensors in three dimensions, the time-extended bivector on
// (tau, u, v, w), and the finite-difference residual engines that audit
// Jacobi identities, Hamilton's equations and symmetry brackets.

#include <functional>
#include <string>

#include "aristo/check.hpp"
#include "aristo/conserved.hpp"
#include "aristo/types.hpp"

namespace aristo {

/// Real 3x3 skew matrix stored by its three upper entries.
class SkewTensor3 {
 public:
  SkewTensor3() = default;
  SkewTensor3(double p01, double p02, double p12) : p01_(p01), p02_(p02), p12_(p12) {}

  /// hat(a) b = a x b.
  static SkewTensor3 hat(const Vec3& a) { return SkewTensor3(-a[2], a[1], -a[0]); }

  double operator()(int i, int j) const;
  Eigen::Matrix3d matrix() const;
  Vec3 apply(const Vec3& g) const { return matrix() * g; }

  /// Pi P Pi^T for the transposition swapping coordinates i and j.
  SkewTensor3 conjugated(int i, int j) const;

  SkewTensor3 operator+(const SkewTensor3& o) const {
    return SkewTensor3(p01_ + o.p01_, p02_ + o.p02_, p12_ + o.p12_);
  }
  SkewTensor3 operator-(const SkewTensor3& o) const {
    return SkewTensor3(p01_ - o.p01_, p02_ - o.p02_, p12_ - o.p12_);
  }
  friend SkewTensor3 operator*(double s, const SkewTensor3& t) {
    return SkewTensor3(s * t.p01_, s * t.p02_, s * t.p12_);
  }

 private:
  double p01_ = 0.0;
  double p02_ = 0.0;
  double p12_ = 0.0;
};

using ScalarField3 = std::function<double(const Vec3&)>;
using GradientField3 = std::function<Vec3(const Vec3&)>;

struct TensorField3 {
  std::string name;
  std::function<SkewTensor3(const Vec3&)> eval;
  std::function<bool(const Vec3&)> admissible = [](const Vec3&) { return true; };

  SkewTensor3 operator()(const Vec3& x) const { return eval(x); }
};

/// The tensor hat(phi grad H): its action on grad G is phi grad H x grad G.
TensorField3 cross_tensor(std::string name, ScalarField3 phi, GradientField3 grad_h);

/// Tensor fields of the symmetric cases, exactly as printed.
SkewTensor3 p_f1(const Vec3& x);
SkewTensor3 p_f2(const Vec3& x);
SkewTensor3 p_s1(const Vec3& x, MuConstant mu, double c);
SkewTensor3 p_s2(const Vec3& x, MuConstant mu, double c);
SkewTensor3 p_n1(const Vec3& x);
SkewTensor3 p_n2(const Vec3& x);

TensorField3 field_p_f1();
TensorField3 field_p_f2();
TensorField3 field_p_s1(MuConstant mu, double c);
TensorField3 field_p_s2(MuConstant mu, double c);
TensorField3 field_p_n1();
TensorField3 field_p_n2();

/// Sum of tensor fields, and pointwise conjugation x -> Pi P(x) Pi^T by the
/// transposition of coordinates i and j. Names are composed.
TensorField3 operator+(const TensorField3& a, const TensorField3& b);
TensorField3 conjugated(const TensorField3& p, int i, int j);

/// The single independent Jacobi component in three dimensions,
///   sum_l P^{0l} d_l P^{12} + P^{1l} d_l P^{20} + P^{2l} d_l P^{01},
/// with scale sum |P^{il} d_l P^{jk}|. Derivatives by central differences.
Residual jacobi_residual(const TensorField3& p, const Vec3& x);

/// Jacobi residual of p1 + p2.
Residual compatibility_residual(const TensorField3& p1, const TensorField3& p2, const Vec3& x);

struct HamiltonFit {
  double kappa = 0.0;     ///< least-squares kappa in P grad H ~ kappa U
  double residual = 0.0;  ///< |P grad H - kappa U|
  double u_norm = 0.0;    ///< |U|
};

HamiltonFit hamilton_residual(const TensorField3& p, const GradientField3& grad_h, const Vec3& x,
                              const Couplings& k);

// --- Time-extended structure on (tau, u, v, w) -----------------------------

using Vec4c = Eigen::Matrix<Complex, 4, 1>;
using Mat4c = Eigen::Matrix<Complex, 4, 4>;

/// Antisymmetric 4x4 bivector over (tau, u, v, w).
struct ExtendedBivector {
  Mat4c m = Mat4c::Zero();
};

/// Lambda^{0i} = V^i, Lambda^{ij} = U^i E^j - E^i U^j.
ExtendedBivector assemble_bivector(const CVec3& v, const CVec3& u, const CVec3& e);

/// The bivector with V = E - 2 tau U and E the Euler field.
ExtendedBivector extended_lambda(const ExtendedPoint& p, const Couplings& k);

using BivectorField4 = std::function<ExtendedBivector(const ExtendedPoint&)>;
using VectorField4 = std::function<Vec4c(const ExtendedPoint&)>;

/// Worst of the four Jacobi components (012), (013), (023), (123).
Residual bivector_jacobi_residual(const BivectorField4& field, const ExtendedPoint& p);
Residual extended_jacobi_residual(const ExtendedPoint& p, const Couplings& k);

/// X^mu = sum_nu Lambda^{mu nu} dH_nu.
Vec4c hamiltonian_vector(const ExtendedBivector& lambda, const ExtendedGradient& dh);

/// The suspended field (1, U).
Vec4c suspended_field(const ExtendedPoint& p, const Couplings& k);
/// (0, E - 2 tau U).
Vec4c symmetry_field(const ExtendedPoint& p, const Couplings& k);

/// Gradient of H = (1/2) ln H2. Throws VanishingH2 where H2 vanishes.
ExtendedGradient d_half_log_h2(const ExtendedPoint& p, const Couplings& k);

/// |Lambda(dH) - (1, U)| for H = (1/2) ln H2.
Residual extended_hamilton_residual(const ExtendedPoint& p, const Couplings& k);
/// Single-point CheckResult wrapper of extended_hamilton_residual.
CheckResult extended_hamilton_check(const ExtendedPoint& p, const Couplings& k, double tol = 1e-10);

/// Max component of [X, Y] by central differences.
Residual lie_bracket_residual(const VectorField4& x, const VectorField4& y, const ExtendedPoint& p);
/// [d_tau + U, E - 2 tau U].
Residual symmetry_commutator_residual(const ExtendedPoint& p, const Couplings& k);

}  // namespace aristo
