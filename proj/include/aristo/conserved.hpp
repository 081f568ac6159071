#pragma once

// Conserved quantities of the auxiliary and physical models, the logarithmic
// potential, and the time-independent first integrals for each coupling case.
//
// Every first integral comes with an analytic gradient. Conservation is tested
// as a vanishing directional derivative U . grad h, which involves only
// rational expressions and so never depends on a logarithm branch. Values of
// logarithms use the principal branch and are for display.

#include <functional>
#include <optional>
#include <string>

#include "aristo/roots.hpp"
#include "aristo/types.hpp"

namespace aristo {

/// Gradient in the time-extended space: (d/dtau, d/du, d/dv, d/dw).
struct ExtendedGradient {
  Complex dtau{};
  CVec3 grad = CVec3::Zero();
};

Complex h1(const State3& s);
Complex h2_aux(const ExtendedPoint& p, const Couplings& k);
Complex h3_aux(const ExtendedPoint& p, const Couplings& k);

ExtendedGradient d_h1(const ExtendedPoint& p);
ExtendedGradient d_h2_aux(const ExtendedPoint& p, const Couplings& k);
ExtendedGradient d_h3_aux(const ExtendedPoint& p, const Couplings& k);

/// d/dtau h + grad h . U at the point, with the magnitude of the summed terms.
Residual suspended_derivative(const ExtendedGradient& dh, const ExtendedPoint& p, const Couplings& k);

/// exp(-i w t)(x + y + z).
Complex h1_physical(double t, const State3& xyz, const Couplings& k);
/// (1/4) exp(-4 i w t)(x^2 + y^2 + z^2) - (a+b+c) t, exactly as printed.
/// Not conserved by the physical flow.
Complex h2_physical_printed(double t, const State3& xyz, const Couplings& k);
/// h2_aux composed with the transformation to the auxiliary model:
///   exp(-2 i w t)(x^2 + y^2 + z^2) + (a+b+c) exp(-2 i w t) / (i w).
Complex h2_physical_composed(double t, const State3& xyz, const Couplings& k);

/// F = a ln(v-w) + b ln(u-w) + c ln(u-v), principal branch per factor.
Complex potential(const State3& s, const Couplings& k);
/// Branch-free gradient of the potential.
CVec3 grad_potential(const State3& s, const Couplings& k);

struct MuConstant {
  double value = 0.0;
};
struct KConstant {
  double value = 0.0;
};

/// mu = (2a + c)/(8a + c). Requires a = b (NotSemiSymmetric otherwise) and 8a + c != 0.
MuConstant mu_of(const Couplings& k);
/// k = (a + b)/(sqrt(3)(a - b)). Throws EqualCouplings when a = b.
KConstant k_of(const Couplings& k);

/// (1/(6 sqrt 6)) (u+v-2w) [(u+v-2w)^2 - 9 (u-v)^2].
Complex h_full(const State3& s);
CVec3 grad_h_full(const State3& s);

/// (u+v-2w)^(2mu/(1-mu)) [(u+v-2w)^2 - 3/(4mu-1) (u-v)^2].
///
/// Throws MuExcluded for mu in {1/4, 1} and NegativeBase when the state is real,
/// u+v-2w <= 0 and the exponent is not an integer. Complex states use the
/// principal branch.
Complex h_semi(const State3& s, MuConstant mu);
CVec3 grad_h_semi(const State3& s, MuConstant mu);

/// (1/4)(u+v-2w)(u-v)^3.
Complex h_noninteracting_equal(const State3& s);
CVec3 grad_h_noninteracting_equal(const State3& s);

/// First integral for c = 0, a != b:
///   2r ln((u-v)/sqrt2) + (r-k) ln(theta - r + 2k) + (r+k) ln(theta + r + 2k),
/// with r = sqrt(4k^2 - 1) and theta = (u+v-2w)/(sqrt3 (u-v)).
/// Throws DegenerateRoot when 4k^2 = 1 and SeparationTooSmall when u = v.
Complex h_noninteracting_general(const State3& s, KConstant k);
CVec3 grad_h_noninteracting_general(const State3& s, KConstant k);

/// Sign of the three theta-logarithm terms relative to the ln((u-v)/sqrt2) term.
enum class LogTermSign {
  Printed,            ///< coefficients exactly as printed; not a first integral
  ResidueConsistent,  ///< negated log terms, matching the partial-fraction residues
};

/// Four-logarithm first integral for generic couplings (c != 0), built from the
/// cubic roots theta_1..3 and numerator roots theta_+- of the profile.
///
/// Throws ZeroCouplingC without valid roots, DegenerateRoots for repeated roots,
/// SingularDirection on a line theta = theta_real and SeparationTooSmall for u = v.
Complex h_general(const State3& s, const RootProfile& roots,
                  LogTermSign sign = LogTermSign::ResidueConsistent);
CVec3 grad_h_general(const State3& s, const RootProfile& roots,
                     LogTermSign sign = LogTermSign::ResidueConsistent);

/// A time-independent first integral with its gradient.
struct FirstIntegral {
  std::string name;
  std::function<Complex(const State3&)> value;
  std::function<CVec3(const State3&)> gradient;
};

/// The fundamental time-independent first integral applicable to the couplings
/// (h_full, h_semi, h_noninteracting_equal, h_noninteracting_general or
/// h_general), or nothing for excluded couplings.
std::optional<FirstIntegral> fundamental_integral(const Couplings& k);

/// |U . grad h| with scale sum_i |U_i d_i h|.
Residual directional_residual(const CVec3& gradient, const State3& s, const Couplings& k);

}  // namespace aristo
