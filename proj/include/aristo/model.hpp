#pragma once

#include "aristo/types.hpp"

namespace aristo {

/// min(|u-v|, |v-w|, |w-u|).
double min_separation(const State3& s);

/// Right-hand side of the physical (rotating) model in the variables (x, y, z):
///   x' = i w x + c/(x-y) + b/(x-z), and cyclically.
/// Throws SeparationTooSmall when two bodies are closer than `eps_sep`, and
/// InvalidOmega for a negative frequency (omega = 0 is the static limit).
CVec3 physical_rhs(const State3& xyz, const Couplings& k, double eps_sep = kDefaultSeparation);

/// Right-hand side of the auxiliary model (derivative in complexified time):
///   u' = c/(u-v) + b/(u-w),  v' = a/(v-w) + c/(v-u),  w' = b/(w-u) + a/(w-v).
/// Homogeneous of degree -1 and its components always sum to zero.
CVec3 auxiliary_rhs(const State3& s, const Couplings& k, double eps_sep = kDefaultSeparation);

/// Complexified time reached at physical time t: tau(t) = -exp(-2 i w t) / (2 i w).
Complex tau_of_time(double t, double omega);

/// Maps a physical point (t, x) to (tau, u) with u = exp(-i w t) x.
ExtendedPoint to_auxiliary(double t, const State3& xyz, const Couplings& k);

struct PhysicalPoint {
  double t = 0.0;
  State3 state{};
};

/// Inverse of to_auxiliary on the principal branch.
///
/// tau determines t only modulo pi/omega, since (t + pi/omega, -x) has the same
/// image as (t, x). The returned time lies in [0, pi/omega). Throws TauOffCurve
/// when |2 omega tau| differs from 1 by more than `tol`.
PhysicalPoint from_auxiliary(const ExtendedPoint& p, const Couplings& k, double tol = 1e-9);

}  // namespace aristo
