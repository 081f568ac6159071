#pragma once

// Parameter machinery for the time-independent first integral with generic
// couplings: the shifted parameters (p, q), the cubic and quadratic whose roots
// enter the partial-fraction form of the integral, discriminants, and the
// coupling classification.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aristo/types.hpp"

namespace aristo {

struct ShiftParams {
  double p = 0.0;  ///< (a - b) / (sqrt(3) c)
  double q = 0.0;  ///< (a + b) / (3 c)
};

/// Throws ZeroCouplingC when c = 0.
ShiftParams pq_of(const Couplings& k);

/// lambda = -p (p^2 + 18 q + 15) + sqrt(27 p^4 + 6 p^2 (6 (13 - 3q) q + 37) - (1 + 12 q)^3),
/// principal complex square root.
Complex lambda_of(double p, double q);

/// Coefficients (P, Q) of the depressed cubic t^3 + P t + Q in the shifted variable.
std::pair<double, double> depressed_coefficients(double p, double q);

/// Value of the depressed cubic at t.
Complex depressed_cubic(double p, double q, Complex t);

struct CubicRoots {
  /// Roots in the shifted variable, ordered (first, plus, minus) as produced by
  /// the closed form; after a fallback they are in solver order.
  std::array<Complex, 3> roots{};
  double max_residual = 0.0;  ///< max |cubic(root)| / scale
  int branch = 0;             ///< chosen cube-root branch k in lambda^(1/3) * exp(2 pi i k / 3)
  bool fallback = false;      ///< true when the closed form was abandoned
  std::string note;
};

/// Roots of the depressed cubic by the closed form in lambda. The cube-root
/// branch is the one (of three) with the smallest maximum residual. When
/// lambda vanishes or no branch reaches `tol` the roots come from a
/// companion-matrix eigen solve and `fallback` is set.
CubicRoots cubic_roots(double p, double q, double tol = 1e-10);

/// Roots of the numerator quadratic t^2 - (p/3) t - (2 p^2 + 9 q + 3)/9,
/// shifted back to the unshifted variable theta = t + p/3.
std::pair<Complex, Complex> numerator_roots(double p, double q);

/// Discriminant of the depressed cubic as printed:
///   4 (-27 p^4 + 6 p^2 (-37 + 6 q (-13 + 3 q)) + (1 + 12 q)^3) / 27.
double discriminant(double p, double q);

/// Printed discriminant of Delta viewed as a quadratic in p^2:
///   -16777216 (1 + 3q)^2 (7 + 3q)^6 (1 + 12 q)^3 / 177147.
double denp_value(double q);

/// The same discriminant recomputed from the printed Delta: B^2 - 4 A C for
/// Delta = A X^2 + B X + C with X = p^2. Equals 256 (1+3q)(7+3q)^3 / 81.
double denp_recomputed(double q);

/// mu for a = b on the locus q = (a+b)/(3c): mu = (3q + 1)/(12 q + 1).
std::optional<double> semi_symmetric_mu_at(double q);

struct SpecialLocus {
  double printed_q = 0.0;
  std::string printed_constraint;
  std::optional<double> printed_mu;   ///< semi-symmetric mu quoted for this locus, if any
  double audited_q = 0.0;             ///< zero of the printed factor this entry pairs with
  std::optional<double> audited_mu;   ///< (3q+1)/(12q+1) at the printed q
  bool q_consistent = false;          ///< printed q is a zero of the printed factors
  bool mu_consistent = false;
  std::string note;
};

/// Printed special loci q = -1/3, -3/7, -1/12 with their coupling constraints,
/// audited against the zeros of the printed denp factors.
std::vector<SpecialLocus> special_loci();

/// True iff the state is not perpendicular to (1 - sqrt3 t, 1 + sqrt3 t, -2).
bool singular_direction_ok(const State3& s, double theta_real, double tol = 1e-9);

enum class CouplingCase { FullSymmetric, SemiSymmetric, NonInteracting, Generic, Excluded };

const char* to_string(CouplingCase c);

struct RootProfile {
  Couplings couplings{};
  CouplingCase case_label = CouplingCase::Generic;
  std::optional<ShiftParams> pq;
  std::optional<Complex> lambda;
  /// Cubic roots in the unshifted variable theta = xi/eta, as (first, plus, minus).
  std::array<Complex, 3> theta{};
  /// Numerator quadratic roots in theta.
  std::array<Complex, 2> numerator{};
  std::optional<double> delta;
  double root_residual = 0.0;
  bool roots_valid = false;
  bool repeated_roots = false;  ///< |Delta| below 1e-12 of its natural scale
  std::optional<double> mu;  ///< when a = b
  std::optional<double> k;   ///< when a != b and c = 0
  std::vector<std::string> notes;

  /// Roots of the cubic that are real to within `tol`.
  std::vector<double> real_roots(double tol = 1e-9) const;
};

/// Classifies couplings and assembles the full root profile. Never throws.
RootProfile classify(const Couplings& k);

}  // namespace aristo
