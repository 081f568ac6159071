#include "aristo/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace aristo {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr Complex kI{0.0, 1.0};

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

// Term magnitudes of the cubic at the largest root, so a root near zero is
// judged against the size of the whole root set rather than its own.
double cubic_scale(double p, double q, const std::array<Complex, 3>& r) {
  const auto [P, Q] = depressed_coefficients(p, q);
  double at = 0.0;
  for (const Complex& t : r) at = std::max(at, std::abs(t));
  return at * at * at + std::abs(P) * at + std::abs(Q);
}

double max_relative_residual(double p, double q, const std::array<Complex, 3>& r) {
  const double s = cubic_scale(p, q, r);
  double worst = 0.0;
  for (const Complex& t : r) {
    const double res = std::abs(depressed_cubic(p, q, t));
    worst = std::max(worst, s > 0.0 ? res / s : res);
  }
  return worst;
}

std::array<Complex, 3> companion_roots(double P, double Q) {
  Eigen::Matrix3d companion;
  companion << 0.0, 0.0, -Q,
               1.0, 0.0, -P,
               0.0, 1.0, 0.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  const auto ev = solver.eigenvalues();
  return {ev[0], ev[1], ev[2]};
}

}  // namespace

const char* to_string(CouplingCase c) {
  switch (c) {
    case CouplingCase::FullSymmetric: return "full_symmetric";
    case CouplingCase::SemiSymmetric: return "semi_symmetric";
    case CouplingCase::NonInteracting: return "noninteracting";
    case CouplingCase::Generic: return "generic";
    case CouplingCase::Excluded: return "excluded";
  }
  return "unknown";
}

ShiftParams pq_of(const Couplings& k) {
  if (k.c == 0.0) {
    throw Error(ErrorKind::ZeroCouplingC, "p and q are undefined for c = 0");
  }
  return ShiftParams{(k.a - k.b) / (kSqrt3 * k.c), (k.a + k.b) / (3.0 * k.c)};
}

Complex lambda_of(double p, double q) {
  const double p2 = p * p;
  const double s = 1.0 + 12.0 * q;
  const double radicand = 27.0 * p2 * p2 + 6.0 * p2 * (6.0 * (13.0 - 3.0 * q) * q + 37.0) - s * s * s;
  return -p * (p2 + 18.0 * q + 15.0) + std::sqrt(Complex(radicand, 0.0));
}

std::pair<double, double> depressed_coefficients(double p, double q) {
  const double P = -(p * p + 12.0 * q + 1.0) / 3.0;
  const double Q = -2.0 * p * (p * p + 18.0 * q + 15.0) / 27.0;
  return {P, Q};
}

Complex depressed_cubic(double p, double q, Complex t) {
  const auto [P, Q] = depressed_coefficients(p, q);
  return (t * t + P) * t + Q;
}

CubicRoots cubic_roots(double p, double q, double tol) {
  CubicRoots out;
  const Complex lambda = lambda_of(p, q);
  const double K = 1.0 + p * p + 12.0 * q;
  const Complex vs_plus(1.0, kSqrt3);
  const Complex vs_minus(1.0, -kSqrt3);

  if (std::abs(lambda) > 1e-300) {
    const Complex principal = std::pow(lambda, 1.0 / 3.0);
    double best = std::numeric_limits<double>::infinity();
    for (int branch = 0; branch < 3; ++branch) {
      const Complex r = principal * std::exp(2.0 * std::numbers::pi * kI * double(branch) / 3.0);
      const Complex r2 = r * r;
      std::array<Complex, 3> cand{
          -(K + r2) / (3.0 * r),
          (vs_plus * K + vs_minus * r2) / (6.0 * r),
          (vs_minus * K + vs_plus * r2) / (6.0 * r),
      };
      const double res = max_relative_residual(p, q, cand);
      if (res < best) {
        best = res;
        out.roots = cand;
        out.branch = branch;
      }
    }
    out.max_residual = best;
    if (best <= tol) return out;
    out.note = "closed form residual " + std::to_string(best) + " above tolerance; ";
  } else {
    out.note = "lambda vanishes; ";
  }

  const auto [P, Q] = depressed_coefficients(p, q);
  out.roots = companion_roots(P, Q);
  out.max_residual = max_relative_residual(p, q, out.roots);
  out.fallback = true;
  out.branch = -1;
  out.note += "roots from companion matrix";
  return out;
}

std::pair<Complex, Complex> numerator_roots(double p, double q) {
  // t^2 - (p/3) t - (2p^2 + 9q + 3)/9 = 0
  const double B = -p / 3.0;
  const double C = -(2.0 * p * p + 9.0 * q + 3.0) / 9.0;
  const Complex disc = std::sqrt(Complex(B * B - 4.0 * C, 0.0));
  const Complex t_plus = (-B + disc) / 2.0;
  const Complex t_minus = (-B - disc) / 2.0;
  return {t_plus + p / 3.0, t_minus + p / 3.0};
}

double discriminant(double p, double q) {
  const double p2 = p * p;
  const double s = 1.0 + 12.0 * q;
  return 4.0 * (-27.0 * p2 * p2 + 6.0 * p2 * (-37.0 + 6.0 * q * (-13.0 + 3.0 * q)) + s * s * s) / 27.0;
}

double denp_value(double q) {
  const double f1 = 1.0 + 3.0 * q;
  const double f2 = 7.0 + 3.0 * q;
  const double f3 = 1.0 + 12.0 * q;
  return -16777216.0 * f1 * f1 * std::pow(f2, 6) * f3 * f3 * f3 / 177147.0;
}

double denp_recomputed(double q) {
  const double A = 4.0 * -27.0 / 27.0;
  const double B = 4.0 * 6.0 * (-37.0 + 6.0 * q * (-13.0 + 3.0 * q)) / 27.0;
  const double s = 1.0 + 12.0 * q;
  const double C = 4.0 * s * s * s / 27.0;
  return B * B - 4.0 * A * C;
}

std::optional<double> semi_symmetric_mu_at(double q) {
  const double den = 12.0 * q + 1.0;
  if (std::abs(den) < 1e-14) return std::nullopt;
  return (3.0 * q + 1.0) / den;
}

std::vector<SpecialLocus> special_loci() {
  struct Printed {
    double q;
    const char* constraint;
    std::optional<double> mu;
  };
  const Printed printed[] = {
      {-1.0 / 3.0, "a+b+c=0", 0.0},
      {-3.0 / 7.0, "7(a+b)+9c=0", 1.0 / 29.0},
      {-1.0 / 12.0, "4(a+b)+c=0", std::nullopt},
  };
  // Zeros of the printed factors (1+3q), (7+3q), (1+12q), in that order.
  const double zeros[] = {-1.0 / 3.0, -7.0 / 3.0, -1.0 / 12.0};

  std::vector<SpecialLocus> out;
  // The printed values are listed in the same order as the factors they are
  // meant to annihilate, so entry i is audited against the zero of factor i.
  for (std::size_t i = 0; i < std::size(printed); ++i) {
    const Printed& pr = printed[i];
    const double best = zeros[i];
    SpecialLocus loc;
    loc.printed_q = pr.q;
    loc.printed_constraint = pr.constraint;
    loc.printed_mu = pr.mu;
    loc.audited_q = best;
    loc.q_consistent = std::min({std::abs(1.0 + 3.0 * pr.q), std::abs(7.0 + 3.0 * pr.q),
                                 std::abs(1.0 + 12.0 * pr.q)}) <= 1e-12;
    loc.audited_mu = semi_symmetric_mu_at(pr.q);
    if (pr.mu && loc.audited_mu) {
      loc.mu_consistent = nearly_equal(*pr.mu, *loc.audited_mu);
    } else {
      loc.mu_consistent = !pr.mu && !loc.audited_mu;
    }
    std::string note;
    if (!loc.q_consistent) {
      note += "printed q=" + std::to_string(pr.q) + " is not a zero of the printed factors; the matching factor vanishes at q=" +
              std::to_string(best) + ". ";
    }
    if (!loc.mu_consistent) {
      note += "semi-symmetric mu on this locus is " +
              (loc.audited_mu ? std::to_string(*loc.audited_mu) : std::string("undefined")) +
              ", printed " + (pr.mu ? std::to_string(*pr.mu) : std::string("none")) + ".";
    }
    loc.note = note;
    out.push_back(std::move(loc));
  }
  return out;
}

bool singular_direction_ok(const State3& s, double theta_real, double tol) {
  const Complex dot = s.u * (1.0 - kSqrt3 * theta_real) + s.v * (1.0 + kSqrt3 * theta_real) - 2.0 * s.w;
  const double scale = std::abs(s.u) + std::abs(s.v) + 2.0 * std::abs(s.w);
  return std::abs(dot) > tol * std::max(1.0, scale);
}

std::vector<double> RootProfile::real_roots(double tol) const {
  std::vector<double> out;
  if (!roots_valid) return out;
  for (const Complex& t : theta) {
    if (std::abs(t.imag()) <= tol * std::max(1.0, std::abs(t))) out.push_back(t.real());
  }
  return out;
}

RootProfile classify(const Couplings& k) {
  RootProfile prof;
  prof.couplings = k;
  const bool ab = nearly_equal(k.a, k.b);

  if (ab) {
    if (k.c == 0.0 && k.a != 0.0) {
      prof.mu = 0.25;
      prof.notes.push_back("mu = 1/4 (c = 0) is excluded for the semi-symmetric Hamiltonian");
    } else if (8.0 * k.a + k.c != 0.0) {
      prof.mu = (2.0 * k.a + k.c) / (8.0 * k.a + k.c);
    }
  } else if (k.c == 0.0) {
    prof.k = (k.a + k.b) / (kSqrt3 * (k.a - k.b));
  }

  if (k.c == 0.0) {
    prof.case_label = (k.a == 0.0 && k.b == 0.0) ? CouplingCase::Excluded : CouplingCase::NonInteracting;
    prof.notes.push_back("c = 0: p, q, lambda and Delta are undefined");
    return prof;
  }

  const ShiftParams pq = pq_of(k);
  prof.pq = pq;
  prof.lambda = lambda_of(pq.p, pq.q);
  prof.delta = discriminant(pq.p, pq.q);

  const CubicRoots cr = cubic_roots(pq.p, pq.q);
  for (int i = 0; i < 3; ++i) prof.theta[i] = cr.roots[i] + pq.p / 3.0;
  const auto [np, nm] = numerator_roots(pq.p, pq.q);
  prof.numerator = {np, nm};
  prof.root_residual = cr.max_residual;
  prof.roots_valid = cr.max_residual <= 1e-10;
  if (!cr.note.empty()) prof.notes.push_back(cr.note);

  if (ab && nearly_equal(k.a, k.c)) {
    prof.case_label = CouplingCase::FullSymmetric;
  } else if (ab) {
    if (k.a == 0.0) {
      prof.case_label = CouplingCase::Excluded;
      prof.notes.push_back("a = b = 0 (mu = 1): the motion of w decouples");
    } else {
      prof.case_label = CouplingCase::SemiSymmetric;
    }
  } else {
    prof.case_label = CouplingCase::Generic;
  }

  const auto [P, Q] = depressed_coefficients(pq.p, pq.q);
  const double dscale = 4.0 * std::abs(P * P * P) + 27.0 * Q * Q;
  if (std::abs(*prof.delta) < 1e-12 * std::max(1.0, dscale)) {
    prof.case_label = CouplingCase::Excluded;
    prof.repeated_roots = true;
    prof.notes.push_back("repeated cubic roots (Delta = 0)");
  }
  return prof;
}

}  // namespace aristo
