#include "aristo/conserved.hpp"

#include <cmath>
#include <numbers>

#include "aristo/model.hpp"

namespace aristo {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
const double kSqrt6 = std::sqrt(6.0);

// A = u + v - 2w and B = u - v carry every symmetric-case integral.
const CVec3 kGradA(1.0, 1.0, -2.0);
const CVec3 kGradB(1.0, -1.0, 0.0);

Complex coord_a(const State3& s) { return s.u + s.v - 2.0 * s.w; }
Complex coord_b(const State3& s) { return s.u - s.v; }

CVec3 chain_ab(Complex d_a, Complex d_b) { return d_a * kGradA + d_b * kGradB; }

void require_mu_allowed(double mu) {
  if (std::abs(mu - 0.25) < 1e-14 || std::abs(mu - 1.0) < 1e-14) {
    throw Error(ErrorKind::MuExcluded, "mu = " + std::to_string(mu) + " is excluded");
  }
}

bool is_integer(double e) { return std::abs(e - std::round(e)) < 1e-12; }

// base^e: integer powers exactly, otherwise principal branch with the real-base guard.
Complex semi_power(const State3& s, Complex base, double e) {
  if (is_integer(e)) return std::pow(base, static_cast<int>(std::lround(e)));
  if (s.is_real() && base.real() <= 0.0) {
    throw Error(ErrorKind::NegativeBase, "u+v-2w must be positive for exponent " + std::to_string(e));
  }
  return std::pow(base, e);
}

// theta = (u+v-2w)/(sqrt3 (u-v)) and its gradient.
struct ThetaField {
  Complex theta;
  CVec3 grad;
};

ThetaField theta_field(const State3& s) {
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  if (std::abs(B) < kDefaultSeparation) {
    throw Error(ErrorKind::SeparationTooSmall, "u = v");
  }
  ThetaField f;
  f.theta = A / (kSqrt3 * B);
  f.grad = kGradA / (kSqrt3 * B) - (A / (kSqrt3 * B * B)) * kGradB;
  return f;
}

Complex checked_log_argument(Complex x) {
  if (std::abs(x) < 1e-14) throw Error(ErrorKind::SingularDirection, "logarithm argument vanishes");
  return x;
}

struct GeneralCoefficients {
  Complex eta_term;
  std::array<Complex, 3> log_terms;
};

GeneralCoefficients general_coefficients(const RootProfile& roots, LogTermSign sign) {
  if (!roots.pq || !roots.roots_valid) {
    throw Error(ErrorKind::ZeroCouplingC, "generic first integral needs c != 0 and valid roots");
  }
  if (roots.repeated_roots) {
    throw Error(ErrorKind::DegenerateRoots, "repeated cubic roots");
  }
  const Complex t1 = roots.theta[0];
  const Complex t2 = roots.theta[1];
  const Complex t3 = roots.theta[2];
  const Complex np = roots.numerator[0];
  const Complex nm = roots.numerator[1];
  const double s = sign == LogTermSign::Printed ? 1.0 : -1.0;
  GeneralCoefficients g;
  g.eta_term = (t1 - t2) * (t2 - t3) * (t3 - t1);
  g.log_terms = {
      s * (t1 - np) * (t2 - t3) * (t1 - nm),
      s * (t2 - np) * (t2 - nm) * (t3 - t1),
      s * (t1 - t2) * (t3 - np) * (t3 - nm),
  };
  return g;
}

void require_off_singular_lines(const State3& s, const RootProfile& roots) {
  for (double tr : roots.real_roots()) {
    if (!singular_direction_ok(s, tr)) {
      throw Error(ErrorKind::SingularDirection,
                  "state lies on the invariant line theta = " + std::to_string(tr));
    }
  }
}

}  // namespace

Complex h1(const State3& s) { return s.sum(); }

Complex h2_aux(const ExtendedPoint& p, const Couplings& k) {
  const State3& s = p.state;
  return s.u * s.u + s.v * s.v + s.w * s.w - 2.0 * k.sum() * p.tau;
}

Complex h3_aux(const ExtendedPoint& p, const Couplings& k) {
  const State3& s = p.state;
  return s.u * s.v + s.u * s.w + s.v * s.w + k.sum() * p.tau;
}

ExtendedGradient d_h1(const ExtendedPoint&) {
  return ExtendedGradient{0.0, CVec3::Ones()};
}

ExtendedGradient d_h2_aux(const ExtendedPoint& p, const Couplings& k) {
  return ExtendedGradient{-2.0 * k.sum(), 2.0 * p.state.vec()};
}

ExtendedGradient d_h3_aux(const ExtendedPoint& p, const Couplings& k) {
  const State3& s = p.state;
  return ExtendedGradient{k.sum(), CVec3(s.v + s.w, s.u + s.w, s.u + s.v)};
}

Residual suspended_derivative(const ExtendedGradient& dh, const ExtendedPoint& p, const Couplings& k) {
  const CVec3 U = auxiliary_rhs(p.state, k);
  Complex total = dh.dtau;
  double scale = std::abs(dh.dtau);
  for (int i = 0; i < 3; ++i) {
    const Complex term = dh.grad[i] * U[i];
    total += term;
    scale += std::abs(term);
  }
  return Residual{std::abs(total), scale};
}

Complex h1_physical(double t, const State3& xyz, const Couplings& k) {
  return std::exp(-kI * k.omega * t) * xyz.sum();
}

Complex h2_physical_printed(double t, const State3& xyz, const Couplings& k) {
  const Complex sq = xyz.u * xyz.u + xyz.v * xyz.v + xyz.w * xyz.w;
  return 0.25 * std::exp(-4.0 * kI * k.omega * t) * sq - k.sum() * t;
}

Complex h2_physical_composed(double t, const State3& xyz, const Couplings& k) {
  const Complex sq = xyz.u * xyz.u + xyz.v * xyz.v + xyz.w * xyz.w;
  const Complex phase = std::exp(-2.0 * kI * k.omega * t);
  return phase * sq + k.sum() * phase / (kI * k.omega);
}

Complex potential(const State3& s, const Couplings& k) {
  if (min_separation(s) < kDefaultSeparation) {
    throw Error(ErrorKind::SeparationTooSmall, "potential is singular at a collision");
  }
  return k.a * std::log(s.v - s.w) + k.b * std::log(s.u - s.w) + k.c * std::log(s.u - s.v);
}

CVec3 grad_potential(const State3& s, const Couplings& k) {
  if (min_separation(s) < kDefaultSeparation) {
    throw Error(ErrorKind::SeparationTooSmall, "potential is singular at a collision");
  }
  const Complex uw = s.u - s.w;
  const Complex uv = s.u - s.v;
  const Complex vw = s.v - s.w;
  return CVec3(k.b / uw + k.c / uv, k.a / vw - k.c / uv, -k.a / vw - k.b / uw);
}

MuConstant mu_of(const Couplings& k) {
  if (k.a != k.b) throw Error(ErrorKind::NotSemiSymmetric, "mu needs a = b");
  const double den = 8.0 * k.a + k.c;
  if (den == 0.0) throw Error(ErrorKind::NotSemiSymmetric, "8a + c = 0");
  return MuConstant{(2.0 * k.a + k.c) / den};
}

KConstant k_of(const Couplings& k) {
  if (k.a == k.b) throw Error(ErrorKind::EqualCouplings, "k needs a != b");
  return KConstant{(k.a + k.b) / (kSqrt3 * (k.a - k.b))};
}

Complex h_full(const State3& s) {
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  return A * (A * A - 9.0 * B * B) / (6.0 * kSqrt6);
}

CVec3 grad_h_full(const State3& s) {
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  return chain_ab((3.0 * A * A - 9.0 * B * B) / (6.0 * kSqrt6), -18.0 * A * B / (6.0 * kSqrt6));
}

Complex h_semi(const State3& s, MuConstant mu) {
  require_mu_allowed(mu.value);
  const double e = 2.0 * mu.value / (1.0 - mu.value);
  const double beta = 3.0 / (4.0 * mu.value - 1.0);
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  return semi_power(s, A, e) * (A * A - beta * B * B);
}

CVec3 grad_h_semi(const State3& s, MuConstant mu) {
  require_mu_allowed(mu.value);
  const double e = 2.0 * mu.value / (1.0 - mu.value);
  const double beta = 3.0 / (4.0 * mu.value - 1.0);
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  const Complex Ae = semi_power(s, A, e);
  // d/dA [A^e (A^2 - beta B^2)] = A^e (e (A^2 - beta B^2)/A + 2A)
  const Complex d_a = Ae * (e * (A * A - beta * B * B) / A + 2.0 * A);
  const Complex d_b = -2.0 * beta * B * Ae;
  return chain_ab(d_a, d_b);
}

Complex h_noninteracting_equal(const State3& s) {
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  return 0.25 * A * B * B * B;
}

CVec3 grad_h_noninteracting_equal(const State3& s) {
  const Complex A = coord_a(s);
  const Complex B = coord_b(s);
  return chain_ab(0.25 * B * B * B, 0.75 * A * B * B);
}

namespace {

Complex k_root(KConstant k) {
  const double disc = 4.0 * k.value * k.value - 1.0;
  if (std::abs(disc) < 1e-12) {
    throw Error(ErrorKind::DegenerateRoot, "4k^2 - 1 = 0");
  }
  return std::sqrt(Complex(disc, 0.0));
}

}  // namespace

Complex h_noninteracting_general(const State3& s, KConstant k) {
  const Complex r = k_root(k);
  const ThetaField th = theta_field(s);
  const double kk = k.value;
  return 2.0 * r * std::log(coord_b(s) / kSqrt2) +
         (r - kk) * std::log(checked_log_argument(th.theta - r + 2.0 * kk)) +
         (r + kk) * std::log(checked_log_argument(th.theta + r + 2.0 * kk));
}

CVec3 grad_h_noninteracting_general(const State3& s, KConstant k) {
  const Complex r = k_root(k);
  const ThetaField th = theta_field(s);
  const double kk = k.value;
  const Complex m1 = checked_log_argument(th.theta - r + 2.0 * kk);
  const Complex m2 = checked_log_argument(th.theta + r + 2.0 * kk);
  return (2.0 * r / coord_b(s)) * kGradB + ((r - kk) / m1 + (r + kk) / m2) * th.grad;
}

Complex h_general(const State3& s, const RootProfile& roots, LogTermSign sign) {
  const GeneralCoefficients g = general_coefficients(roots, sign);
  require_off_singular_lines(s, roots);
  const ThetaField th = theta_field(s);
  Complex h = g.eta_term * std::log(coord_b(s) / kSqrt2);
  for (int i = 0; i < 3; ++i) {
    h += g.log_terms[i] * std::log(checked_log_argument(th.theta - roots.theta[i]));
  }
  return h;
}

CVec3 grad_h_general(const State3& s, const RootProfile& roots, LogTermSign sign) {
  const GeneralCoefficients g = general_coefficients(roots, sign);
  require_off_singular_lines(s, roots);
  const ThetaField th = theta_field(s);
  Complex dtheta = 0.0;
  for (int i = 0; i < 3; ++i) {
    dtheta += g.log_terms[i] / checked_log_argument(th.theta - roots.theta[i]);
  }
  return (g.eta_term / coord_b(s)) * kGradB + dtheta * th.grad;
}

std::optional<FirstIntegral> fundamental_integral(const Couplings& k) {
  const RootProfile prof = classify(k);
  switch (prof.case_label) {
    case CouplingCase::FullSymmetric:
      return FirstIntegral{"h_full", [](const State3& s) { return h_full(s); },
                           [](const State3& s) { return grad_h_full(s); }};
    case CouplingCase::SemiSymmetric: {
      const MuConstant mu = mu_of(k);
      if (std::abs(mu.value - 0.25) < 1e-14 || std::abs(mu.value - 1.0) < 1e-14) return std::nullopt;
      return FirstIntegral{"h_semi", [mu](const State3& s) { return h_semi(s, mu); },
                           [mu](const State3& s) { return grad_h_semi(s, mu); }};
    }
    case CouplingCase::NonInteracting: {
      if (k.a == k.b) {
        return FirstIntegral{"h_noninteracting_equal",
                             [](const State3& s) { return h_noninteracting_equal(s); },
                             [](const State3& s) { return grad_h_noninteracting_equal(s); }};
      }
      const KConstant kc = k_of(k);
      if (std::abs(4.0 * kc.value * kc.value - 1.0) < 1e-12) return std::nullopt;
      return FirstIntegral{"h_noninteracting_general",
                           [kc](const State3& s) { return h_noninteracting_general(s, kc); },
                           [kc](const State3& s) { return grad_h_noninteracting_general(s, kc); }};
    }
    case CouplingCase::Generic:
      if (!prof.roots_valid) return std::nullopt;
      return FirstIntegral{"h_general", [prof](const State3& s) { return h_general(s, prof); },
                           [prof](const State3& s) { return grad_h_general(s, prof); }};
    case CouplingCase::Excluded:
      return std::nullopt;
  }
  return std::nullopt;
}

Residual directional_residual(const CVec3& gradient, const State3& s, const Couplings& k) {
  const CVec3 U = auxiliary_rhs(s, k);
  Complex total = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Complex term = gradient[i] * U[i];
    total += term;
    scale += std::abs(term);
  }
  return Residual{std::abs(total), scale};
}

}  // namespace aristo
