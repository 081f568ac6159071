#include "aristo/model.hpp"

#include <cmath>
#include <numbers>

namespace aristo {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_separated(const State3& s, double eps_sep) {
  const double d = min_separation(s);
  if (!(d >= eps_sep)) {
    throw Error(ErrorKind::SeparationTooSmall,
                "minimum pairwise separation " + std::to_string(d) + " below " +
                    std::to_string(eps_sep));
  }
}

void require_omega(double omega) {
  if (!(omega > 0.0)) throw Error(ErrorKind::InvalidOmega, "omega must be positive");
}

}  // namespace

double min_separation(const State3& s) {
  return std::min({std::abs(s.u - s.v), std::abs(s.v - s.w), std::abs(s.w - s.u)});
}

CVec3 physical_rhs(const State3& xyz, const Couplings& k, double eps_sep) {
  if (k.omega < 0.0) throw Error(ErrorKind::InvalidOmega, "omega must be non-negative");
  CVec3 out = auxiliary_rhs(xyz, k, eps_sep);
  out += kI * k.omega * xyz.vec();
  return out;
}

CVec3 auxiliary_rhs(const State3& s, const Couplings& k, double eps_sep) {
  require_separated(s, eps_sep);
  const Complex uv = s.u - s.v;
  const Complex vw = s.v - s.w;
  const Complex wu = s.w - s.u;
  return CVec3(k.c / uv - k.b / wu,
               k.a / vw - k.c / uv,
               k.b / wu - k.a / vw);
}

Complex tau_of_time(double t, double omega) {
  require_omega(omega);
  return -std::exp(-2.0 * kI * omega * t) / (2.0 * kI * omega);
}

ExtendedPoint to_auxiliary(double t, const State3& xyz, const Couplings& k) {
  require_omega(k.omega);
  const Complex phase = std::exp(-kI * k.omega * t);
  return ExtendedPoint{tau_of_time(t, k.omega), phase * xyz};
}

PhysicalPoint from_auxiliary(const ExtendedPoint& p, const Couplings& k, double tol) {
  require_omega(k.omega);
  // exp(-2 i w t) = -2 i w tau
  const Complex z = -2.0 * kI * k.omega * p.tau;
  if (std::abs(std::abs(z) - 1.0) > tol) {
    throw Error(ErrorKind::TauOffCurve,
                "|2 omega tau| = " + std::to_string(std::abs(z)) + " is not 1");
  }
  const double period = std::numbers::pi / k.omega;
  double t = -std::arg(z) / (2.0 * k.omega);
  t = std::fmod(t, period);
  if (t < 0.0) t += period;
  if (t >= period) t -= period;
  const Complex phase = std::exp(kI * k.omega * t);
  return PhysicalPoint{t, phase * p.state};
}

}  // namespace aristo
