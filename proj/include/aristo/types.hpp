#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aristo {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// Minimum pairwise separation below which the vector fields refuse to evaluate.
inline constexpr double kDefaultSeparation = 1e-10;

/// Coupling constants of the three-body model.
///
/// `a` couples bodies 2-3, `b` couples 1-3 and `c` couples 1-2. `omega` is the
/// rotation frequency of the physical model; the auxiliary model ignores it.
struct Couplings {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double omega = 1.0;

  double sum() const { return a + b + c; }
};

/// Complex position triple (u, v, w). Also used for the physical (x, y, z).
struct State3 {
  Complex u{};
  Complex v{};
  Complex w{};

  State3() = default;
  State3(Complex u_, Complex v_, Complex w_) : u(u_), v(v_), w(w_) {}
  explicit State3(const CVec3& z) : u(z[0]), v(z[1]), w(z[2]) {}
  explicit State3(const Vec3& x) : u(x[0]), v(x[1]), w(x[2]) {}

  CVec3 vec() const { return CVec3(u, v, w); }
  Complex operator[](int i) const { return i == 0 ? u : (i == 1 ? v : w); }
  Complex sum() const { return u + v + w; }

  bool is_real(double tol = 0.0) const {
    return std::abs(u.imag()) <= tol && std::abs(v.imag()) <= tol &&
           std::abs(w.imag()) <= tol;
  }
  Vec3 real() const { return Vec3(u.real(), v.real(), w.real()); }

  friend State3 operator*(Complex s, const State3& x) { return State3(s * x.u, s * x.v, s * x.w); }
  friend bool operator==(const State3&, const State3&) = default;
};

/// A point (tau, u, v, w) of the time-extended space.
struct ExtendedPoint {
  Complex tau{};
  State3 state{};
};

/// A residual together with the magnitude of the terms that produced it.
struct Residual {
  double value = 0.0;
  double scale = 0.0;

  double normalized() const { return scale > 0.0 ? value / scale : value; }
  bool within(double tol) const { return value <= tol * scale; }
};

enum class ErrorKind {
  SeparationTooSmall,
  InvalidOmega,
  TauOffCurve,
  MuExcluded,
  NegativeBase,
  DegenerateRoot,
  SingularDirection,
  NotSemiSymmetric,
  EqualCouplings,
  ReducedSingular,
  NonPositiveLogArgument,
  VerticalSlope,
  ConformalSingular,
  VanishingH2,
  ZeroCouplingC,
  NoValidBranch,
  DegenerateRoots,
  EmptyTrajectory,
  InvalidConfig,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace aristo
