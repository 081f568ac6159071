#include "aristo/poisson.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "aristo/model.hpp"
#include "aristo/numdiff.hpp"

namespace aristo {

namespace {

const double kSqrt6 = std::sqrt(6.0);

// Constant matrices of the printed tensors, by upper entries (01, 02, 12).
const SkewTensor3 kCyclic(1.0, -1.0, 1.0);
const SkewTensor3 kFullA(-2.0, -1.0, 1.0);
const SkewTensor3 kFullB(0.0, 1.0, 1.0);
const SkewTensor3 kSemiA(2.0, 1.0, -1.0);
const SkewTensor3 kSemiB(0.0, -1.0, -1.0);

void require_separated(const Vec3& x) {
  if (min_separation(State3(x)) < kDefaultSeparation) {
    throw Error(ErrorKind::SeparationTooSmall, "two coordinates coincide");
  }
}

bool separated(const Vec3& x) { return min_separation(State3(x)) >= kDefaultSeparation; }

void require_mu(MuConstant mu) {
  if (std::abs(mu.value - 0.25) < 1e-14 || std::abs(mu.value - 1.0) < 1e-14) {
    throw Error(ErrorKind::MuExcluded, "mu must differ from 1/4 and 1");
  }
}

bool is_integer(double e) { return std::abs(e - std::round(e)) < 1e-12; }

ExtendedPoint shifted(const ExtendedPoint& p, int index, double t) {
  ExtendedPoint q = p;
  switch (index) {
    case 0: q.tau = Complex(t, p.tau.imag()); break;
    case 1: q.state.u = Complex(t, p.state.u.imag()); break;
    case 2: q.state.v = Complex(t, p.state.v.imag()); break;
    default: q.state.w = Complex(t, p.state.w.imag()); break;
  }
  return q;
}

Complex coordinate(const ExtendedPoint& p, int index) {
  switch (index) {
    case 0: return p.tau;
    case 1: return p.state.u;
    case 2: return p.state.v;
    default: return p.state.w;
  }
}

// Holomorphic fields: a real step in the real part gives the complex derivative.
template <class F>
auto extended_partial(F&& f, const ExtendedPoint& p, int index) {
  return numdiff::central([&](double t) { return f(shifted(p, index, t)); },
                          coordinate(p, index).real());
}

}  // namespace

double SkewTensor3::operator()(int i, int j) const { return matrix()(i, j); }

Eigen::Matrix3d SkewTensor3::matrix() const {
  Eigen::Matrix3d m;
  m << 0.0, p01_, p02_,
       -p01_, 0.0, p12_,
       -p02_, -p12_, 0.0;
  return m;
}

SkewTensor3 SkewTensor3::conjugated(int i, int j) const {
  Eigen::Matrix3d pi = Eigen::Matrix3d::Identity();
  pi.row(i).swap(pi.row(j));
  const Eigen::Matrix3d m = pi * matrix() * pi.transpose();
  return SkewTensor3(m(0, 1), m(0, 2), m(1, 2));
}

TensorField3 cross_tensor(std::string name, ScalarField3 phi, GradientField3 grad_h) {
  TensorField3 out;
  out.name = std::move(name);
  out.eval = [phi = std::move(phi), grad_h = std::move(grad_h)](const Vec3& x) {
    return SkewTensor3::hat(phi(x) * grad_h(x));
  };
  out.admissible = separated;
  return out;
}

SkewTensor3 p_f1(const Vec3& x) {
  require_separated(x);
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  return (-1.0 / (kSqrt6 * uv * vw * wu)) * kCyclic;
}

SkewTensor3 p_f2(const Vec3& x) {
  require_separated(x);
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  return ((uv / (vw * wu) + 2.0 / uv) / 6.0) * kFullA + (0.5 * (1.0 / vw - 1.0 / wu)) * kFullB;
}

SkewTensor3 p_s1(const Vec3& x, MuConstant mu, double c) {
  require_separated(x);
  require_mu(mu);
  const double base = x[0] + x[1] - 2.0 * x[2];
  const double e = (1.0 - 3.0 * mu.value) / (1.0 - mu.value);
  if (base <= 0.0 && !is_integer(e)) {
    throw Error(ErrorKind::NegativeBase, "u+v-2w must be positive for a fractional exponent");
  }
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  return (-1.5 * c * std::pow(base, e) / (uv * vw * wu)) * kCyclic;
}

SkewTensor3 p_s2(const Vec3& x, MuConstant mu, double c) {
  require_separated(x);
  require_mu(mu);
  const double m = mu.value;
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  const double first = -(c / 12.0) / uv * (vw / wu + wu / vw - 2.0);
  const double second = (c / 12.0) * (3.0 * m / (4.0 * m - 1.0)) * uv / (vw * wu);
  const double third = (c / 4.0) * ((1.0 - m) / (4.0 * m - 1.0)) * (1.0 / wu - 1.0 / vw);
  return (first + second) * kSemiA + third * kSemiB;
}

SkewTensor3 p_n1(const Vec3& x) {
  require_separated(x);
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  return (2.0 / (uv * uv * vw * wu)) * kCyclic;
}

SkewTensor3 p_n2(const Vec3& x) {
  require_separated(x);
  const double uv = x[0] - x[1], vw = x[1] - x[2], wu = x[2] - x[0];
  return (uv / (6.0 * vw * wu)) * kSemiA + (0.5 * (1.0 / wu - 1.0 / vw)) * kSemiB;
}

TensorField3 field_p_f1() { return TensorField3{"P_f1", p_f1, separated}; }
TensorField3 field_p_f2() { return TensorField3{"P_f2", p_f2, separated}; }
TensorField3 field_p_n1() { return TensorField3{"P_n1", p_n1, separated}; }
TensorField3 field_p_n2() { return TensorField3{"P_n2", p_n2, separated}; }

TensorField3 field_p_s1(MuConstant mu, double c) {
  require_mu(mu);
  const double e = (1.0 - 3.0 * mu.value) / (1.0 - mu.value);
  return TensorField3{"P_s1", [mu, c](const Vec3& x) { return p_s1(x, mu, c); },
                      [e](const Vec3& x) {
                        return separated(x) && (is_integer(e) || x[0] + x[1] - 2.0 * x[2] > 0.0);
                      }};
}

TensorField3 field_p_s2(MuConstant mu, double c) {
  require_mu(mu);
  return TensorField3{"P_s2", [mu, c](const Vec3& x) { return p_s2(x, mu, c); }, separated};
}

TensorField3 operator+(const TensorField3& a, const TensorField3& b) {
  return TensorField3{a.name + "+" + b.name,
                      [a, b](const Vec3& x) { return a.eval(x) + b.eval(x); },
                      [a, b](const Vec3& x) { return a.admissible(x) && b.admissible(x); }};
}

TensorField3 conjugated(const TensorField3& p, int i, int j) {
  return TensorField3{p.name + "^(" + std::to_string(i) + std::to_string(j) + ")",
                      [p, i, j](const Vec3& x) { return p.eval(x).conjugated(i, j); },
                      p.admissible};
}

Residual jacobi_residual(const TensorField3& p, const Vec3& x) {
  const Eigen::Matrix3d m = p.eval(x).matrix();
  std::array<Eigen::Matrix3d, 3> d;
  for (int l = 0; l < 3; ++l) {
    d[l] = numdiff::central(
        [&](double t) {
          Vec3 y = x;
          y[l] = t;
          return p.eval(y).matrix();
        },
        x[l]);
  }
  double total = 0.0;
  double scale = 0.0;
  constexpr int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& ijk : cyc) {
    for (int l = 0; l < 3; ++l) {
      const double term = m(ijk[0], l) * d[l](ijk[1], ijk[2]);
      total += term;
      scale += std::abs(term);
    }
  }
  return Residual{std::abs(total), scale};
}

Residual compatibility_residual(const TensorField3& p1, const TensorField3& p2, const Vec3& x) {
  return jacobi_residual(p1 + p2, x);
}

HamiltonFit hamilton_residual(const TensorField3& p, const GradientField3& grad_h, const Vec3& x,
                              const Couplings& k) {
  const Vec3 flow = p.eval(x).apply(grad_h(x));
  const Vec3 U = auxiliary_rhs(State3(x), k).real();
  HamiltonFit fit;
  fit.u_norm = U.norm();
  const double uu = U.squaredNorm();
  fit.kappa = uu > 0.0 ? flow.dot(U) / uu : 0.0;
  fit.residual = (flow - fit.kappa * U).norm();
  return fit;
}

ExtendedBivector assemble_bivector(const CVec3& v, const CVec3& u, const CVec3& e) {
  ExtendedBivector out;
  for (int i = 0; i < 3; ++i) {
    out.m(0, i + 1) = v[i];
    out.m(i + 1, 0) = -v[i];
    for (int j = 0; j < 3; ++j) out.m(i + 1, j + 1) = u[i] * e[j] - e[i] * u[j];
  }
  return out;
}

ExtendedBivector extended_lambda(const ExtendedPoint& p, const Couplings& k) {
  const CVec3 U = auxiliary_rhs(p.state, k);
  const CVec3 E = p.state.vec();
  return assemble_bivector(E - 2.0 * p.tau * U, U, E);
}

Residual bivector_jacobi_residual(const BivectorField4& field, const ExtendedPoint& p) {
  const Mat4c m = field(p).m;
  std::array<Mat4c, 4> d;
  for (int s = 0; s < 4; ++s) {
    d[s] = extended_partial([&](const ExtendedPoint& q) { return field(q).m; }, p, s);
  }
  constexpr int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  Residual worst{};
  bool first = true;
  for (const auto& t : triples) {
    const int cyc[3][3] = {{t[0], t[1], t[2]}, {t[1], t[2], t[0]}, {t[2], t[0], t[1]}};
    Complex total{};
    double scale = 0.0;
    for (const auto& ijk : cyc) {
      for (int s = 0; s < 4; ++s) {
        const Complex term = m(ijk[0], s) * d[s](ijk[1], ijk[2]);
        total += term;
        scale += std::abs(term);
      }
    }
    const Residual r{std::abs(total), scale};
    if (first || r.normalized() > worst.normalized()) worst = r;
    first = false;
  }
  return worst;
}

Residual extended_jacobi_residual(const ExtendedPoint& p, const Couplings& k) {
  return bivector_jacobi_residual([&](const ExtendedPoint& q) { return extended_lambda(q, k); }, p);
}

Vec4c hamiltonian_vector(const ExtendedBivector& lambda, const ExtendedGradient& dh) {
  Vec4c g;
  g << dh.dtau, dh.grad[0], dh.grad[1], dh.grad[2];
  return lambda.m * g;
}

Vec4c suspended_field(const ExtendedPoint& p, const Couplings& k) {
  const CVec3 U = auxiliary_rhs(p.state, k);
  Vec4c out;
  out << 1.0, U[0], U[1], U[2];
  return out;
}

Vec4c symmetry_field(const ExtendedPoint& p, const Couplings& k) {
  const CVec3 V = p.state.vec() - 2.0 * p.tau * auxiliary_rhs(p.state, k);
  Vec4c out;
  out << 0.0, V[0], V[1], V[2];
  return out;
}

ExtendedGradient d_half_log_h2(const ExtendedPoint& p, const Couplings& k) {
  const Complex h = h2_aux(p, k);
  const CVec3 x = p.state.vec();
  const double scale = x.squaredNorm() + std::abs(2.0 * k.sum() * p.tau);
  if (std::abs(h) <= 1e-12 * std::max(scale, 1e-300)) {
    throw Error(ErrorKind::VanishingH2, "H2 vanishes at the point");
  }
  const ExtendedGradient d = d_h2_aux(p, k);
  return ExtendedGradient{d.dtau / (2.0 * h), d.grad / (2.0 * h)};
}

Residual extended_hamilton_residual(const ExtendedPoint& p, const Couplings& k) {
  const Vec4c x = hamiltonian_vector(extended_lambda(p, k), d_half_log_h2(p, k));
  const Vec4c target = suspended_field(p, k);
  return Residual{(x - target).norm(), target.norm()};
}

CheckResult extended_hamilton_check(const ExtendedPoint& p, const Couplings& k, double tol) {
  ResidualAccumulator acc;
  acc.add(extended_hamilton_residual(p, k));
  return acc.result("extended-hamilton", tol);
}

Residual lie_bracket_residual(const VectorField4& x, const VectorField4& y, const ExtendedPoint& p) {
  const Vec4c xv = x(p);
  const Vec4c yv = y(p);
  std::array<Vec4c, 4> dx;
  std::array<Vec4c, 4> dy;
  for (int s = 0; s < 4; ++s) {
    dx[s] = extended_partial(x, p, s);
    dy[s] = extended_partial(y, p, s);
  }
  double value = 0.0;
  double scale = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    Complex total{};
    double mag = 0.0;
    for (int s = 0; s < 4; ++s) {
      const Complex a = xv[s] * dy[s][mu];
      const Complex b = yv[s] * dx[s][mu];
      total += a - b;
      mag += std::abs(a) + std::abs(b);
    }
    value = std::max(value, std::abs(total));
    scale = std::max(scale, mag);
  }
  return Residual{value, scale};
}

Residual symmetry_commutator_residual(const ExtendedPoint& p, const Couplings& k) {
  return lie_bracket_residual([&](const ExtendedPoint& q) { return suspended_field(q, k); },
                              [&](const ExtendedPoint& q) { return symmetry_field(q, k); }, p);
}

}  // namespace aristo
