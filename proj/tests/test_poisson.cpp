#include <doctest.h>

#include <cmath>

#include "aristo/conserved.hpp"
#include "aristo/model.hpp"
#include "aristo/poisson.hpp"
#include "aristo/reduction.hpp"
#include "oracles.hpp"

using namespace aristo;

namespace {

const double kS6 = std::sqrt(6.0);

Vec3 U_real(const Vec3& x, const Couplings& k) { return oracle::aux_rhs(State3(x), k.a, k.b, k.c).real(); }

Vec3 grad_hf(const Vec3& x) { return grad_h_full(State3(x)).real(); }
Vec3 grad_hn(const Vec3& x) { return grad_h_noninteracting_equal(State3(x)).real(); }

// Flip the sign of the (0,1) entry.
TensorField3 flip01(const TensorField3& p) {
  TensorField3 out = p;
  out.name = p.name + "-flipped";
  out.eval = [p](const Vec3& x) {
    const SkewTensor3 t = p(x);
    return SkewTensor3(-t(0, 1), t(0, 2), t(1, 2));
  };
  return out;
}

ExtendedPoint random_point(oracle::States& gen) {
  const Vec3 x = gen.next();
  return ExtendedPoint{Complex(gen.uniform(), gen.uniform()), State3(x)};
}

}  // namespace

TEST_CASE("skew tensor and the hat map") {
  const Vec3 a(1.0, -2.0, 0.5), b(0.3, 0.7, -1.1);
  CHECK((SkewTensor3::hat(a).apply(b) - a.cross(b)).norm() <= 1e-15);
  const SkewTensor3 t(1.0, 2.0, 3.0);
  CHECK((t.matrix() + t.matrix().transpose()).norm() == 0.0);
  Eigen::Matrix3d pi = Eigen::Matrix3d::Zero();
  pi(0, 1) = pi(1, 0) = pi(2, 2) = 1.0;
  CHECK((t.conjugated(0, 1).matrix() - pi * t.matrix() * pi.transpose()).norm() <= 1e-15);
}

TEST_CASE("Hamilton pairs at the hand-checked points") {
  const Couplings k{1, 1, 1, 1};
  const Vec3 x(2.0, 1.0, 0.0);
  CHECK((p_f1(x).apply(grad_hf(x)) - Vec3(1.5, 0.0, -1.5)).norm() <= 1e-14);
  CHECK((U_real(x, k) - Vec3(1.5, 0.0, -1.5)).norm() <= 1e-14);
  const Couplings kn{1, 1, 0, 1};
  for (const Vec3& y : {Vec3(2.0, 1.0, 0.0), Vec3(5.0, 1.0, 0.0)}) {
    CHECK((p_n1(y).apply(grad_hn(y)) - 3.0 * U_real(y, kn)).norm() <= 1e-13 * U_real(y, kn).norm());
  }
  // P_f2 as printed returns U with its first two components exchanged.
  for (const Vec3& y : {Vec3(2.0, 1.0, 0.0), Vec3(5.0, 1.0, 0.0)}) {
    const Vec3 got = p_f2(y).apply(Vec3(1.0, 1.0, 1.0));
    const Vec3 U = U_real(y, k);
    CHECK((got - Vec3(U[1], U[0], U[2])).norm() <= 1e-13 * U.norm());
    const Vec3 fixed = p_f2(y).conjugated(0, 1).apply(Vec3(1.0, 1.0, 1.0));
    CHECK((fixed - U).norm() <= 1e-13 * U.norm());
  }
}

TEST_CASE("P_f1 is the cross-product tensor of the conformal factor and -H1") {
  oracle::States gen(41);
  const TensorField3 cross = cross_tensor(
      "cross", [](const Vec3& x) { return conformal_factor_full(x); }, [](const Vec3&) { return Vec3(-1.0, -1.0, -1.0); });
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = gen.next();
    CHECK((cross(x).matrix() - p_f1(x).matrix()).norm() <= 1e-13 * p_f1(x).matrix().norm());
  }
}

TEST_CASE("Jacobi identity for the printed tensors") {
  oracle::States gen(42);
  const MuConstant mu{0.4};
  const TensorField3 fields[] = {field_p_f1(), field_p_f2(), field_p_s1(mu, 2.0),
                                 field_p_s2(mu, 2.0), field_p_n1(), field_p_n2()};
  for (const auto& f : fields) {
    int used = 0;
    for (int i = 0; i < 500 && used < 50; ++i) {
      const Vec3 x = gen.next();
      if (!f.admissible(x)) continue;
      ++used;
      CHECK_MESSAGE(jacobi_residual(f, x).within(1e-6), f.name);
    }
    CHECK(used == 50);
  }
}

TEST_CASE("Jacobi mutation: the engine detects a broken tensor") {
  oracle::States gen(43);
  const TensorField3 bad = flip01(field_p_f2());
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, jacobi_residual(bad, gen.next()).normalized());
  CHECK(worst > 1e-2);
}

TEST_CASE("a sign flip in P_f1 keeps it Poisson") {
  // P_f1 is phi hat(c) for a constant vector c; flipping one entry changes c
  // only, and phi hat(c') still satisfies Jacobi in three dimensions.
  oracle::States gen(44);
  const TensorField3 flipped = flip01(field_p_f1());
  for (int i = 0; i < 20; ++i) CHECK(jacobi_residual(flipped, gen.next()).within(1e-6));
}

TEST_CASE("compatibility of P_f1 with the corrected P_f2") {
  oracle::States gen(45);
  const TensorField3 fixed = conjugated(field_p_f2(), 0, 1);
  for (int i = 0; i < 100; ++i) {
    CHECK(compatibility_residual(field_p_f1(), fixed, gen.next()).within(1e-6));
  }
}

TEST_CASE("Hamilton fits carry a constant calibration") {
  oracle::States gen(46);
  const Couplings kf{1, 1, 1, 1}, kn{1, 1, 0, 1};
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = gen.next();
    const HamiltonFit f = hamilton_residual(field_p_f1(), grad_hf, x, kf);
    CHECK(f.kappa == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.residual <= 1e-9 * f.u_norm);
    const HamiltonFit n = hamilton_residual(field_p_n1(), grad_hn, x, kn);
    CHECK(n.kappa == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(n.residual <= 1e-9 * n.u_norm);
  }
}

TEST_CASE("P_s1 at mu = 1/3 is a constant multiple of P_f1") {
  oracle::States gen(47);
  double ratio0 = 0.0;
  int used = 0;
  for (int i = 0; i < 200 && used < 20; ++i) {
    const Vec3 x = gen.next();
    const TensorField3 s1 = field_p_s1(MuConstant{1.0 / 3.0}, 1.0);
    if (!s1.admissible(x)) continue;
    const double ratio = s1(x)(0, 1) / p_f1(x)(0, 1);
    if (used++ == 0) ratio0 = ratio;
    CHECK((s1(x).matrix() - ratio * p_f1(x).matrix()).norm() <= 1e-12 * s1(x).matrix().norm());
    CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-12));
  }
  CHECK(std::abs(ratio0) == doctest::Approx(1.5 * kS6).epsilon(1e-12));
}

TEST_CASE("extended bivector: Hamiltonian vector of (1/2) ln H2") {
  const Couplings k{1, 1, 1, 1};
  const ExtendedPoint p{Complex(0.3, 0.0), State3(2.0, 1.0, 0.0)};
  const Vec4c X = hamiltonian_vector(extended_lambda(p, k), d_half_log_h2(p, k));
  Vec4c want;
  want << 1.0, 1.5, 0.0, -1.5;
  CHECK((X - want).norm() <= 1e-10);

  oracle::States gen(48);
  for (const Couplings kk : {Couplings{1, 1, 1, 1}, Couplings{1, 2, 3, 1}, Couplings{1, 1, 0, 1}}) {
    for (int i = 0; i < 100; ++i) {
      const ExtendedPoint q = random_point(gen);
      CHECK(extended_hamilton_residual(q, kk).within(1e-10));
      CHECK(extended_jacobi_residual(q, kk).within(1e-6));
    }
  }
}

TEST_CASE("extended bivector: tau, H1 and H3 columns") {
  oracle::States gen(49);
  const Couplings k{1, 2, 3, 1};
  for (int i = 0; i < 50; ++i) {
    const ExtendedPoint q = random_point(gen);
    const ExtendedBivector L = extended_lambda(q, k);
    const Vec4c V = symmetry_field(q, k);
    const Vec4c S = suspended_field(q, k);
    ExtendedGradient dtau;
    dtau.dtau = 1.0;
    const Vec4c Xt = hamiltonian_vector(L, dtau);
    // The tau column is minus the symmetry field under X = Lambda dH.
    CHECK((Xt + V).norm() <= 1e-12 * V.norm());
    const Complex H1 = h1(q.state), H3 = h3_aux(q, k);
    CHECK((hamiltonian_vector(L, d_h1(q)) - H1 * S).norm() <= 1e-10 * std::abs(H1) * S.norm());
    CHECK((hamiltonian_vector(L, d_h3_aux(q, k)) - 2.0 * H3 * S).norm() <= 1e-10 * std::abs(H3) * S.norm());
  }
}

TEST_CASE("extended Jacobi mutation: V = E - 3 tau U") {
  oracle::States gen(50);
  const Couplings k{1, 1, 1, 1};
  const BivectorField4 bad = [&](const ExtendedPoint& p) {
    const CVec3 U = auxiliary_rhs(p.state, k);
    const CVec3 E = p.state.vec();
    return assemble_bivector(E - 3.0 * p.tau * U, U, E);
  };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, bivector_jacobi_residual(bad, random_point(gen)).normalized());
  CHECK(worst > 1e-2);
}

TEST_CASE("time-dependent symmetry commutes with the suspended field") {
  oracle::States gen(51);
  const Couplings k{1, 2, 3, 1};
  for (int i = 0; i < 100; ++i) CHECK(symmetry_commutator_residual(random_point(gen), k).within(1e-6));
  const VectorField4 bad = [&](const ExtendedPoint& p) {
    const CVec3 U = auxiliary_rhs(p.state, k);
    Vec4c out;
    out[0] = 0.0;
    out.tail<3>() = p.state.vec() - p.tau * U;
    return out;
  };
  const VectorField4 susp = [&](const ExtendedPoint& p) { return suspended_field(p, k); };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, lie_bracket_residual(susp, bad, random_point(gen)).normalized());
  CHECK(worst > 1e-2);
}

TEST_CASE("vanishing H2 is reported") {
  const Couplings k{1, 1, 1, 1};
  // H2 = sum u^2 - 2 S tau = 0 at tau = sum u^2 / 6.
  const State3 s(2.0, 1.0, 0.0);
  try {
    (void)d_half_log_h2(ExtendedPoint{Complex(5.0 / 6.0, 0.0), s}, k);
    FAIL("expected VanishingH2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VanishingH2);
  }
}
