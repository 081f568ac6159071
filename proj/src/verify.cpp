#include "aristo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>

#include "aristo/conserved.hpp"
#include "aristo/model.hpp"
#include "aristo/numdiff.hpp"
#include "aristo/poisson.hpp"
#include "aristo/reduction.hpp"
#include "aristo/roots.hpp"
#include "aristo/sampling.hpp"

namespace aristo {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
const double kSqrt6 = std::sqrt(6.0);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void add_note(CheckResult& r, const std::string& text) {
  r.note = r.note ? *r.note + "; " + text : text;
}

// Each suite draws from its own stream so results do not depend on which
// other suites ran.
BoxSampler sampler_for(const VerifyOptions& o, std::uint64_t salt) {
  return BoxSampler(o.seed * 0x9E3779B97F4A7C15ULL + salt, o.box);
}

// Evaluates up to n samples; a sample whose evaluation throws is redrawn.
template <class Draw, class Eval>
CheckResult collect(const std::string& name, double tol, int n, Draw&& draw, Eval&& eval) {
  ResidualAccumulator acc;
  int attempts = 0;
  while (static_cast<int>(acc.samples()) < n && attempts < 50 * n) {
    ++attempts;
    const auto point = draw();
    try {
      acc.add(eval(point));
    } catch (const Error&) {
    }
  }
  CheckResult r = acc.result(name, tol);
  if (static_cast<int>(acc.samples()) < n) {
    add_note(r, "only " + std::to_string(acc.samples()) + " admissible samples");
  }
  return r;
}

// --- Calibrated fits: value ~ kappa * reference with kappa constant --------

struct FitSample {
  Eigen::VectorXd value;
  Eigen::VectorXd reference;
};

struct FitOutcome {
  CheckResult result;
  double kappa = 0.0;
};

template <class Draw, class Eval>
FitOutcome calibrated(const std::string& name, double tol, int n, Draw&& draw, Eval&& eval) {
  std::vector<FitSample> fits;
  int attempts = 0;
  while (static_cast<int>(fits.size()) < n && attempts < 50 * n) {
    ++attempts;
    const auto point = draw();
    try {
      fits.push_back(eval(point));
    } catch (const Error&) {
    }
  }
  FitOutcome out;
  out.result.name = name;
  out.result.tol = tol;
  out.result.samples = fits.size();
  if (fits.empty()) {
    add_note(out.result, "no admissible samples");
    return out;
  }
  ResidualAccumulator acc;
  std::vector<double> kappas;
  for (const auto& f : fits) {
    const double rr = f.reference.squaredNorm();
    const double kappa = rr > 0.0 ? f.value.dot(f.reference) / rr : 0.0;
    kappas.push_back(kappa);
    acc.add(Residual{(f.value - kappa * f.reference).norm(),
                     std::max(f.value.norm(), f.reference.norm())});
  }
  double mean = 0.0;
  for (double k : kappas) mean += k;
  mean /= static_cast<double>(kappas.size());
  double var = 0.0;
  for (double k : kappas) var += (k - mean) * (k - mean);
  const double stddev = std::sqrt(var / static_cast<double>(kappas.size()));

  out.result = acc.result(name, tol);
  out.kappa = mean;
  out.result.calibration = mean;
  const bool constant = stddev <= 1e-6 * std::abs(mean);
  out.result.pass = out.result.pass && constant && mean != 0.0;
  add_note(out.result, "calibration stddev " + fmt(stddev));
  if (static_cast<int>(fits.size()) < n) {
    add_note(out.result, "only " + std::to_string(fits.size()) + " admissible samples");
  }
  return out;
}

// The stated form asserts calibration 1. Emitted after a calibrated check passes.
void unit_calibration_claim(std::vector<CheckResult>& out, const std::string& base, double kappa) {
  CheckResult stated;
  stated.name = base + "-unit-calibration";
  stated.samples = 1;
  stated.max_residual = std::abs(kappa - 1.0);
  stated.scale = 1.0;
  stated.tol = 1e-6;
  stated.pass = stated.max_residual <= stated.tol;
  stated.calibration = kappa;
  audit_claim(out, stated,
              {{"rescale:" + fmt(kappa), [&]() {
                  CheckResult c;
                  c.name = stated.name;
                  c.samples = 1;
                  c.scale = 1.0;
                  c.tol = 1e-6;
                  c.pass = true;
                  c.calibration = kappa;
                  c.note = "holds with the measured constant " + fmt(kappa);
                  return c;
                }}});
}

Vec3 real_part(const CVec3& v) { return v.real(); }

Eigen::VectorXd as_dyn(const Vec3& v) { return Eigen::VectorXd(v); }

// One RK4 step of the physical flow, for finite differences along trajectories.
State3 physical_step(const State3& x, const Couplings& k, double h) {
  const CVec3 y = x.vec();
  const CVec3 k1 = physical_rhs(State3(y), k);
  const CVec3 k2 = physical_rhs(State3(CVec3(y + 0.5 * h * k1)), k);
  const CVec3 k3 = physical_rhs(State3(CVec3(y + 0.5 * h * k2)), k);
  const CVec3 k4 = physical_rhs(State3(CVec3(y + h * k3)), k);
  return State3(CVec3(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)));
}

struct PhysicalSample {
  double t = 0.0;
  State3 x{};
  Couplings k{};
};

// Central-difference step along the physical flow: a fixed fraction of the
// shortest time scale, min_sep/|x'| or 1/omega, balancing truncation against
// roundoff.
double flow_step(const PhysicalSample& s) {
  const double speed = physical_rhs(s.x, s.k).norm();
  double scale = speed > 0.0 ? min_separation(s.x) / speed : 1.0;
  if (s.k.omega > 0.0) scale = std::min(scale, 1.0 / s.k.omega);
  return 1e-5 * std::min(scale, 1.0);
}

// d/dt h(t, x(t)) along the physical flow, scaled by the explicit-time and
// state contributions computed separately.
Residual physical_conservation(const std::function<Complex(double, const State3&)>& h,
                               const PhysicalSample& s) {
  const double d = flow_step(s);
  const State3 xp = physical_step(s.x, s.k, d);
  const State3 xm = physical_step(s.x, s.k, -d);
  const Complex total = (h(s.t + d, xp) - h(s.t - d, xm)) / (2.0 * d);
  const Complex explicit_t = (h(s.t + d, s.x) - h(s.t - d, s.x)) / (2.0 * d);
  const Complex along = (h(s.t, xp) - h(s.t, xm)) / (2.0 * d);
  return Residual{std::abs(total), std::abs(explicit_t) + std::abs(along)};
}

// --- Tensor families ---------------------------------------------------------

struct Family {
  Couplings k;
  std::string note;
};

Family full_family(const Couplings& k) {
  if (k.a == k.b && k.b == k.c && k.a != 0.0) return {k, ""};
  return {Couplings{1.0, 1.0, 1.0, k.omega}, "couplings 1,1,1 used for the full-symmetric family"};
}

Family semi_family(const Couplings& k) {
  if (k.a == k.b && k.a != 0.0 && k.c != 0.0 && 8.0 * k.a + k.c != 0.0) {
    const double mu = (2.0 * k.a + k.c) / (8.0 * k.a + k.c);
    if (std::abs(mu - 0.25) > 1e-14 && std::abs(mu - 1.0) > 1e-14) return {k, ""};
  }
  return {Couplings{1.0, 1.0, 2.0, k.omega}, "couplings 1,1,2 used for the semi-symmetric family"};
}

Family noninteracting_family(const Couplings& k) {
  if (k.c == 0.0 && k.a == k.b && k.a != 0.0) return {k, ""};
  return {Couplings{1.0, 1.0, 0.0, k.omega}, "couplings 1,1,0 used for the non-interacting family"};
}

const std::array<std::pair<int, int>, 3> kTranspositions{{{0, 1}, {0, 2}, {1, 2}}};

std::string transposition_label(std::pair<int, int> t) {
  static const char* names = "uvw";
  return std::string("conjugate-") + names[t.first] + names[t.second];
}

struct HamiltonPair {
  std::string name;
  TensorField3 tensor;
  GradientField3 grad;
  Family family;
};

}  // namespace

bool VerifyReport::acceptable() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.acceptable(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "tensors", "extended", "conserved", "reduction", "roots"};
  return names;
}

void audit_claim(std::vector<CheckResult>& out, CheckResult stated,
                 const std::vector<Candidate>& candidates) {
  if (stated.pass || stated.skipped) {
    out.push_back(std::move(stated));
    return;
  }
  for (const auto& cand : candidates) {
    CheckResult c = cand.run();
    if (!c.pass) continue;
    c.name = stated.name + "[" + cand.label + "]";
    stated.expected_erratum = true;
    add_note(stated, "fails as stated; candidate " + cand.label + " passes");
    out.push_back(std::move(stated));
    out.push_back(std::move(c));
    return;
  }
  if (!candidates.empty()) add_note(stated, "no candidate correction passes");
  out.push_back(std::move(stated));
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_conserved(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const Couplings k = o.couplings;
  const int n = o.samples;
  BoxSampler sampler = sampler_for(o, 1);
  const auto draw_state = [&] { return sampler.real_state(); };
  const auto draw_point = [&] { return sampler.extended_point(); };

  out.push_back(collect("gradient-identity", 1e-12, n, draw_state, [&](const Vec3& x) {
    const CVec3 g = grad_potential(State3(x), k);
    const CVec3 U = auxiliary_rhs(State3(x), k);
    return Residual{(g - U).norm(), U.norm()};
  }));
  out.push_back(collect("potential-translation-sum", 1e-13, n, draw_state, [&](const Vec3& x) {
    const CVec3 g = grad_potential(State3(x), k);
    return Residual{std::abs(g.sum()), g.cwiseAbs().sum()};
  }));

  out.push_back(collect("h1-conservation", 1e-10, n, draw_point, [&](const ExtendedPoint& p) {
    return suspended_derivative(d_h1(p), p, k);
  }));
  out.push_back(collect("h2-conservation", 1e-10, n, draw_point, [&](const ExtendedPoint& p) {
    return suspended_derivative(d_h2_aux(p, k), p, k);
  }));
  out.push_back(collect("h3-conservation", 1e-10, n, draw_point, [&](const ExtendedPoint& p) {
    return suspended_derivative(d_h3_aux(p, k), p, k);
  }));
  out.push_back(collect("relation-1", 1e-12, n, draw_point, [&](const ExtendedPoint& p) {
    const Complex a = h1(p.state), b = h2_aux(p, k), c = h3_aux(p, k);
    return Residual{std::abs(c - (a * a - b) / 2.0), std::abs(c) + std::abs(a * a) / 2.0 + std::abs(b) / 2.0};
  }));

  // (u-v)^2 + (v-w)^2 + (w-u)^2 = 2 H2 - 2 H3 + coefficient * (a+b+c) tau.
  {
    const double S = k.sum();
    const auto relation = [&](double coefficient) {
      return [&, coefficient](const ExtendedPoint& p) {
        const State3& s = p.state;
        const Complex lhs = (s.u - s.v) * (s.u - s.v) + (s.v - s.w) * (s.v - s.w) + (s.w - s.u) * (s.w - s.u);
        const Complex b = h2_aux(p, k), c = h3_aux(p, k);
        const Complex rhs = 2.0 * b - 2.0 * c + coefficient * S * p.tau;
        return Residual{std::abs(lhs - rhs), std::abs(lhs) + 2.0 * std::abs(b) + 2.0 * std::abs(c) +
                                                 std::abs(coefficient * S * p.tau)};
      };
    };
    BoxSampler rs = sampler_for(o, 2);
    CheckResult stated = collect("relation-2-coefficient", 1e-12, n, [&] { return rs.extended_point(); }, relation(4.0));
    if (S != 0.0) {
      BoxSampler ms = sampler_for(o, 2);
      const ExtendedPoint p = ms.extended_point();
      const State3& s = p.state;
      const Complex lhs = (s.u - s.v) * (s.u - s.v) + (s.v - s.w) * (s.v - s.w) + (s.w - s.u) * (s.w - s.u);
      stated.calibration = ((lhs - 2.0 * h2_aux(p, k) + 2.0 * h3_aux(p, k)) / (S * p.tau)).real();
      add_note(stated, "measured tau coefficient " + fmt(*stated.calibration) + ", stated 4");
    } else {
      add_note(stated, "a+b+c = 0, the tau term vanishes");
    }
    audit_claim(out, stated, {{"coefficient-6", [&] {
                                  BoxSampler cs = sampler_for(o, 2);
                                  return collect("", 1e-12, n, [&] { return cs.extended_point(); }, relation(6.0));
                                }}});
  }

  // Physical model and the transformation to the auxiliary one.
  {
    const auto draw_physical = [&]() {
      PhysicalSample s;
      s.t = sampler.uniform(0.0, 2.0);
      s.x = State3(sampler.real_state());
      s.k = k;
      s.k.omega = sampler.uniform(0.5, 2.0);
      return s;
    };
    out.push_back(collect("transformation-pushforward", 1e-6, n, draw_physical, [&](const PhysicalSample& s) {
      const double d = flow_step(s);
      const ExtendedPoint pp = to_auxiliary(s.t + d, physical_step(s.x, s.k, d), s.k);
      const ExtendedPoint pm = to_auxiliary(s.t - d, physical_step(s.x, s.k, -d), s.k);
      const CVec3 du = (pp.state.vec() - pm.state.vec()) / (pp.tau - pm.tau);
      const CVec3 U = auxiliary_rhs(to_auxiliary(s.t, s.x, s.k).state, s.k);
      // The rotation term omega x cancels out of du/dtau; it sets the roundoff level.
      return Residual{(du - U).norm(), U.norm() + s.k.omega * s.x.vec().norm()};
    }));
    out.push_back(collect("h1-physical-conservation", 1e-6, n, draw_physical, [&](const PhysicalSample& s) {
      return physical_conservation([&](double t, const State3& x) { return h1_physical(t, x, s.k); }, s);
    }));
    BoxSampler ps = sampler_for(o, 3);
    const auto draw_physical2 = [&]() {
      PhysicalSample s;
      s.t = ps.uniform(0.0, 2.0);
      s.x = State3(ps.real_state());
      s.k = k;
      s.k.omega = ps.uniform(0.5, 2.0);
      return s;
    };
    CheckResult stated = collect("h2-physical-conservation", 1e-6, n, draw_physical2, [&](const PhysicalSample& s) {
      return physical_conservation([&](double t, const State3& x) { return h2_physical_printed(t, x, s.k); }, s);
    });
    audit_claim(out, stated, {{"composed-with-transformation", [&] {
                                  BoxSampler cs = sampler_for(o, 3);
                                  return collect("", 1e-6, n,
                                                 [&]() {
                                                   PhysicalSample s;
                                                   s.t = cs.uniform(0.0, 2.0);
                                                   s.x = State3(cs.real_state());
                                                   s.k = k;
                                                   s.k.omega = cs.uniform(0.5, 2.0);
                                                   return s;
                                                 },
                                                 [&](const PhysicalSample& s) {
                                                   return physical_conservation(
                                                       [&](double t, const State3& x) {
                                                         return h2_physical_composed(t, x, s.k);
                                                       },
                                                       s);
                                                 });
                                }}});
  }

  // Time-independent first integrals.
  const RootProfile prof = classify(k);
  if (const auto fi = fundamental_integral(k)) {
    CheckResult r = collect("first-integral-" + fi->name, 1e-8, n, draw_state, [&](const Vec3& x) {
      return directional_residual(fi->gradient(State3(x)), State3(x), k);
    });
    add_note(r, std::string("case ") + to_string(prof.case_label));
    out.push_back(std::move(r));
  } else {
    out.push_back(skipped_check("first-integral", std::string("no closed-form first integral for case ") +
                                                      to_string(prof.case_label)));
  }

  if (k.c != 0.0 && prof.roots_valid && !prof.repeated_roots) {
    const auto general = [&](LogTermSign sign) {
      BoxSampler gs = sampler_for(o, 4);
      return collect("h-general", 1e-8, n, [&] { return gs.real_state(); }, [&](const Vec3& x) {
        return directional_residual(grad_h_general(State3(x), prof, sign), State3(x), k);
      });
    };
    CheckResult stated = general(LogTermSign::Printed);
    stated.name = "h-general-log-signs";
    audit_claim(out, stated, {{"negated-theta-logs", [&] { return general(LogTermSign::ResidueConsistent); }}});
  } else {
    out.push_back(skipped_check("h-general-log-signs", "needs c != 0 and distinct cubic roots"));
  }

  // Two first integrals of the same planar flow have dependent gradients.
  if (prof.case_label == CouplingCase::SemiSymmetric && prof.roots_valid && !prof.repeated_roots &&
      fundamental_integral(k)) {
    const MuConstant mu = mu_of(k);
    BoxSampler ds = sampler_for(o, 5);
    CheckResult r = collect("gradient-dependence-semi", 1e-8, n, [&] { return ds.real_state(); }, [&](const Vec3& x) {
      const State3 s(x);
      Eigen::Matrix3cd m;
      m.col(0) = grad_h_general(s, prof).normalized();
      m.col(1) = grad_h_semi(s, mu).normalized();
      m.col(2) = CVec3::Ones().normalized();
      return Residual{std::abs(m.determinant()), 1.0};
    });
    add_note(r, "determinant of unit-normalized gradients");
    out.push_back(std::move(r));
  } else {
    out.push_back(skipped_check("gradient-dependence-semi", "needs a = b, c != 0 with distinct cubic roots"));
  }

  out.push_back(collect("semi-limit-consistency", 1e-12, n, draw_state, [&](const Vec3& x) {
    const Complex hs = h_semi(State3(x), MuConstant{1.0 / 3.0});
    const Complex hf = 6.0 * kSqrt6 * h_full(State3(x));
    return Residual{std::abs(hs - hf), std::abs(hs) + std::abs(hf)};
  }));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_tensors(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const int n = o.samples;
  const Family full = full_family(o.couplings);
  const Family semi = semi_family(o.couplings);
  const Family nonint = noninteracting_family(o.couplings);
  const MuConstant mu = mu_of(semi.k);

  const std::vector<std::pair<TensorField3, Family>> tensors{
      {field_p_f1(), full}, {field_p_f2(), full}, {field_p_s1(mu, semi.k.c), semi},
      {field_p_s2(mu, semi.k.c), semi}, {field_p_n1(), nonint}, {field_p_n2(), nonint}};

  std::uint64_t salt = 10;
  const auto jacobi = [&](const TensorField3& p, std::uint64_t s) {
    BoxSampler js = sampler_for(o, s);
    return collect("", 1e-6, n, [&] { return js.real_state(p.admissible); },
                   [&](const Vec3& x) { return jacobi_residual(p, x); });
  };
  for (const auto& [p, fam] : tensors) {
    const std::uint64_t s = ++salt;
    CheckResult stated = jacobi(p, s);
    stated.name = "jacobi-" + p.name;
    if (!fam.note.empty()) add_note(stated, fam.note);
    std::vector<Candidate> cands;
    for (const auto& t : kTranspositions) {
      cands.push_back({transposition_label(t), [&, t, s] { return jacobi(conjugated(p, t.first, t.second), s); }});
    }
    audit_claim(out, stated, cands);
  }

  const GradientField3 grad_h1 = [](const Vec3&) { return Vec3(1.0, 1.0, 1.0); };
  const std::vector<HamiltonPair> pairs{
      {"P_f1-H_f", tensors[0].first, [](const Vec3& x) { return real_part(grad_h_full(State3(x))); }, full},
      {"P_f2-H1", tensors[1].first, grad_h1, full},
      {"P_s1-H_s", tensors[2].first, [mu](const Vec3& x) { return real_part(grad_h_semi(State3(x), mu)); }, semi},
      {"P_s2-H1", tensors[3].first, grad_h1, semi},
      {"P_n1-H_n", tensors[4].first, [](const Vec3& x) { return real_part(grad_h_noninteracting_equal(State3(x))); }, nonint},
      {"P_n2-H1", tensors[5].first, grad_h1, nonint},
  };

  // Transposition that repairs each tensor's Hamilton claim, if any.
  std::vector<std::optional<std::pair<int, int>>> repairs(pairs.size());
  salt = 20;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const HamiltonPair& hp = pairs[i];
    const std::uint64_t s = ++salt;
    const auto run = [&, s](const TensorField3& p) {
      BoxSampler hs = sampler_for(o, s);
      return calibrated("hamilton-" + hp.name, 1e-9, n, [&] { return hs.real_state(p.admissible); },
                        [&](const Vec3& x) {
                          const Vec3 flow = p.eval(x).apply(hp.grad(x));
                          const Vec3 U = auxiliary_rhs(State3(x), hp.family.k).real();
                          return FitSample{as_dyn(flow), as_dyn(U)};
                        });
    };
    FitOutcome stated = run(hp.tensor);
    if (!hp.family.note.empty()) add_note(stated.result, hp.family.note);
    const bool stated_pass = stated.result.pass;
    std::optional<double> kappa;
    if (stated_pass) kappa = stated.kappa;
    std::vector<Candidate> cands;
    for (const auto& t : kTranspositions) {
      cands.push_back({transposition_label(t), [&, t] {
                         FitOutcome c = run(conjugated(hp.tensor, t.first, t.second));
                         if (c.result.pass) {
                           repairs[i] = t;
                           kappa = c.kappa;
                         }
                         return c.result;
                       }});
    }
    audit_claim(out, stated.result, cands);
    if (kappa) unit_calibration_claim(out, "hamilton-" + hp.name, *kappa);
  }

  // Compatibility of each pair of tensors.
  salt = 30;
  for (std::size_t i = 0; i < pairs.size(); i += 2) {
    const TensorField3& p1 = tensors[i].first;
    const TensorField3& p2 = tensors[i + 1].first;
    const std::uint64_t s = ++salt;
    const auto run = [&, s](const TensorField3& q) {
      BoxSampler cs = sampler_for(o, s);
      const TensorField3 sum = p1 + q;
      return collect("compatibility-" + p1.name + "-" + p2.name, 1e-6, n,
                     [&] { return cs.real_state(sum.admissible); },
                     [&](const Vec3& x) { return jacobi_residual(sum, x); });
    };
    std::vector<Candidate> cands;
    if (repairs[i + 1]) {
      const auto t = *repairs[i + 1];
      cands.push_back({transposition_label(t), [&, t] { return run(conjugated(p2, t.first, t.second)); }});
    }
    audit_claim(out, run(p2), cands);
  }

  // P_f1 is the cross-product tensor hat(-phi_f grad H1).
  {
    BoxSampler xs = sampler_for(o, 40);
    const TensorField3 cross = cross_tensor(
        "cross", [](const Vec3& x) { return -conformal_factor_full(x); }, grad_h1);
    out.push_back(collect("cross-product-form-P_f1", 1e-12, n, [&] { return xs.real_state(); }, [&](const Vec3& x) {
      const Eigen::Matrix3d a = p_f1(x).matrix();
      const Eigen::Matrix3d b = cross(x).matrix();
      return Residual{(a - b).norm(), a.norm()};
    }));
  }

  // At mu = 1/3 the semi-symmetric tensor is a constant multiple of P_f1.
  {
    BoxSampler ls = sampler_for(o, 41);
    FitOutcome f = calibrated("semi-limit-proportionality", 1e-12, n, [&] { return ls.real_state(); },
                              [&](const Vec3& x) {
                                const Eigen::Matrix3d a = p_s1(x, MuConstant{1.0 / 3.0}, 1.0).matrix();
                                const Eigen::Matrix3d b = p_f1(x).matrix();
                                return FitSample{Eigen::Map<const Eigen::VectorXd>(a.data(), 9),
                                                 Eigen::Map<const Eigen::VectorXd>(b.data(), 9)};
                              });
    add_note(f.result, "P_s1 at mu = 1/3, c = 1 over P_f1");
    out.push_back(f.result);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_extended(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const Couplings k = o.couplings;
  const int n = o.samples;
  BoxSampler sampler = sampler_for(o, 50);
  const auto draw = [&] { return sampler.extended_point(); };

  out.push_back(collect("extended-jacobi", 1e-6, n, draw,
                        [&](const ExtendedPoint& p) { return extended_jacobi_residual(p, k); }));
  out.push_back(collect("extended-hamilton", 1e-10, n, draw,
                        [&](const ExtendedPoint& p) { return extended_hamilton_residual(p, k); }));

  // Lambda(d tau) against +-(0, E - 2 tau U).
  const auto tau_claim = [&](double sign) {
    BoxSampler ts = sampler_for(o, 51);
    return collect("", 1e-12, n, [&] { return ts.extended_point(); }, [&](const ExtendedPoint& p) {
      const Vec4c x = hamiltonian_vector(extended_lambda(p, k), ExtendedGradient{1.0, CVec3::Zero()});
      const Vec4c target = sign * symmetry_field(p, k);
      return Residual{(x - target).norm(), target.norm()};
    });
  };
  {
    CheckResult stated = tau_claim(1.0);
    stated.name = "extended-hamilton-tau";
    audit_claim(out, stated, {{"sign-flip", [&] { return tau_claim(-1.0); }}});
  }

  {
    BoxSampler hs = sampler_for(o, 52);
    out.push_back(collect("extended-hamilton-h1", 1e-10, n, [&] { return hs.extended_point(); },
                          [&](const ExtendedPoint& p) {
                            const Vec4c x = hamiltonian_vector(extended_lambda(p, k), d_h1(p));
                            const Vec4c target = h1(p.state) * suspended_field(p, k);
                            return Residual{(x - target).norm(), std::abs(h1(p.state)) * suspended_field(p, k).norm()};
                          }));
  }

  // Lambda(dH3): stated as -2 H3 U with no tau component.
  const auto h3_claim = [&](Complex factor, bool with_tau) {
    BoxSampler hs = sampler_for(o, 53);
    return collect("", 1e-10, n, [&] { return hs.extended_point(); }, [&](const ExtendedPoint& p) {
      const Vec4c x = hamiltonian_vector(extended_lambda(p, k), d_h3_aux(p, k));
      Vec4c base = suspended_field(p, k);
      if (!with_tau) base[0] = 0.0;
      const Vec4c target = factor * h3_aux(p, k) * base;
      return Residual{(x - target).norm(), std::abs(h3_aux(p, k)) * suspended_field(p, k).norm()};
    });
  };
  {
    CheckResult stated = h3_claim(-2.0, false);
    stated.name = "extended-hamilton-h3";
    audit_claim(out, stated,
                {{"sign-flip", [&] { return h3_claim(2.0, false); }},
                 {"2H3-suspended", [&] { return h3_claim(2.0, true); }}});
  }

  {
    BoxSampler cs = sampler_for(o, 54);
    out.push_back(collect("symmetry-commutator", 1e-6, n, [&] { return cs.extended_point(); },
                          [&](const ExtendedPoint& p) { return symmetry_commutator_residual(p, k); }));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_reduction(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const Couplings k = o.couplings;
  const int n = o.samples;
  BoxSampler sampler = sampler_for(o, 60);
  const auto draw = [&] { return sampler.real_state(); };

  {
    const Eigen::Matrix3d b = plane_basis();
    CheckResult r;
    r.name = "plane-orthonormality";
    r.samples = 1;
    r.max_residual = (b * b.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    r.scale = 1.0;
    r.tol = 1e-14;
    r.pass = r.max_residual <= r.tol;
    out.push_back(r);
  }

  out.push_back(collect("reduced-pushforward", 1e-12, n, draw, [&](const Vec3& x) {
    const Vec3 U = auxiliary_rhs(State3(x), k).real();
    const Vec3 w = plane_basis() * U;
    const PlanePoint p = to_plane(x);
    const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
    const Vec3 target(0.0, v.eta, v.xi);
    return Residual{(w - target).norm(), U.norm()};
  }));

  const auto in_sector = [](const Vec3& x) {
    const PlanePoint p = to_plane(x);
    return p.eta > 0.0 && kSqrt3 * p.xi > p.eta;
  };
  {
    BoxSampler gs = sampler_for(o, 61);
    out.push_back(collect("reduced-gradient", 1e-7, n, [&] { return gs.real_state(in_sector); }, [&](const Vec3& x) {
      const PlanePoint p = to_plane(x);
      const double dE = numdiff::central([&](double e) { return reduced_potential(e, p.xi, k); }, p.eta);
      const double dX = numdiff::central([&](double s) { return reduced_potential(p.eta, s, k); }, p.xi);
      const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
      return Residual{std::hypot(dE - v.eta, dX - v.xi), std::hypot(v.eta, v.xi)};
    }));
  }

  {
    BoxSampler ss = sampler_for(o, 62);
    out.push_back(collect("characteristics-slope", 1e-12, n, [&] { return ss.real_state(); }, [&](const Vec3& x) {
      const PlanePoint p = to_plane(x);
      const double slope = characteristic_slope(p.eta, p.xi, k);
      const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
      const double plus = kSqrt3 * p.xi + p.eta, minus = kSqrt3 * p.xi - p.eta;
      // Term magnitudes of the two velocity components, relative to eta'.
      const double ce = (std::abs(k.c / p.eta) + std::abs(k.b / plus) + std::abs(k.a / minus)) / std::abs(v.eta);
      const double cx = (std::abs(k.b / plus) + std::abs(k.a / minus)) * kSqrt3 / std::abs(v.eta);
      const double ratio = v.xi / v.eta;
      return Residual{std::abs(slope - ratio), std::abs(ratio) * (1.0 + ce) + cx};
    }));
  }

  const bool full = k.a == k.b && k.b == k.c && k.a != 0.0;
  if (full) {
    const auto plane = [&](bool reciprocal) {
      BoxSampler ls = sampler_for(o, 63);
      const PlaneDensity phi = [reciprocal](double e, double x) {
        const double f = conformal_factor_full(e, x);
        return reciprocal ? 1.0 / f : f;
      };
      return collect("", 1e-6, n, [&] { return ls.real_state(); }, [&](const Vec3& x) {
        const PlanePoint p = to_plane(x);
        return liouville_residual(phi, p.eta, p.xi, k);
      });
    };
    CheckResult stated = plane(false);
    stated.name = "liouville-plane";
    audit_claim(out, stated, {{"reciprocal-density", [&] { return plane(true); }}});

    const auto space = [&](bool reciprocal) {
      BoxSampler ls = sampler_for(o, 64);
      const SpaceDensity phi = [reciprocal](const Vec3& x) {
        const double f = conformal_factor_full(x);
        return reciprocal ? 1.0 / f : f;
      };
      return collect("", 1e-6, n, [&] { return ls.real_state(); },
                     [&](const Vec3& x) { return liouville_residual_3d(phi, x, k); });
    };
    CheckResult stated3 = space(false);
    stated3.name = "liouville-3d";
    audit_claim(out, stated3, {{"reciprocal-density", [&] { return space(true); }}});

    BoxSampler ys = sampler_for(o, 65);
    FitOutcome f = calibrated("symplectic-full", 1e-10, n, [&] { return ys.real_state(); }, [&](const Vec3& x) {
      const PlanePoint p = to_plane(x);
      const PlaneVelocity g = grad_reduced_potential(p.eta, p.xi, k);
      const double phi = conformal_factor_full(p.eta, p.xi);
      const double dh_deta = -6.0 * p.xi * p.eta;
      const double dh_dxi = 3.0 * p.xi * p.xi - 3.0 * p.eta * p.eta;
      Eigen::VectorXd v(2), r(2);
      v << g.eta, g.xi;
      r << -phi * dh_dxi, phi * dh_deta;
      return FitSample{v, r};
    });
    out.push_back(f.result);
    if (f.result.pass) unit_calibration_claim(out, "symplectic-full", f.kappa);
  } else {
    out.push_back(skipped_check("liouville-plane", "density stated for a = b = c only"));
    out.push_back(skipped_check("liouville-3d", "density stated for a = b = c only"));
    out.push_back(skipped_check("symplectic-full", "symplectic form stated for a = b = c only"));
  }

  {
    BoxSampler hs = sampler_for(o, 66);
    FitOutcome f = calibrated("h-full-plane-normalization", 1e-12, n, [&] { return hs.real_state(); },
                              [&](const Vec3& x) {
                                PlanePoint p = to_plane(x);
                                p.zeta = 0.0;
                                Eigen::VectorXd v(1), r(1);
                                v << h_full(State3(from_plane(p))).real();
                                r << h_full_plane(p.eta, p.xi) / kSqrt6;
                                return FitSample{v, r};
                              });
    add_note(f.result, "h_full(from_plane(0, eta, xi)) over (xi^3 - 3 xi eta^2)/sqrt6");
    out.push_back(f.result);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::array<Complex, 3> companion_roots(double p, double q) {
  const auto [P, Q] = depressed_coefficients(p, q);
  Eigen::Matrix3d m;
  m << 0.0, 0.0, -Q,
       1.0, 0.0, -P,
       0.0, 1.0, 0.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(m.cast<Complex>());
  const auto ev = es.eigenvalues();
  return {ev[0], ev[1], ev[2]};
}

double set_distance(const std::array<Complex, 3>& a, const std::array<Complex, 3>& b) {
  std::array<int, 3> perm{0, 1, 2};
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double min_factor(double q) {
  return std::min({std::abs(1.0 + 3.0 * q), std::abs(7.0 + 3.0 * q), std::abs(1.0 + 12.0 * q)});
}

}  // namespace

std::vector<CheckResult> verify_roots(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const Couplings k = o.couplings;
  const int n = o.samples;

  if (k.c == 0.0) {
    out.push_back(skipped_check("root-profile", "ZeroCouplingC: the shifted parameters need c != 0"));
  } else {
    const RootProfile prof = classify(k);
    CheckResult r;
    r.name = "root-profile";
    r.samples = 1;
    r.max_residual = prof.root_residual;
    r.scale = 1.0;
    r.tol = 1e-10;
    r.pass = prof.roots_valid && prof.root_residual <= r.tol;
    add_note(r, std::string("case ") + to_string(prof.case_label));
    if (prof.repeated_roots) add_note(r, "repeated roots");
    out.push_back(r);
  }

  BoxSampler sampler = sampler_for(o, 70);
  const auto draw_pq = [&] { return std::pair<double, double>{sampler.uniform(-2.0, 2.0), sampler.uniform(-2.0, 2.0)}; };
  int fallbacks = 0;
  CheckResult agree = collect("root-solver-agreement", 1e-9, n, draw_pq, [&](const std::pair<double, double>& pq) {
    const CubicRoots cr = cubic_roots(pq.first, pq.second);
    if (cr.fallback) ++fallbacks;
    const auto ref = companion_roots(pq.first, pq.second);
    double mag = 1.0;
    for (const auto& z : ref) mag = std::max(mag, std::abs(z));
    return Residual{set_distance(cr.roots, ref), mag};
  });
  add_note(agree, std::to_string(fallbacks) + " samples used the eigen fallback");
  out.push_back(agree);

  BoxSampler ss = sampler_for(o, 71);
  out.push_back(collect("root-sum", 1e-10, n, [&] { return std::pair<double, double>{ss.uniform(-2.0, 2.0), ss.uniform(-2.0, 2.0)}; },
                        [&](const std::pair<double, double>& pq) {
                          const CubicRoots cr = cubic_roots(pq.first, pq.second);
                          double mag = 1.0;
                          for (const auto& z : cr.roots) mag = std::max(mag, std::abs(z));
                          return Residual{std::abs(cr.roots[0] + cr.roots[1] + cr.roots[2]), mag};
                        }));

  BoxSampler ds = sampler_for(o, 72);
  out.push_back(collect("delta-identity", 1e-10, n, [&] { return std::pair<double, double>{ds.uniform(-2.0, 2.0), ds.uniform(-2.0, 2.0)}; },
                        [&](const std::pair<double, double>& pq) {
                          const auto [P, Q] = depressed_coefficients(pq.first, pq.second);
                          const double ref = -4.0 * P * P * P - 27.0 * Q * Q;
                          return Residual{std::abs(discriminant(pq.first, pq.second) - ref),
                                          4.0 * std::abs(P * P * P) + 27.0 * Q * Q};
                        }));

  BoxSampler gs = sampler_for(o, 73);
  out.push_back(collect("delta-sign", 0.0, n, [&] { return std::pair<double, double>{gs.uniform(-2.0, 2.0), gs.uniform(-2.0, 2.0)}; },
                        [&](const std::pair<double, double>& pq) {
                          const double d = discriminant(pq.first, pq.second);
                          const auto [P, Q] = depressed_coefficients(pq.first, pq.second);
                          if (std::abs(d) < 1e-9 * (4.0 * std::abs(P * P * P) + 27.0 * Q * Q)) {
                            throw Error(ErrorKind::DegenerateRoots, "discriminant too close to zero");
                          }
                          const auto ref = companion_roots(pq.first, pq.second);
                          int real = 0;
                          for (const auto& z : ref) real += std::abs(z.imag()) < 1e-7 ? 1 : 0;
                          const bool three_real = real == 3;
                          return Residual{three_real == (d > 0.0) ? 0.0 : 1.0, 1.0};
                        }));

  const auto loci = special_loci();
  for (std::size_t i = 0; i < loci.size(); ++i) {
    const SpecialLocus& l = loci[i];
    const std::string base = "special-locus-" + std::to_string(i + 1);
    CheckResult q;
    q.name = base + "-q";
    q.samples = 1;
    q.max_residual = min_factor(l.printed_q);
    q.scale = 1.0;
    q.tol = 1e-12;
    q.pass = q.max_residual <= q.tol;
    q.calibration = l.printed_q;
    add_note(q, "q = " + fmt(l.printed_q) + " with " + l.printed_constraint);
    audit_claim(out, q, {{"q=" + fmt(l.audited_q), [&] {
                            CheckResult c;
                            c.samples = 1;
                            c.max_residual = min_factor(l.audited_q);
                            c.scale = 1.0;
                            c.tol = 1e-12;
                            c.pass = c.max_residual <= c.tol;
                            c.calibration = l.audited_q;
                            c.note = "zero of the discriminant factors";
                            return c;
                          }}});
    if (l.printed_mu && l.audited_mu) {
      CheckResult m;
      m.name = base + "-mu";
      m.samples = 1;
      m.max_residual = std::abs(*l.printed_mu - *l.audited_mu);
      m.scale = 1.0;
      m.tol = 1e-12;
      m.pass = m.max_residual <= m.tol;
      m.calibration = *l.printed_mu;
      add_note(m, "mu at a = b on " + l.printed_constraint);
      const double audited = *l.audited_mu;
      audit_claim(out, m, {{"mu=" + fmt(audited), [audited] {
                              CheckResult c;
                              c.samples = 1;
                              c.scale = 1.0;
                              c.tol = 1e-12;
                              c.pass = true;
                              c.calibration = audited;
                              c.note = "(2a + c)/(8a + c) on the constraint";
                              return c;
                            }}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

VerifyReport run_verify(const VerifyOptions& opts) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), opts.suite) == names.end()) {
    throw Error(ErrorKind::InvalidArgument, "unknown suite: " + opts.suite);
  }
  if (opts.samples <= 0) throw Error(ErrorKind::InvalidArgument, "samples must be positive");
  if (!(opts.box > 0.0)) throw Error(ErrorKind::InvalidArgument, "box must be positive");

  VerifyReport report;
  report.options = opts;
  const auto append = [&](std::vector<CheckResult> v) {
    for (auto& c : v) report.checks.push_back(std::move(c));
  };
  const bool all = opts.suite == "all";
  if (all || opts.suite == "conserved") append(verify_conserved(opts));
  if (all || opts.suite == "tensors") append(verify_tensors(opts));
  if (all || opts.suite == "extended") append(verify_extended(opts));
  if (all || opts.suite == "reduction") append(verify_reduction(opts));
  if (all || opts.suite == "roots") append(verify_roots(opts));
  return report;
}

}  // namespace aristo
