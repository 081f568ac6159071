#include "aristo/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "aristo/conserved.hpp"
#include "aristo/model.hpp"

namespace aristo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

struct Stepper {
  ModelKind model;
  const Couplings& k;
  const IntegrationConfig& cfg;

  CVec3 rhs(double t, const CVec3& y) const {
    (void)t;
    if (model == ModelKind::Physical) return physical_rhs(State3(y), k);
    return cfg.direction * auxiliary_rhs(State3(y), k);
  }

  Complex tau_at(double t) const {
    if (model == ModelKind::Auxiliary) return cfg.tau0 + t * cfg.direction;
    return k.omega > 0.0 ? tau_of_time(t, k.omega) : Complex(t, 0.0);
  }
};

struct StepResult {
  CVec3 y;
  CVec3 f_end;
  double err = 0.0;
};

StepResult dopri_step(const Stepper& st, double t, const CVec3& y, const CVec3& k1, double h) {
  const CVec3 k2 = st.rhs(t + c2 * h, y + h * (a21 * k1));
  const CVec3 k3 = st.rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const CVec3 k4 = st.rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const CVec3 k5 = st.rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const CVec3 k6 =
      st.rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  StepResult out;
  out.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  out.f_end = st.rhs(t + h, out.y);
  const CVec3 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.f_end);
  // Real and imaginary parts are separate components of the norm.
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sre = st.cfg.atol + st.cfg.rtol * std::max(std::abs(y[i].real()), std::abs(out.y[i].real()));
    const double sim = st.cfg.atol + st.cfg.rtol * std::max(std::abs(y[i].imag()), std::abs(out.y[i].imag()));
    worst = std::max({worst, std::abs(err[i].real()) / sre, std::abs(err[i].imag()) / sim});
  }
  out.err = worst;
  return out;
}

void validate(const IntegrationConfig& cfg) {
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw Error(ErrorKind::InvalidConfig, "rtol and atol must be positive");
  if (!(cfg.t1 != cfg.t0) || !std::isfinite(cfg.t0) || !std::isfinite(cfg.t1)) {
    throw Error(ErrorKind::InvalidConfig, "t1 must differ from t0");
  }
  if (std::abs(std::abs(cfg.direction) - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidConfig, "direction must have unit modulus");
  }
  if (cfg.max_step < 0.0 || cfg.initial_step < 0.0 || cfg.sep_floor < 0.0) {
    throw Error(ErrorKind::InvalidConfig, "steps and sep_floor must be non-negative");
  }
  if (cfg.fixed_steps && *cfg.fixed_steps <= 0) throw Error(ErrorKind::InvalidConfig, "fixed_steps must be positive");
}

}  // namespace

const char* to_string(ModelKind m) { return m == ModelKind::Physical ? "physical" : "auxiliary"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Collision: return "collision";
    case Termination::StepUnderflow: return "step-underflow";
  }
  return "unknown";
}

Trajectory integrate(ModelKind model, const State3& initial, const Couplings& k,
                     const IntegrationConfig& cfg) {
  validate(cfg);
  if (min_separation(initial) <= cfg.sep_floor) {
    throw Error(ErrorKind::SeparationTooSmall, "initial state is within sep_floor of a collision");
  }
  const Stepper st{model, k, cfg};
  const std::optional<FirstIntegral> fundamental = fundamental_integral(k);

  Trajectory traj;
  traj.model = model;
  if (fundamental) traj.fundamental = fundamental->name;

  const auto record = [&](double t, const CVec3& y) {
    TrajectorySample s;
    s.t = t;
    s.tau = st.tau_at(t);
    s.state = State3(y);
    // Conserved quantities of the auxiliary state; for the physical model this
    // is the physical state carried through the transformation.
    State3 aux = s.state;
    if (model == ModelKind::Physical) {
      s.h1 = h1_physical(t, s.state, k);
      if (k.omega > 0.0) {
        s.h2 = h2_physical_composed(t, s.state, k);
        aux = std::exp(Complex(0.0, -k.omega * t)) * s.state;
      } else {
        s.h2 = h2_aux(ExtendedPoint{s.tau, s.state}, k);
      }
    } else {
      s.h1 = h1(s.state);
      s.h2 = h2_aux(ExtendedPoint{s.tau, s.state}, k);
    }
    s.hfund_dirres = kNaN;
    if (fundamental) {
      try {
        s.hfund_dirres = directional_residual(fundamental->gradient(aux), aux, k).normalized();
      } catch (const Error&) {
      }
    }
    traj.samples.push_back(s);
  };

  const double span = cfg.t1 - cfg.t0;
  const double sign = span > 0.0 ? 1.0 : -1.0;
  const double max_step = cfg.max_step > 0.0 ? cfg.max_step : std::abs(span);
  const double min_step = 1e-14 * std::abs(span);

  double t = cfg.t0;
  CVec3 y = initial.vec();
  CVec3 f = st.rhs(t, y);
  record(t, y);

  if (cfg.fixed_steps) {
    const int n = *cfg.fixed_steps;
    for (int i = 1; i <= n; ++i) {
      const double t_next = i == n ? cfg.t1 : cfg.t0 + span * i / n;
      StepResult r;
      try {
        r = dopri_step(st, t, y, f, t_next - t);
      } catch (const Error&) {
        traj.termination = Termination::Collision;
        traj.message = "stage evaluation hit a collision";
        return traj;
      }
      if (min_separation(State3(r.y)) <= cfg.sep_floor) {
        traj.termination = Termination::Collision;
        traj.message = "min_separation fell to sep_floor";
        return traj;
      }
      t = t_next;
      y = r.y;
      f = r.f_end;
      ++traj.accepted;
      record(t, y);
    }
    return traj;
  }

  double h = cfg.initial_step;
  if (h <= 0.0) {
    // Initial guess from the scale of the state and its derivative.
    const double d0 = y.cwiseAbs().maxCoeff();
    const double d1 = f.cwiseAbs().maxCoeff();
    h = (d0 > 1e-5 && d1 > 1e-5) ? 0.01 * d0 / d1 : 1e-6;
    h = std::max(h, 1e-6 * std::abs(span));
  }
  h = std::min({h, max_step, std::abs(span)});

  while (sign * (cfg.t1 - t) > 0.0) {
    const double remaining = std::abs(cfg.t1 - t);
    const bool last = h >= remaining;
    const double step = last ? remaining : h;
    if (step < min_step && !last) {
      traj.termination = Termination::StepUnderflow;
      traj.message = "step fell below 1e-14 of the interval";
      return traj;
    }

    StepResult r;
    bool ok = true;
    try {
      r = dopri_step(st, t, y, f, sign * step);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok || !std::isfinite(r.err)) {
      ++traj.rejected;
      h = step * kMinFactor;
      continue;
    }
    if (r.err <= 1.0) {
      if (min_separation(State3(r.y)) <= cfg.sep_floor) {
        traj.termination = Termination::Collision;
        traj.message = "min_separation fell to sep_floor";
        return traj;
      }
      t = last ? cfg.t1 : t + sign * step;
      y = r.y;
      f = r.f_end;
      ++traj.accepted;
      record(t, y);
    } else {
      ++traj.rejected;
    }
    const double factor =
        r.err == 0.0 ? kMaxFactor
                     : std::clamp(kSafety * std::pow(r.err, -0.2), kMinFactor, kMaxFactor);
    h = std::min(step * factor, max_step);
  }
  return traj;
}

DriftReport drift_report(const Trajectory& traj) {
  if (traj.samples.empty()) throw Error(ErrorKind::EmptyTrajectory, "trajectory has no samples");
  DriftReport out;
  out.fundamental = traj.fundamental;
  const TrajectorySample& first = traj.samples.front();
  const double h2_scale = std::abs(first.h2) > 0.0 ? std::abs(first.h2) : 1.0;
  bool any = false;
  for (const auto& s : traj.samples) {
    out.h1_abs_drift = std::max(out.h1_abs_drift, std::abs(s.h1 - first.h1));
    out.h2_rel_drift = std::max(out.h2_rel_drift, std::abs(s.h2 - first.h2) / h2_scale);
    if (!std::isnan(s.hfund_dirres)) {
      out.max_hfund_dirres = any ? std::max(out.max_hfund_dirres, s.hfund_dirres) : s.hfund_dirres;
      any = true;
    }
  }
  if (!any) out.max_hfund_dirres = kNaN;
  return out;
}

}  // namespace aristo
