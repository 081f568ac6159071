#include "aristo/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace aristo {

namespace {

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json complex_json(Complex z) { return {number_or_null(z.real()), number_or_null(z.imag())}; }

std::string complex_text(Complex z) {
  std::string out = format_double(z.real());
  if (z.imag() != 0.0) {
    out += z.imag() < 0.0 ? "-" : "+";
    out += format_double(std::abs(z.imag())) + "i";
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(ErrorKind::InvalidArgument, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = std::string(kTrajectoryCsvHeader) + "\n";
  for (const auto& s : traj.samples) {
    const double cols[] = {s.t,          s.state.u.real(), s.state.u.imag(), s.state.v.real(),
                           s.state.v.imag(), s.state.w.real(), s.state.w.imag(), s.h1.real(),
                           s.h1.imag(),  s.h2.real(),      s.h2.imag(),      s.hfund_dirres};
    bool first = true;
    for (double c : cols) {
      if (!first) out += ',';
      out += format_double(c);
      first = false;
    }
    out += '\n';
  }
  return out;
}

nlohmann::json trajectory_json(const Trajectory& traj, const Couplings& k, const IntegrationConfig& cfg) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : traj.samples) {
    samples.push_back({{"t", s.t},
                       {"tau", complex_json(s.tau)},
                       {"state", {complex_json(s.state.u), complex_json(s.state.v), complex_json(s.state.w)}},
                       {"h1", complex_json(s.h1)},
                       {"h2", complex_json(s.h2)},
                       {"hfund_dirres", number_or_null(s.hfund_dirres)}});
  }
  nlohmann::json meta = {{"model", to_string(traj.model)},
                         {"couplings", {{"a", k.a}, {"b", k.b}, {"c", k.c}, {"omega", k.omega}}},
                         {"rtol", cfg.rtol},
                         {"atol", cfg.atol},
                         {"t0", cfg.t0},
                         {"t1", cfg.t1},
                         {"tau0", complex_json(cfg.tau0)},
                         {"direction", complex_json(cfg.direction)},
                         {"sep_floor", cfg.sep_floor},
                         {"fundamental", traj.fundamental}};
  return {{"schema_version", kSchemaVersion},
          {"meta", meta},
          {"samples", samples},
          {"termination",
           {{"reason", to_string(traj.termination)},
            {"message", traj.message},
            {"accepted", traj.accepted},
            {"rejected", traj.rejected}}}};
}

nlohmann::json check_json(const CheckResult& c) {
  nlohmann::json j = {{"name", c.name},
                      {"samples", c.samples},
                      {"max_residual", number_or_null(c.max_residual)},
                      {"scale", number_or_null(c.scale)},
                      {"tol", c.tol},
                      {"pass", c.pass},
                      {"expected_erratum", c.expected_erratum},
                      {"skipped", c.skipped}};
  j["calibration"] = c.calibration ? number_or_null(*c.calibration) : nlohmann::json(nullptr);
  j["note"] = c.note ? nlohmann::json(*c.note) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json verify_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  std::size_t passed = 0, errata = 0, skipped = 0, failed = 0;
  for (const auto& c : report.checks) {
    checks.push_back(check_json(c));
    if (c.skipped) ++skipped;
    else if (c.pass) ++passed;
    else if (c.expected_erratum) ++errata;
    else ++failed;
  }
  const auto& o = report.options;
  return {{"schema_version", kSchemaVersion},
          {"meta",
           {{"suite", o.suite},
            {"couplings", {{"a", o.couplings.a}, {"b", o.couplings.b}, {"c", o.couplings.c}, {"omega", o.couplings.omega}}},
            {"samples", o.samples},
            {"seed", o.seed},
            {"box", o.box}}},
          {"summary", {{"passed", passed}, {"errata", errata}, {"skipped", skipped}, {"failed", failed}}},
          {"checks", checks}};
}

std::string verify_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    const char* tag = c.skipped ? "SKIP" : c.pass ? "PASS" : c.expected_erratum ? "ERRATUM" : "FAIL";
    os << tag << ' ' << c.name;
    if (!c.skipped) {
      os << " residual=" << format_double(c.max_residual) << " scale=" << format_double(c.scale)
         << " tol=" << format_double(c.tol) << " n=" << c.samples;
    }
    if (c.calibration) os << " calibration=" << format_double(*c.calibration);
    if (c.note) os << " (" << *c.note << ")";
    os << '\n';
  }
  return os.str();
}

nlohmann::json profile_json(const RootProfile& prof) {
  const Couplings& k = prof.couplings;
  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"couplings", {{"a", k.a}, {"b", k.b}, {"c", k.c}}},
                      {"case", to_string(prof.case_label)},
                      {"roots_valid", prof.roots_valid},
                      {"repeated_roots", prof.repeated_roots},
                      {"root_residual", prof.root_residual}};
  j["p"] = prof.pq ? nlohmann::json(prof.pq->p) : nlohmann::json(nullptr);
  j["q"] = prof.pq ? nlohmann::json(prof.pq->q) : nlohmann::json(nullptr);
  j["lambda"] = prof.lambda ? complex_json(*prof.lambda) : nlohmann::json(nullptr);
  j["delta"] = prof.delta ? nlohmann::json(*prof.delta) : nlohmann::json(nullptr);
  if (prof.roots_valid) {
    j["theta"] = {complex_json(prof.theta[0]), complex_json(prof.theta[1]), complex_json(prof.theta[2])};
    j["numerator_roots"] = {complex_json(prof.numerator[0]), complex_json(prof.numerator[1])};
  } else {
    j["theta"] = nullptr;
    j["numerator_roots"] = nullptr;
  }
  j["mu"] = prof.mu ? nlohmann::json(*prof.mu) : nlohmann::json(nullptr);
  j["k"] = prof.k ? nlohmann::json(*prof.k) : nlohmann::json(nullptr);

  nlohmann::json loci = nlohmann::json::array();
  for (const auto& l : special_loci()) {
    const bool on_locus = prof.pq && std::abs(prof.pq->q - l.printed_q) <= 1e-12 * std::max(1.0, std::abs(l.printed_q));
    nlohmann::json e = {{"constraint", l.printed_constraint},
                        {"printed_q", l.printed_q},
                        {"audited_q", l.audited_q},
                        {"q_consistent", l.q_consistent},
                        {"member", on_locus}};
    e["printed_mu"] = l.printed_mu ? nlohmann::json(*l.printed_mu) : nlohmann::json(nullptr);
    e["audited_mu"] = l.audited_mu ? nlohmann::json(*l.audited_mu) : nlohmann::json(nullptr);
    e["mu_consistent"] = l.mu_consistent;
    loci.push_back(e);
  }
  j["special_loci"] = loci;
  j["notes"] = prof.notes;
  return j;
}

std::string profile_text(const RootProfile& prof) {
  std::ostringstream os;
  os << "case: " << to_string(prof.case_label) << '\n';
  if (prof.pq) os << "p: " << format_double(prof.pq->p) << "\nq: " << format_double(prof.pq->q) << '\n';
  if (prof.lambda) os << "lambda: " << complex_text(*prof.lambda) << '\n';
  if (prof.roots_valid) {
    os << "theta: " << complex_text(prof.theta[0]) << ", " << complex_text(prof.theta[1]) << ", "
       << complex_text(prof.theta[2]) << '\n';
    os << "numerator roots: " << complex_text(prof.numerator[0]) << ", " << complex_text(prof.numerator[1]) << '\n';
    os << "root residual: " << format_double(prof.root_residual) << '\n';
  }
  if (prof.delta) os << "delta: " << format_double(*prof.delta) << '\n';
  if (prof.mu) os << "mu: " << format_double(*prof.mu) << '\n';
  if (prof.k) os << "k: " << format_double(*prof.k) << '\n';
  for (const auto& l : special_loci()) {
    const bool on_locus = prof.pq && std::abs(prof.pq->q - l.printed_q) <= 1e-12 * std::max(1.0, std::abs(l.printed_q));
    if (!on_locus) continue;
    os << "special locus: " << l.printed_constraint << " (q = " << format_double(l.printed_q)
       << (l.q_consistent ? ", consistent" : ", inconsistent: factor zero at q = " + format_double(l.audited_q))
       << ")\n";
  }
  for (const auto& n : prof.notes) os << "note: " << n << '\n';
  return os.str();
}

ScanRange parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    throw Error(ErrorKind::InvalidArgument, "range must be lo:hi:n, got '" + text + "'");
  }
  ScanRange r;
  r.lo = parse_double(text.substr(0, a));
  r.hi = parse_double(text.substr(a + 1, b - a - 1));
  const std::string ns = text.substr(b + 1);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (ec != std::errc() || ptr != ns.data() + ns.size() || n < 1) {
    throw Error(ErrorKind::InvalidArgument, "range count must be a positive integer, got '" + ns + "'");
  }
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) throw Error(ErrorKind::InvalidArgument, "range bounds must be finite");
  r.n = n;
  return r;
}

std::vector<ScanRow> scan_grid(const ScanRange& p, const ScanRange& q) {
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(p.n) * static_cast<std::size_t>(q.n));
  for (int i = 0; i < p.n; ++i) {
    for (int j = 0; j < q.n; ++j) {
      ScanRow r;
      r.p = p.at(i);
      r.q = q.at(j);
      r.delta = discriminant(r.p, r.q);
      r.lambda = lambda_of(r.p, r.q);
      const CubicRoots cr = cubic_roots(r.p, r.q);
      r.min_root_gap = std::min({std::abs(cr.roots[0] - cr.roots[1]), std::abs(cr.roots[1] - cr.roots[2]),
                                 std::abs(cr.roots[0] - cr.roots[2])});
      if (r.delta > 0.0) {
        r.n_real_roots = 3;
      } else if (r.delta < 0.0) {
        r.n_real_roots = 1;
      } else {
        // Repeated root: every root of a real cubic with zero discriminant is real.
        r.n_real_roots = 3;
      }
      rows.push_back(r);
    }
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = std::string(kScanCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += format_double(r.p) + ',' + format_double(r.q) + ',' + format_double(r.delta) + ',' +
           std::to_string(r.n_real_roots) + ',' + format_double(r.min_root_gap) + ',' +
           format_double(r.lambda.real()) + ',' + format_double(r.lambda.imag()) + '\n';
  }
  return out;
}

}  // namespace aristo
