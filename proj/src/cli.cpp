#include "aristo/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "aristo/integrator.hpp"
#include "aristo/model.hpp"
#include "aristo/reduction.hpp"
#include "aristo/report.hpp"
#include "aristo/roots.hpp"
#include "aristo/verify.hpp"

namespace aristo {

namespace {

// Reads a signed decimal at the front of `s`; returns characters consumed.
std::size_t read_double(std::string_view s, double& v) {
  std::size_t skip = 0;
  if (!s.empty() && s.front() == '+') skip = 1;
  const char* begin = s.data() + skip;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc()) return 0;
  return static_cast<std::size_t>(ptr - s.data());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (!text.empty() && text.back() == ',') parts.push_back("");
  return parts;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open output file: " + path);
  f << content;
}

int usage_error(std::ostream& err, const CLI::App& app, const std::string& message) {
  err << "error: " << message << "\n" << app.help();
  return kExitUsage;
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  const auto bad = [&] { return Error(ErrorKind::InvalidArgument, "malformed complex literal: '" + raw + "'"); };
  if (text.empty()) throw bad();
  double re = 0.0;
  const std::size_t n = read_double(text, re);
  if (n == 0) throw bad();
  if (n == text.size()) return Complex(re, 0.0);
  const std::string_view rest = std::string_view(text).substr(n);
  if (rest.front() != '+' && rest.front() != '-') throw bad();
  if (rest.size() < 3 || rest.back() != 'i') throw bad();
  double im = 0.0;
  const std::string_view body = rest.substr(0, rest.size() - 1);
  const std::size_t m = read_double(body, im);
  if (m == 0 || m != body.size()) throw bad();
  return Complex(re, im);
}

State3 parse_state(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "a state needs three comma-separated values");
  return State3(parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]));
}

Couplings parse_couplings(const std::string& text, double omega) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "couplings need three comma-separated values a,b,c");
  Couplings k;
  double* dst[] = {&k.a, &k.b, &k.c};
  for (int i = 0; i < 3; ++i) {
    const Complex z = parse_complex(parts[i]);
    if (z.imag() != 0.0 || !std::isfinite(z.real())) throw Error(ErrorKind::InvalidArgument, "couplings must be real");
    *dst[i] = z.real();
  }
  k.omega = omega;
  return k;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-body Aristotelian model: integration, verification and classification"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Integrate the physical or auxiliary model");
  std::string sim_model = "auxiliary", sim_couplings = "1,1,1", sim_initial, sim_output, sim_format = "csv";
  std::string sim_tau0 = "0", sim_direction = "1";
  double sim_omega = 1.0, sim_t0 = 0.0, sim_t1 = 1.0, sim_rtol = 1e-10, sim_atol = 1e-12;
  double sim_sep = 1e-6, sim_max_step = 0.0;
  sim->add_option("--model", sim_model, "auxiliary or physical")->check(CLI::IsMember({"auxiliary", "physical"}));
  sim->add_option("--couplings", sim_couplings, "a,b,c");
  sim->add_option("--omega", sim_omega, "frequency of the physical model");
  sim->add_option("--initial", sim_initial, "u,v,w as complex literals")->required();
  sim->add_option("--t0", sim_t0, "start of the integration parameter");
  sim->add_option("--t1", sim_t1, "end of the integration parameter");
  sim->add_option("--rtol", sim_rtol);
  sim->add_option("--atol", sim_atol);
  sim->add_option("--tau0", sim_tau0, "auxiliary model: tau at s = 0");
  sim->add_option("--direction", sim_direction, "auxiliary model: unit complex direction of tau(s)");
  sim->add_option("--sep-floor", sim_sep, "stop when two bodies come this close");
  sim->add_option("--max-step", sim_max_step);
  sim->add_option("--output", sim_output, "output path, stdout if omitted");
  sim->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  auto* ver = app.add_subcommand("verify", "Run the numerical check suites");
  std::string ver_suite = "all", ver_couplings = "1,1,1", ver_output;
  int ver_samples = 100;
  std::uint64_t ver_seed = 1;
  double ver_box = 5.0, ver_omega = 1.0;
  bool ver_json = false;
  ver->add_option("--suite", ver_suite)->check(CLI::IsMember(suite_names()));
  ver->add_option("--couplings", ver_couplings, "a,b,c");
  ver->add_option("--omega", ver_omega);
  ver->add_option("--samples", ver_samples)->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_seed);
  ver->add_option("--box", ver_box)->check(CLI::PositiveNumber);
  ver->add_flag("--json", ver_json, "machine-readable report");
  ver->add_option("--output", ver_output, "output path, stdout if omitted");

  // classify
  auto* cls = app.add_subcommand("classify", "Classify couplings and print the root profile");
  std::string cls_couplings;
  bool cls_json = false;
  cls->add_option("--couplings", cls_couplings, "a,b,c")->required();
  cls->add_flag("--json", cls_json);

  // scan
  auto* scn = app.add_subcommand("scan", "Grid the discriminant over (p, q)");
  std::string scn_p, scn_q, scn_output;
  scn->add_option("--p-range", scn_p, "lo:hi:n")->required();
  scn->add_option("--q-range", scn_q, "lo:hi:n")->required();
  scn->add_option("--output", scn_output, "output path, stdout if omitted");

  // reduce
  auto* red = app.add_subcommand("reduce", "Planar coordinates and reduced flow at a state");
  std::string red_couplings, red_state;
  red->add_option("--couplings", red_couplings, "a,b,c")->required();
  red->add_option("--state", red_state, "u,v,w (real)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage_error(err, app, e.what());
  }

  if (sim->parsed()) {
    Couplings k;
    State3 initial;
    IntegrationConfig cfg;
    try {
      k = parse_couplings(sim_couplings, sim_omega);
      initial = parse_state(sim_initial);
      cfg.rtol = sim_rtol;
      cfg.atol = sim_atol;
      cfg.t0 = sim_t0;
      cfg.t1 = sim_t1;
      cfg.tau0 = parse_complex(sim_tau0);
      cfg.direction = parse_complex(sim_direction);
      cfg.sep_floor = sim_sep;
      cfg.max_step = sim_max_step;
    } catch (const Error& e) {
      return usage_error(err, *sim, e.what());
    }
    const ModelKind model = sim_model == "physical" ? ModelKind::Physical : ModelKind::Auxiliary;
    if (model == ModelKind::Physical && k.omega < 0.0) return usage_error(err, *sim, "omega must be non-negative");
    Trajectory traj;
    try {
      traj = integrate(model, initial, k, cfg);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidConfig || e.kind() == ErrorKind::SeparationTooSmall ||
          e.kind() == ErrorKind::InvalidArgument) {
        return usage_error(err, *sim, e.what());
      }
      err << "error: " << e.what() << '\n';
      return kExitNumeric;
    }
    try {
      const std::string body =
          sim_format == "json" ? trajectory_json(traj, k, cfg).dump(2) + "\n" : trajectory_csv(traj);
      write_output(sim_output, body, out);
    } catch (const Error& e) {
      return usage_error(err, *sim, e.what());
    }
    if (traj.termination != Termination::Completed) {
      err << "terminated: " << to_string(traj.termination) << " (" << traj.message << ")\n";
      return kExitNumeric;
    }
    return kExitOk;
  }

  if (ver->parsed()) {
    VerifyOptions o;
    try {
      o.suite = ver_suite;
      o.couplings = parse_couplings(ver_couplings, ver_omega);
      o.samples = ver_samples;
      o.seed = ver_seed;
      o.box = ver_box;
    } catch (const Error& e) {
      return usage_error(err, *ver, e.what());
    }
    VerifyReport report;
    try {
      report = run_verify(o);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::InvalidConfig) {
        return usage_error(err, *ver, e.what());
      }
      err << "error: " << e.what() << '\n';
      return kExitNumeric;
    }
    try {
      write_output(ver_output, ver_json ? verify_json(report).dump(2) + "\n" : verify_text(report), out);
    } catch (const Error& e) {
      return usage_error(err, *ver, e.what());
    }
    return report.acceptable() ? kExitOk : kExitVerifyFailed;
  }

  if (cls->parsed()) {
    Couplings k;
    try {
      k = parse_couplings(cls_couplings);
    } catch (const Error& e) {
      return usage_error(err, *cls, e.what());
    }
    const RootProfile prof = classify(k);
    out << (cls_json ? profile_json(prof).dump(2) + "\n" : profile_text(prof));
    return kExitOk;
  }

  if (scn->parsed()) {
    ScanRange p, q;
    try {
      p = parse_range(scn_p);
      q = parse_range(scn_q);
    } catch (const Error& e) {
      return usage_error(err, *scn, e.what());
    }
    try {
      write_output(scn_output, scan_csv(scan_grid(p, q)), out);
    } catch (const Error& e) {
      return usage_error(err, *scn, e.what());
    }
    return kExitOk;
  }

  if (red->parsed()) {
    Couplings k;
    State3 s;
    try {
      k = parse_couplings(red_couplings);
      s = parse_state(red_state);
      if (!s.is_real()) throw Error(ErrorKind::InvalidArgument, "reduce needs a real state");
    } catch (const Error& e) {
      return usage_error(err, *red, e.what());
    }
    const PlanePoint p = to_plane(s);
    out << "zeta: " << format_double(p.zeta) << "\neta: " << format_double(p.eta)
        << "\nxi: " << format_double(p.xi) << '\n';
    try {
      const PlaneVelocity v = reduced_rhs(p.eta, p.xi, k);
      out << "eta_dot: " << format_double(v.eta) << "\nxi_dot: " << format_double(v.xi) << '\n';
    } catch (const Error& e) {
      err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
      return kExitNumeric;
    }
    try {
      out << "slope: " << format_double(characteristic_slope(p.eta, p.xi, k)) << '\n';
    } catch (const Error& e) {
      out << "slope: undefined (" << to_string(e.kind()) << ")\n";
    }
    try {
      out << "reduced_potential: " << format_double(reduced_potential(p.eta, p.xi, k)) << '\n';
    } catch (const Error& e) {
      out << "reduced_potential: undefined (" << to_string(e.kind()) << ")\n";
    }
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace aristo
