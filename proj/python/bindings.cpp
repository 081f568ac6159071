#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aristo/conserved.hpp"
#include "aristo/integrator.hpp"
#include "aristo/model.hpp"
#include "aristo/report.hpp"
#include "aristo/roots.hpp"
#include "aristo/verify.hpp"

namespace py = pybind11;
using namespace aristo;

namespace {

State3 to_state(const std::vector<Complex>& z) {
  if (z.size() != 3) throw Error(ErrorKind::InvalidArgument, "state needs three entries");
  return State3(z[0], z[1], z[2]);
}

std::vector<Complex> from_vec(const CVec3& v) { return {v[0], v[1], v[2]}; }

Couplings make_couplings(double a, double b, double c, double omega) { return Couplings{a, b, c, omega}; }

ModelKind parse_model(const std::string& name) {
  if (name == "physical") return ModelKind::Physical;
  if (name == "auxiliary") return ModelKind::Auxiliary;
  throw Error(ErrorKind::InvalidArgument, "model must be physical or auxiliary");
}

}  // namespace

PYBIND11_MODULE(_aristo, m) {
  m.doc() = "Native core of the aristo package";

  py::register_exception<Error>(m, "AristoError", PyExc_ValueError);

  m.def("auxiliary_rhs",
        [](const std::vector<Complex>& z, double a, double b, double c) {
          return from_vec(auxiliary_rhs(to_state(z), make_couplings(a, b, c, 1.0)));
        },
        py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("physical_rhs",
        [](const std::vector<Complex>& z, double a, double b, double c, double omega) {
          return from_vec(physical_rhs(to_state(z), make_couplings(a, b, c, omega)));
        },
        py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("omega"));

  m.def("grad_potential",
        [](const std::vector<Complex>& z, double a, double b, double c) {
          return from_vec(grad_potential(to_state(z), make_couplings(a, b, c, 1.0)));
        },
        py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("tau_of_time", &tau_of_time, py::arg("t"), py::arg("omega"));

  m.def("h1", [](const std::vector<Complex>& z) { return h1(to_state(z)); }, py::arg("state"));

  m.def("h2",
        [](Complex tau, const std::vector<Complex>& z, double a, double b, double c) {
          return h2_aux(ExtendedPoint{tau, to_state(z)}, make_couplings(a, b, c, 1.0));
        },
        py::arg("tau"), py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("h3",
        [](Complex tau, const std::vector<Complex>& z, double a, double b, double c) {
          return h3_aux(ExtendedPoint{tau, to_state(z)}, make_couplings(a, b, c, 1.0));
        },
        py::arg("tau"), py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("fundamental_dirres",
        [](const std::vector<Complex>& z, double a, double b, double c) -> py::object {
          const Couplings k = make_couplings(a, b, c, 1.0);
          auto fi = fundamental_integral(k);
          if (!fi) return py::none();
          const State3 s = to_state(z);
          return py::float_(directional_residual(fi->gradient(s), s, k).normalized());
        },
        py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("classify_json",
        [](double a, double b, double c) { return profile_json(classify(make_couplings(a, b, c, 1.0))).dump(); },
        py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("cubic_roots",
        [](double p, double q) {
          const CubicRoots r = cubic_roots(p, q);
          return std::vector<Complex>(r.roots.begin(), r.roots.end());
        },
        py::arg("p"), py::arg("q"));

  m.def("verify_json",
        [](const std::string& suite, double a, double b, double c, double omega, int samples,
           std::uint64_t seed, double box) {
          VerifyOptions opts;
          opts.suite = suite;
          opts.couplings = make_couplings(a, b, c, omega);
          opts.samples = samples;
          opts.seed = seed;
          opts.box = box;
          py::gil_scoped_release release;
          return verify_json(run_verify(opts)).dump();
        },
        py::arg("suite"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("omega"),
        py::arg("samples"), py::arg("seed"), py::arg("box"));

  m.def("integrate_json",
        [](const std::string& model, const std::vector<Complex>& z, double a, double b, double c,
           double omega, double t0, double t1, double rtol, double atol, Complex tau0) {
          const Couplings k = make_couplings(a, b, c, omega);
          IntegrationConfig cfg;
          cfg.t0 = t0;
          cfg.t1 = t1;
          cfg.rtol = rtol;
          cfg.atol = atol;
          cfg.tau0 = tau0;
          const Trajectory traj = integrate(parse_model(model), to_state(z), k, cfg);
          return trajectory_json(traj, k, cfg).dump();
        },
        py::arg("model"), py::arg("state"), py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("omega"), py::arg("t0"), py::arg("t1"), py::arg("rtol"), py::arg("atol"),
        py::arg("tau0"));

  m.attr("TRAJECTORY_CSV_HEADER") = kTrajectoryCsvHeader;
  m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
