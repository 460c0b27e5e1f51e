// Python bindings for the kpzlab library.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpz/asymptotics.hpp"
#include "kpz/bethe.hpp"
#include "kpz/duality.hpp"
#include "kpz/errors.hpp"
#include "kpz/fredholm.hpp"
#include "kpz/sde.hpp"
#include "kpz/specfun.hpp"

namespace py = pybind11;
using namespace kpz;

namespace {

ModelParams params_of(double tau) { return ModelParams::from_tau(tau); }

std::vector<std::vector<double>> positions(const std::vector<Config>& v) {
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (auto& c : v) out.push_back(c.positions());
  return out;
}

}  // namespace

PYBIND11_MODULE(_kpz, m) {
  m.doc() = "Point-interacting Brownian motions: simulation, duality, Bethe ansatz, Fredholm determinants";

  static py::exception<Error> err(m, "KpzError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(err, (std::string(error_class_name(e.cls())) + ": " + e.what()).c_str());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def_static("from_tau", &ModelParams::from_tau)
      .def_static("from_p", &ModelParams::from_p)
      .def_readonly("p", &ModelParams::p)
      .def_readonly("q", &ModelParams::q)
      .def_readonly("tau", &ModelParams::tau)
      .def_readonly("gamma", &ModelParams::gamma);

  // special functions
  m.def("q_pochhammer_inf", [](cplx a, double tau) { return q_pochhammer_inf(a, tau); });
  m.def("e_tau", [](cplx z, double tau) { return e_tau(z, tau); });
  m.def("airy", [](double x) {
    auto a = airy(x);
    return py::make_tuple(a.ai, a.aip);
  });

  // duality
  m.def(
      "f_n_initial", [](std::vector<double> x, double tau) { return f_n_initial(Config::decreasing(x), params_of(tau)); },
      py::arg("x"), py::arg("tau"));
  m.def(
      "f_n_contour",
      [](std::vector<double> x, double t, double tau) {
        return f_n_contour(Config::decreasing(x), t, params_of(tau)).value;
      },
      py::arg("x"), py::arg("t"), py::arg("tau"));
  m.def(
      "moment_tau_n", [](double u, double t, int n, double tau) { return moment_tau_n(u, t, n, params_of(tau)); },
      py::arg("u"), py::arg("t"), py::arg("n"), py::arg("tau"));

  // bethe
  m.def(
      "transition_density_Q",
      [](std::vector<double> y, std::vector<double> x, double t, double tau) {
        return transition_density_Q(Config::increasing(y), Config::increasing(x), t, ModelParams::from_tau(tau)).value;
      },
      py::arg("y"), py::arg("x"), py::arg("t"), py::arg("tau"));
  m.def(
      "cdf_gN",
      [](double u, std::vector<double> y, double t, double tau) {
        return cdf_gN(u, Config::increasing(y), t, params_of(tau)).value;
      },
      py::arg("u"), py::arg("y"), py::arg("t"), py::arg("tau"));

  // simulation
  m.def(
      "simulate",
      [](std::vector<double> y0, double t, double tau, double dt, std::size_t n_paths, std::uint64_t seed,
         const std::string& scheme, double epsilon) {
        SimSpec s;
        s.params = params_of(tau);
        s.t_end = t;
        s.dt = dt;
        s.n_paths = n_paths;
        s.seed = seed;
        s.scheme = scheme_from_name(scheme);
        s.potential.epsilon = epsilon;
        py::gil_scoped_release rel;
        auto y = Config::increasing(y0);
        return positions(s.scheme == Scheme::potential ? simulate_potential(s, y) : simulate_oblique(s, y));
      },
      py::arg("y0"), py::arg("t"), py::arg("tau"), py::arg("dt") = 1e-3, py::arg("n_paths") = 1000,
      py::arg("seed") = 0, py::arg("scheme") = "bridge", py::arg("epsilon") = 0.1);

  // fredholm
  m.def("tw_gue_cdf", &tw_gue_cdf, py::arg("s"));
  m.def("tw_goe_cdf", &tw_goe_cdf, py::arg("s"));
  m.def(
      "det_K",
      [](cplx zeta, double u, double t, double tau, double tol) {
        DetSpec d;
        d.u = u;
        d.t = t;
        d.params = params_of(tau);
        d.fred.tol = tol;
        return det_K(zeta, d).value;
      },
      py::arg("zeta"), py::arg("u"), py::arg("t"), py::arg("tau"), py::arg("tol") = 1e-10,
      "det(1+K); t is the diffusion time");
  m.def(
      "det_K_zeta",
      [](cplx zeta, double u, double t, double tau, double tol) {
        DetSpec d;
        d.u = u;
        d.t = t;
        d.params = params_of(tau);
        d.fred.tol = tol;
        return det_K_zeta(zeta, d).value;
      },
      py::arg("zeta"), py::arg("u"), py::arg("t"), py::arg("tau"), py::arg("tol") = 1e-8,
      "det(1+K_zeta); t is the gamma-rescaled time");
  m.def(
      "det_Kr", [](double a, double r) { return det_Kr(a, r).value; }, py::arg("a"), py::arg("r"));

  // asymptotics
  m.def("lln_counts", &lln_counts, py::arg("a"), py::arg("t"));
  m.def("lln_profile", &lln_profile, py::arg("u"), py::arg("t"));
  m.def("saddle_point", [](double a) {
    auto s = saddle_data(a);
    return py::make_tuple(s.z_c, s.G3_at_zc);
  });
}
