#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poissonlab/constants.hpp"
#include "poissonlab/norms.hpp"
#include "poissonlab/poisson.hpp"
#include "poissonlab/report.hpp"
#include "poissonlab/singular.hpp"
#include "poissonlab/verify.hpp"

namespace py = pybind11;
using namespace poissonlab;

namespace {

QuadratureSpec spec_with(int nodes) {
  QuadratureSpec s;
  if (nodes > 0) s.periodic_nodes = nodes;
  s.validate();
  return s;
}

Quantity quantity_from(const std::string& q) {
  for (Quantity v : {Quantity::w, Quantity::w_r, Quantity::w_theta, Quantity::w_z, Quantity::w_zbar,
                     Quantity::conj_w_zbar})
    if (to_string(v) == q) return v;
  throw DomainError("unknown quantity '" + q + "'");
}

Route route_from(const std::string& r) {
  if (r == "quadrature") return Route::quadrature;
  if (r == "spectral") return Route::spectral;
  if (r == "both") return Route::both;
  throw DomainError("unknown route '" + r + "'");
}

py::dict pv_dict(const PvResult& r) {
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["limit"] = r.limit;
  d["slope"] = r.slope;
  d["fit_quality"] = r.fit_quality;
  py::list vals;
  for (const auto& s : r.values) vals.append(py::make_tuple(s.epsilon, s.value));
  d["values"] = vals;
  return d;
}

}  // namespace

PYBIND11_MODULE(_poissonlab, m) {
  m.doc() = "Core routines of poissonlab";
  m.attr("__version__") = version_string;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RouteDisagreement>(m, "RouteDisagreement", PyExc_ArithmeticError);

  m.def("poisson_kernel", &poisson_kernel, py::arg("r"), py::arg("x"));
  m.def("families", &catalog_names);

  m.def(
      "evaluate",
      [](const std::string& family, double r, double theta, const std::string& quantity,
         const std::string& route, int nodes) {
        const auto spec = spec_with(nodes);
        const HarmonicMap w = extend(catalog(parse_family(family)), spec, route_from(route));
        return w.value(quantity_from(quantity), r, theta);
      },
      py::arg("family"), py::arg("r"), py::arg("theta"), py::arg("quantity") = "w",
      py::arg("route") = "both", py::arg("nodes") = 0);

  m.def(
      "deriv_norm",
      [](const std::string& family, double p) {
        return lp_norm_deriv(catalog(parse_family(family)), p, QuadratureSpec{});
      },
      py::arg("family"), py::arg("p"));

  m.def(
      "c_of_p",
      [](double p) {
        const auto c = c_of_p(p, QuadratureSpec{});
        py::dict d;
        d["p"] = c.p;
        d["c_weighted"] = c.c_weighted;
        d["c_unweighted"] = c.c_unweighted;
        d["c_bound"] = c.c_bound;
        d["table_value"] = c.table_value ? py::cast(*c.table_value) : py::none();
        d["bound_satisfied_weighted"] = c.bound_satisfied_weighted;
        d["table_matches_unweighted"] = c.table_matches_unweighted;
        d["table_matches_weighted"] = c.table_matches_weighted;
        return d;
      },
      py::arg("p"));

  m.def("I_of_r", &I_of_r, py::arg("r"));
  m.def("phi_of_r", &phi_of_r, py::arg("r"));
  m.def(
      "log_moment",
      [](double alpha, double p) { return log_moment(alpha, p, QuadratureSpec{}); },
      py::arg("alpha"), py::arg("p"));

  m.def(
      "hilbert",
      [](const std::string& family, double theta) {
        return pv_dict(hilbert_transform(catalog(parse_family(family)), theta, QuadratureSpec{}));
      },
      py::arg("family"), py::arg("theta"));

  m.def("sakan_subintegrals", [] {
    const auto s = sakan_subintegrals(QuadratureSpec{});
    return py::make_tuple(s.first, s.second, s.third);
  });

  m.def(
      "verify_json",
      [](const std::vector<std::string>& corpus, const std::vector<double>& p_list,
         const std::vector<std::string>& theorems, std::uint64_t seed, int workers) {
        std::vector<FamilySpec> fams;
        for (const auto& f : corpus) fams.push_back(parse_family(f));
        if (fams.empty()) fams = default_corpus(seed);
        VerifyOptions o;
        if (!p_list.empty()) o.p_list = p_list;
        if (!theorems.empty()) {
          o.theorems.clear();
          for (const auto& t : theorems) o.theorems.push_back(theorem_from_string(t));
        }
        o.workers = workers;
        VerificationReport rep;
        {
          py::gil_scoped_release release;
          rep = run_corpus(fams, o, QuadratureSpec{}, seed);
        }
        return to_json(make_report(rep));
      },
      py::arg("corpus") = std::vector<std::string>{}, py::arg("p_list") = std::vector<double>{},
      py::arg("theorems") = std::vector<std::string>{}, py::arg("seed") = 0,
      py::arg("workers") = 1);
}
