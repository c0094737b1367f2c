#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polygonflow/ellipse.hpp"
#include "polygonflow/harmonic.hpp"
#include "polygonflow/hetero.hpp"
#include "polygonflow/periodicity.hpp"
#include "polygonflow/polygon.hpp"
#include "polygonflow/spectral.hpp"

namespace py = pybind11;
namespace pf = polygonflow;

namespace {

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

py::list mat_rows(const pf::Mat2& m) {
  py::list rows;
  rows.append(py::make_tuple(m.a11, m.a12));
  rows.append(py::make_tuple(m.a21, m.a22));
  return rows;
}

pf::Mat2 mat_from(const std::vector<std::vector<double>>& rows) {
  if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) {
    throw py::value_error("expected a 2x2 nested sequence");
  }
  return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

py::object optional_float(const std::optional<double>& v) {
  return v ? py::object(py::float_(*v)) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted-average polygon iteration: spectra, closed forms, limit ellipses.";

  py::register_exception<pf::Error>(m, "PolygonflowError", PyExc_ValueError);

  py::class_<pf::Polygon>(m, "Polygon")
      .def(py::init([](std::vector<double> xs, std::vector<double> ys) {
             return pf::make_polygon(std::move(xs), std::move(ys));
           }),
           py::arg("xs"), py::arg("ys"))
      .def_property_readonly("xs", [](const pf::Polygon& p) { return to_vector(p.xs()); })
      .def_property_readonly("ys", [](const pf::Polygon& p) { return to_vector(p.ys()); })
      .def("__len__", &pf::Polygon::size)
      .def("__eq__", [](const pf::Polygon& a, const pf::Polygon& b) { return a == b; });

  py::class_<pf::DivisionScheme>(m, "DivisionScheme")
      .def_static("uniform", &pf::DivisionScheme::uniform, py::arg("xi"))
      .def_static("per_segment", &pf::DivisionScheme::per_segment, py::arg("xis"))
      .def_property_readonly("is_uniform", &pf::DivisionScheme::is_uniform)
      .def_property_readonly("values",
                             [](const pf::DivisionScheme& s) { return to_vector(s.values()); });

  m.def("random_polygon", &pf::random_polygon, py::arg("n"), py::arg("seed"),
        py::arg("half_width") = 1.0);
  m.def("centroid", [](const pf::Polygon& p) {
    const auto c = pf::centroid(p);
    return py::make_tuple(c.x, c.y);
  });
  m.def("center_and_normalize", &pf::center_and_normalize);
  m.def(
      "iterate",
      [](const pf::Polygon& p, const pf::DivisionScheme& scheme, std::size_t steps,
         bool normalized) {
        const auto trace = pf::iterate(
            p, scheme, steps,
            normalized ? pf::IterationMode::Normalized : pf::IterationMode::Unnormalized);
        py::list norms;
        for (const auto& nrm : trace.norms) norms.append(py::make_tuple(nrm.x, nrm.y));
        py::dict out;
        out["polygons"] = trace.polygons;
        out["norms"] = norms;
        return out;
      },
      py::arg("polygon"), py::arg("scheme"), py::arg("steps"), py::arg("normalized") = true);

  m.def("roots_of_unity", &pf::roots_of_unity, py::arg("n"));
  m.def(
      "eigenpair",
      [](std::size_t n, double xi, std::size_t j) {
        const auto e = pf::eigenpair(n, xi, j);
        py::dict out;
        out["omega"] = e.omega;
        out["lambda"] = e.lambda;
        out["vector"] = e.vector;
        return out;
      },
      py::arg("n"), py::arg("xi"), py::arg("j"));
  m.def(
      "damping_factor",
      [](std::size_t n, double xi) {
        const auto r = pf::damping_factor(n, xi);
        py::dict out;
        out["rho"] = r.rho;
        out["rho_closed_form"] = r.rho_closed_form;
        out["rho_literal_formula"] = r.rho_literal_formula;
        out["argmin_xi"] = r.argmin_xi;
        out["magnitudes"] = r.magnitudes;
        return out;
      },
      py::arg("n"), py::arg("xi"));
  m.def("damping_argmin_scan", &pf::damping_argmin_scan, py::arg("n"),
        py::arg("grid_points") = pf::kDefaultDampingGrid);

  m.def(
      "rotation_number",
      [](std::size_t n, double xi) {
        const auto r = pf::rotation_number(n, xi);
        py::dict out;
        out["alpha"] = r.alpha;
        out["beta"] = r.beta;
        out["z"] = r.z;
        out["modulus"] = r.modulus;
        out["phase"] = r.phase;
        return out;
      },
      py::arg("n"), py::arg("xi"));
  m.def("closed_power_S", &pf::closed_power_S, py::arg("n"), py::arg("xi"), py::arg("k"));
  m.def("closed_power_C", &pf::closed_power_C, py::arg("n"), py::arg("xi"), py::arg("k"));
  m.def(
      "project_D2",
      [](const std::vector<double>& vec) {
        const auto p = pf::project_D2(vec);
        py::dict out;
        out["zeta"] = p.zeta;
        out["eta"] = p.eta;
        out["theta"] = optional_float(p.theta);
        out["residual"] = p.residual;
        return out;
      },
      py::arg("vec"));
  m.def("predict_vertex_vectors", &pf::predict_vertex_vectors, py::arg("theta_u"),
        py::arg("theta_v"), py::arg("n"), py::arg("xi"), py::arg("k"));
  m.def("predicted_norm", &pf::predicted_norm, py::arg("n"), py::arg("xi"), py::arg("k"));

  m.def(
      "coefficient_matrix",
      [](double theta_u, double theta_v, std::size_t n, double xi, std::size_t k) {
        return mat_rows(pf::coefficient_matrix(theta_u, theta_v, n, xi, k).matrix);
      },
      py::arg("theta_u"), py::arg("theta_v"), py::arg("n"), py::arg("xi"), py::arg("k"));
  m.def(
      "svd_2x2",
      [](const std::vector<std::vector<double>>& rows) {
        const auto d = pf::svd_2x2(mat_from(rows));
        py::dict out;
        out["u"] = mat_rows(d.u);
        out["sigma"] = py::make_tuple(d.sigma1, d.sigma2);
        out["v"] = mat_rows(d.v);
        out["orientation"] = optional_float(d.orientation);
        return out;
      },
      py::arg("matrix"));
  m.def("paper_sigma", &pf::paper_sigma, py::arg("theta_u"), py::arg("theta_v"), py::arg("k"),
        py::arg("arg_z"), py::arg("n"));
  m.def(
      "fit_ellipse",
      [](const std::vector<std::pair<double, double>>& pts) {
        std::vector<pf::Point> points;
        for (const auto& [x, y] : pts) points.push_back({x, y});
        const auto f = pf::fit_ellipse(points);
        py::dict out;
        out["center"] = py::make_tuple(f.center.x, f.center.y);
        out["semi_axes"] = f.semi_axes;
        out["angle"] = f.angle;
        return out;
      },
      py::arg("points"));

  m.def("continued_fraction", &pf::continued_fraction, py::arg("x"), py::arg("max_terms"));
  m.def(
      "rational_multiple_of_pi",
      [](double phi, std::int64_t q_max, double tol) -> py::object {
        const auto r = pf::rational_multiple_of_pi(phi, q_max, tol);
        if (!r) return py::none();
        return py::make_tuple(r->p, r->q);
      },
      py::arg("phi"), py::arg("q_max"), py::arg("tol") = pf::kExactRationalTol);
  m.def(
      "exact_period",
      [](std::size_t n, double xi, std::int64_t q_max) -> py::object {
        const auto r = pf::exact_period(n, xi, q_max);
        if (!r) return py::none();
        return py::int_(r->period);
      },
      py::arg("n"), py::arg("xi"), py::arg("q_max") = pf::kDefaultQMax);
  m.def(
      "near_periods",
      [](std::size_t n, double xi, std::int64_t q_max) {
        py::list out;
        for (const auto& np : pf::near_periods(n, xi, q_max)) {
          out.append(py::make_tuple(np.period, np.deviation));
        }
        return out;
      },
      py::arg("n"), py::arg("xi"), py::arg("q_max") = pf::kDefaultQMax);

  m.def(
      "left_fixed_vector",
      [](std::size_t n, const pf::DivisionScheme& scheme) {
        return pf::left_fixed_vector(pf::build_transform(n, scheme));
      },
      py::arg("n"), py::arg("scheme"));
  m.def(
      "predict_limit_point",
      [](const pf::Polygon& p, const pf::DivisionScheme& scheme) {
        const auto pt = pf::predict_limit_point(p, pf::build_transform(p.size(), scheme));
        return py::make_tuple(pt.x, pt.y);
      },
      py::arg("polygon"), py::arg("scheme"));
  m.def(
      "hetero_period_lcm",
      [](const std::vector<std::int64_t>& periods) { return pf::hetero_period_lcm(periods); },
      py::arg("periods"));
}
