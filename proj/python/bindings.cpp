// Python bindings for the framebound core: frame constants, group
// admissibility, moments of mass and the spectral bound evaluators.

#include "framebound/bounds.hpp"
#include "framebound/elliptic.hpp"
#include "framebound/errors.hpp"
#include "framebound/frames.hpp"
#include "framebound/groups.hpp"
#include "framebound/linalg.hpp"
#include "framebound/moments.hpp"
#include "framebound/symfunc.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;

namespace {

using framebound::Rational;
using framebound::linalg::TransformMatrix;

using Rows = std::vector<std::vector<double>>;

TransformMatrix to_matrix(const Rows& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw framebound::domain_error("matrix must be a nonempty list of rows");
  }
  Eigen::MatrixXd m(static_cast<int>(rows.size()),
                    static_cast<int>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw framebound::domain_error("matrix rows must share one length");
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  return TransformMatrix(std::move(m));
}

std::vector<Rational> to_rationals(const std::vector<double>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const double v : values) {
    out.push_back(framebound::rational_from_double(v));
  }
  return out;
}

framebound::moments::Shape shape_from_text(const std::string& text) {
  return framebound::moments::shape_from_json(nlohmann::json::parse(text));
}

py::dict report_to_dict(const framebound::bounds::BoundReport& report) {
  py::dict d;
  d["operator"] = report.operator_name;
  d["frame_order"] = report.frame_order;
  d["factor"] = report.factor;
  d["reference"] = report.reference;
  d["bound"] = report.bound;
  if (report.rescaled_tau) {
    d["rescaled_tau"] = *report.rescaled_tau;
  }
  if (report.rescaled_mass) {
    d["rescaled_mass"] = *report.rescaled_mass;
  }
  d["equality_case"] = report.equality_case;
  py::dict details;
  for (const auto& [key, value] : report.details) {
    details[py::str(key)] = value;
  }
  d["details"] = details;
  d["notes"] = report.notes;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized tight p-frame constants and sharp spectral bounds "
            "for linearly transformed symmetric domains";

  // ---- symmetric functions ----
  m.def("enumerate_partitions", [](int p) {
    std::vector<std::vector<int>> out;
    for (const auto& lambda : framebound::symfunc::enumerate_partitions(p)) {
      out.push_back(lambda.parts());
    }
    return out;
  }, py::arg("p"), "All partitions of p in decreasing lexicographic order.");

  m.def("cycle_index_string", [](int p, double theta) {
    auto z = framebound::symfunc::cycle_index_terms(p);
    if (theta != 1.0) {
      z = framebound::symfunc::theta_scale(
          z, framebound::rational_from_double(theta));
    }
    return z.to_string();
  }, py::arg("p"), py::arg("theta") = 1.0,
     "Cycle index of S_p in the power-sum basis (optionally theta-scaled).");

  m.def("chi2_moment", [](const std::vector<double>& a, int p, bool doubled) {
    return framebound::to_double(
        framebound::symfunc::chi2_moment(to_rationals(a), p, doubled));
  }, py::arg("a"), py::arg("p"), py::arg("doubled") = false,
     "E (sum a_i X_i^2)^p for standard normal X_i.");

  m.def("chi2_moment_exact", [](const std::vector<double>& a, int p,
                                bool doubled) {
    return framebound::rational_string(
        framebound::symfunc::chi2_moment(to_rationals(a), p, doubled));
  }, py::arg("a"), py::arg("p"), py::arg("doubled") = false);

  // ---- linear algebra ----
  m.def("squared_singular_values", [](const Rows& rows) {
    return framebound::linalg::squared_singular_values(to_matrix(rows));
  }, py::arg("matrix"));

  m.def("schatten", [](const Rows& rows, int order, const std::string& method) {
    const auto mode = method == "spectral"
                          ? framebound::linalg::SchattenMethod::Spectral
                          : framebound::linalg::SchattenMethod::TracePower;
    return framebound::linalg::schatten(to_matrix(rows), order, mode);
  }, py::arg("matrix"), py::arg("order"), py::arg("method") = "trace",
     "||T||_{2k}^{2k} for even order 2k.");

  // ---- frame constants ----
  m.def("fp", [](const std::vector<double>& s2, int p) {
    return framebound::frames::fp_value(s2, p);
  }, py::arg("s2"), py::arg("p"),
     "F_p of a multiset of squared singular values.");

  m.def("fp_exact", [](const std::vector<double>& s2, int p) {
    return framebound::rational_string(
        framebound::frames::fp_exact(to_rationals(s2), p));
  }, py::arg("s2"), py::arg("p"));

  m.def("fp_from_matrix", [](const Rows& rows, int p) {
    return framebound::frames::fp_from_matrix(to_matrix(rows), p).value;
  }, py::arg("matrix"), py::arg("p"));

  m.def("fp_montecarlo", [](const Rows& rows, double p, std::uint64_t samples,
                            std::uint64_t seed) {
    const auto mc =
        framebound::frames::fp_montecarlo(to_matrix(rows), p, samples, seed);
    return py::make_tuple(mc.estimate, mc.standard_error);
  }, py::arg("matrix"), py::arg("p"), py::arg("samples") = 1000000,
     py::arg("seed") = 0);

  m.def("fp_sphere_2d", &framebound::frames::fp_sphere_2d, py::arg("s2a"),
        py::arg("s2b"), py::arg("p"));

  m.def("orbit_average", [](const std::string& group, const Rows& rows,
                            const std::vector<double>& x, int p) {
    const auto g = framebound::groups::parse_group_spec(group);
    Eigen::VectorXd vec(static_cast<int>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      vec[static_cast<int>(i)] = x[i];
    }
    return framebound::frames::orbit_average(g, to_matrix(rows), vec, p);
  }, py::arg("group"), py::arg("matrix"), py::arg("x"), py::arg("p"));

  m.def("verify_frame", [](const std::string& group, const Rows& rows, int p,
                           int trials, double tol, std::uint64_t seed) {
    const auto g = framebound::groups::parse_group_spec(group);
    const auto v = framebound::frames::verify_tight_frame(
        g, to_matrix(rows), p, trials, tol, seed);
    py::dict d;
    d["group"] = v.group;
    d["p"] = v.p;
    d["d"] = v.d;
    d["value"] = v.frame_constant;
    d["deviation"] = v.max_relative_deviation;
    d["verdict"] = v.tight ? "tight" : "not-tight";
    d["trials"] = v.trials;
    d["tol"] = v.tolerance;
    d["seed"] = v.seed;
    return d;
  }, py::arg("group"), py::arg("matrix"), py::arg("p"), py::arg("trials") = 50,
     py::arg("tol") = 1e-9, py::arg("seed") = 0);

  m.def("sandwich", [](const Rows& rows, int p) {
    const auto [lower, upper] =
        framebound::frames::nontight_sandwich(to_matrix(rows), p);
    return py::make_tuple(lower, upper);
  }, py::arg("matrix"), py::arg("p"));

  m.def("multiplier_transform", [](const std::function<double(double)>& phi1,
                                   const std::function<double(double)>& phi2,
                                   const Rows& rows, double t) {
    return framebound::frames::multiplier_transform(phi1, phi2, to_matrix(rows),
                                                    t);
  }, py::arg("phi1"), py::arg("phi2"), py::arg("matrix"), py::arg("t"));

  // ---- groups ----
  m.def("group_order", [](const std::string& group) {
    return framebound::groups::parse_group_spec(group).order();
  }, py::arg("group"));

  m.def("molien", [](const std::string& group, int max_degree) {
    const auto g = framebound::groups::parse_group_spec(group);
    return framebound::groups::molien_series(g, max_degree).coefficients();
  }, py::arg("group"), py::arg("max_degree") = 10);

  m.def("molien_polynomial", [](const std::string& group, int max_degree) {
    const auto g = framebound::groups::parse_group_spec(group);
    return framebound::groups::molien_series(g, max_degree)
        .to_polynomial_string();
  }, py::arg("group"), py::arg("max_degree") = 10);

  m.def("max_frame_order", [](const std::string& group, int p_max) {
    const auto g = framebound::groups::parse_group_spec(group);
    return framebound::groups::max_frame_order(g, p_max);
  }, py::arg("group"), py::arg("p_max") = 16);

  // ---- moments ----
  m.def("moment", [](const std::string& shape_json, int p) {
    return framebound::moments::moment(shape_from_text(shape_json), p);
  }, py::arg("shape"), py::arg("p"),
     "I_{2p} of a shape given as its JSON description.");

  m.def("moment_ratio", [](const std::string& shape_json, int p) {
    return framebound::moments::moment_report(shape_from_text(shape_json), p)
        .ratio;
  }, py::arg("shape"), py::arg("p"));

  m.def("transformed_moment", [](const std::string& shape_json,
                                 const Rows& rows, int p) {
    return framebound::moments::transformed_moment(shape_from_text(shape_json),
                                                   to_matrix(rows), p);
  }, py::arg("shape"), py::arg("matrix"), py::arg("p"));

  m.def("two_dim_reciprocity", [](const std::string& shape_json,
                                  const Rows& rows, int p) {
    const auto [forward, backward] = framebound::moments::two_dim_reciprocity(
        shape_from_text(shape_json), to_matrix(rows), p);
    return py::make_tuple(forward, backward);
  }, py::arg("shape"), py::arg("matrix"), py::arg("p"));

  // ---- bounds ----
  m.def("ellipse_perimeter", &framebound::ellipse_perimeter, py::arg("a"),
        py::arg("b"));

  m.def("plate_bound", [](const Rows& rows, double ref, double tau, int order) {
    return report_to_dict(
        framebound::bounds::plate_bound(to_matrix(rows), ref, tau, order));
  }, py::arg("matrix"), py::arg("ref"), py::arg("tau") = 0.0,
     py::arg("order") = 2);

  m.def("buckling_bound", [](const Rows& rows, double ref) {
    return report_to_dict(
        framebound::bounds::buckling_bound(to_matrix(rows), ref));
  }, py::arg("matrix"), py::arg("ref"));

  m.def("fractional_bound", [](const Rows& rows, double alpha, double ref) {
    return report_to_dict(
        framebound::bounds::fractional_bound(to_matrix(rows), alpha, ref));
  }, py::arg("matrix"), py::arg("alpha"), py::arg("ref"));

  m.def("perimeter_bound", [](double a, double b, double alpha, double ref) {
    return report_to_dict(framebound::bounds::fractional_ellipse_perimeter_bound(
        a, b, alpha, ref));
  }, py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("ref"));

  m.def("klein_gordon_bound", [](const Rows& rows, double mass, double ref) {
    return report_to_dict(
        framebound::bounds::klein_gordon_bound(to_matrix(rows), mass, ref));
  }, py::arg("matrix"), py::arg("mass"), py::arg("ref"));

  m.def("subordinator_bound", [](const Rows& rows, double beta, double ref) {
    return report_to_dict(
        framebound::bounds::subordinator_bound(to_matrix(rows), beta, ref));
  }, py::arg("matrix"), py::arg("beta"), py::arg("ref"));

  m.def("john_bound", [](double a, double alpha, double lambda_disk,
                         bool symmetric) {
    const auto jb = framebound::bounds::john_domain_bound(
        a, alpha, lambda_disk, symmetric);
    return py::make_tuple(jb.upper, jb.lower);
  }, py::arg("a"), py::arg("alpha"), py::arg("lambda_disk"),
     py::arg("symmetric") = false);

  m.def("tables", [](const std::string& kind) {
    const auto table = kind == "plate" ? framebound::bounds::plate_table()
                                       : framebound::bounds::buckling_table();
    py::dict d;
    d["ratios"] = table.ratios;
    d["one_frame"] = table.one_frame;
    d["two_frame"] = table.two_frame;
    d["reference"] = table.reference;
    return d;
  }, py::arg("kind"), "The ellipse plate/buckling bound tables.");

  // exceptions -> python
  py::register_exception<framebound::domain_error>(m, "DomainError",
                                                   PyExc_ValueError);
  py::register_exception<framebound::precondition_error>(m, "PreconditionError",
                                                         PyExc_ValueError);
  py::register_exception<framebound::resource_error>(m, "ResourceError",
                                                     PyExc_RuntimeError);
  py::register_exception<framebound::numerical_error>(m, "NumericalError",
                                                      PyExc_ArithmeticError);
}
