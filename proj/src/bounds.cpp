#include "framebound/bounds.hpp"

#include "framebound/elliptic.hpp"
#include "framebound/errors.hpp"
#include "framebound/frames.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace framebound::bounds {

namespace {

Eigen::MatrixXd checked_inverse(const TransformMatrix& t) {
  if (t.rows() != t.cols()) {
    throw domain_error("spectral bounds need a square transformation");
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(t.entries());
  if (!lu.isInvertible()) {
    throw domain_error("spectral bounds need an invertible transformation");
  }
  return lu.inverse();
}

bool scalar_orthogonal(const TransformMatrix& t) {
  const auto s2 = linalg::squared_singular_values(t);
  const double top = s2.front();
  const double bottom = s2.back();
  return top - bottom <= 1e-9 * std::max(top, 1e-300);
}

} // namespace

ReferenceEigenvalues ReferenceEigenvalues::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error(path + ": cannot open file");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  ReferenceEigenvalues refs;
  refs.clamped_plate_disk = j.value("clamped_plate_disk", refs.clamped_plate_disk);
  refs.buckling_disk = j.value("buckling_disk", refs.buckling_disk);
  if (!(refs.clamped_plate_disk > 0) || !(refs.buckling_disk > 0)) {
    throw parse_error(path + ": reference eigenvalues must be positive");
  }
  return refs;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json j;
  j["operator"] = operator_name;
  j["frame_order"] = frame_order;
  j["factor"] = factor;
  j["reference"] = reference;
  j["bound"] = bound;
  if (rescaled_tau) {
    j["rescaled_tau"] = *rescaled_tau;
  }
  if (rescaled_mass) {
    j["rescaled_mass"] = *rescaled_mass;
  }
  j["equality_case"] = equality_case;
  for (const auto& [key, value] : details) {
    j["details"][key] = value;
  }
  j["notes"] = notes;
  return j;
}

std::string BoundReport::to_text() const {
  std::ostringstream out;
  out << operator_name << " bound: " << linalg::format_double(bound) << "\n";
  out << "  factor        " << linalg::format_double(factor) << "\n";
  out << "  reference     " << linalg::format_double(reference) << "\n";
  out << "  frame order   " << frame_order << "\n";
  if (rescaled_tau) {
    out << "  tension'      " << linalg::format_double(*rescaled_tau) << "\n";
  }
  if (rescaled_mass) {
    out << "  mass'         " << linalg::format_double(*rescaled_mass) << "\n";
  }
  out << "  equality case " << (equality_case ? "yes" : "no") << "\n";
  for (const auto& [key, value] : details) {
    out << "  " << key << " = " << linalg::format_double(value) << "\n";
  }
  for (const auto& note : notes) {
    out << "  note: " << note << "\n";
  }
  return out.str();
}

BoundReport plate_bound(const TransformMatrix& t, double lambda_ref,
                        double tau, int order) {
  if (order != 1 && order != 2) {
    throw domain_error("plate bound frame order must be 1 or 2");
  }
  if (tau >= 0 && !(lambda_ref > 0)) {
    throw domain_error("plate bound needs a positive reference eigenvalue "
                       "sum when tau >= 0");
  }
  const TransformMatrix inverse(checked_inverse(t));
  const int d = t.cols();
  const double hs2 = linalg::schatten(inverse, 2);   // ||T^{-1}||_2^2
  const double s4 = linalg::schatten(inverse, 4);    // ||T^{-1}||_4^4
  const double c_const = s4;
  const double d_const = (hs2 * hs2 + 2.0 * s4) / (d + 2.0);
  const double chosen = order == 1 ? c_const : d_const;

  BoundReport report;
  report.operator_name = "plate";
  report.frame_order = order;
  report.factor = chosen / d;
  report.reference = lambda_ref;
  report.bound = report.factor * lambda_ref;
  report.rescaled_tau = tau * chosen / hs2;
  report.equality_case = scalar_orthogonal(t);
  report.details["C"] = c_const;
  report.details["D"] = d_const;
  if (d_const <= c_const) {
    report.notes.push_back("D <= C (quadratic-arithmetic mean)");
  }
  if (tau < 0) {
    report.notes.push_back(
        "tau < 0 (compression): bounds at different tensions are not "
        "comparable");
  }
  return report;
}

BoundReport buckling_bound(const TransformMatrix& t, double lambda_ref) {
  if (!(lambda_ref > 0)) {
    throw domain_error("buckling bound needs a positive reference eigenvalue");
  }
  const TransformMatrix inverse(checked_inverse(t));
  const int d = t.cols();
  const double hs2 = linalg::schatten(inverse, 2);
  const double s4 = linalg::schatten(inverse, 4);

  BoundReport report;
  report.operator_name = "buckling";
  report.frame_order = 2;
  report.factor = (hs2 * hs2 + 2.0 * s4) / ((d + 2.0) * hs2);
  report.reference = lambda_ref;
  report.bound = report.factor * lambda_ref;
  report.equality_case = scalar_orthogonal(t);
  report.details["numerator"] = hs2 * hs2 + 2.0 * s4;
  report.details["hs_norm_sq"] = hs2;
  return report;
}

BoundReport fractional_bound(const TransformMatrix& t, double alpha,
                             double sum_ref) {
  if (!(alpha > 0) || alpha > 2) {
    throw domain_error("fractional order must satisfy 0 < alpha <= 2");
  }
  const TransformMatrix inverse(checked_inverse(t));
  const int d = t.cols();
  const double c = linalg::schatten(inverse, 2) / d;

  BoundReport report;
  report.operator_name = "fractional";
  report.frame_order = 1;
  report.factor = std::pow(c, alpha / 2.0);
  report.reference = sum_ref;
  report.bound = report.factor * sum_ref;
  report.equality_case = scalar_orthogonal(t);
  report.details["alpha"] = alpha;
  report.details["c"] = c;
  return report;
}

BoundReport fractional_ellipse_perimeter_bound(double a, double b,
                                               double alpha, double sum_ref) {
  if (!(a > 0) || !(b > 0)) {
    throw domain_error("ellipse semiaxes must be positive");
  }
  if (!(alpha > 0) || alpha > 1) {
    throw domain_error("perimeter bound needs 0 < alpha <= 1 (the Jensen "
                       "direction fails above 1)");
  }
  const double exact =
      frames::fp_sphere_2d(1.0 / (a * a), 1.0 / (b * b), alpha / 2.0);
  const double perimeter_ratio =
      ellipse_perimeter(1.0 / a, 1.0 / b) / (2.0 * std::numbers::pi);
  const double relaxed = std::pow(perimeter_ratio, alpha);
  if (exact > relaxed * (1.0 + 1e-12)) {
    throw consistency_error("perimeter bound: exact factor exceeded the "
                            "Jensen relaxation");
  }

  BoundReport report;
  report.operator_name = "fractional-perimeter";
  report.frame_order = 1;
  report.factor = exact;
  report.reference = sum_ref;
  report.bound = exact * sum_ref;
  report.equality_case = a == b;
  report.details["alpha"] = alpha;
  report.details["relaxed_factor"] = relaxed;
  report.details["perimeter_over_2pi"] = perimeter_ratio;
  return report;
}

BoundReport klein_gordon_bound(const TransformMatrix& t, double mass,
                               double sum_ref) {
  if (mass < 0) {
    throw domain_error("Klein-Gordon mass must be nonnegative");
  }
  const TransformMatrix inverse(checked_inverse(t));
  const int d = t.cols();
  const double hs = std::sqrt(linalg::schatten(inverse, 2));
  const double sqrt_d = std::sqrt(static_cast<double>(d));

  BoundReport report;
  report.operator_name = "klein-gordon";
  report.frame_order = 1;
  report.factor = hs / sqrt_d;
  report.reference = sum_ref;
  report.bound = report.factor * sum_ref;
  report.rescaled_mass = mass * sqrt_d / hs;
  report.equality_case = scalar_orthogonal(t);
  report.details["mass"] = mass;
  report.notes.push_back(
      "mass rescaling anchored so the identity transform leaves m unchanged");
  return report;
}

BoundReport subordinator_bound(const TransformMatrix& t, double beta,
                               double sum_ref) {
  if (!(beta > 0) || beta > 1) {
    throw domain_error("subordinator exponent must satisfy 0 < beta <= 1");
  }
  const double det = std::abs(t.entries().determinant());
  if (std::abs(det - 1.0) > 1e-9) {
    throw precondition_error("subordinator bound requires |det T| = 1 "
                             "(got |det T| = " + linalg::format_double(det) +
                             ")");
  }
  const TransformMatrix inverse(checked_inverse(t));
  const int d = t.cols();
  const double c = linalg::schatten(inverse, 2) / d;

  BoundReport report;
  report.operator_name = "subordinator";
  report.frame_order = 1;
  report.factor = std::pow(c, beta);
  report.reference = sum_ref;
  report.bound = report.factor * sum_ref;
  report.equality_case = scalar_orthogonal(t);
  report.details["beta"] = beta;
  report.details["c"] = c;
  return report;
}

MultiplierBound general_multiplier_bound(
    const std::function<double(double)>& phi1,
    const std::function<double(double)>& phi2, const TransformMatrix& t,
    const std::function<double(const std::function<double(double)>&)>* hook) {
  checked_inverse(t);
  MultiplierBound result;
  // copy enough state to keep the multiplier callable on its own
  const TransformMatrix matrix = t;
  result.multiplier = [phi1, phi2, matrix](double arg) {
    return frames::multiplier_transform(phi1, phi2, matrix, arg);
  };
  if (hook != nullptr && *hook) {
    result.bound = (*hook)(result.multiplier);
  }
  return result;
}

JohnBound john_domain_bound(double a, double alpha, double lambda_disk,
                            bool symmetric, std::optional<double> inradius) {
  if (a < 1.0) {
    throw domain_error("John-ellipse long semiaxis must satisfy a >= 1");
  }
  if (!(alpha > 0) || alpha > 2) {
    throw domain_error("fractional order must satisfy 0 < alpha <= 2");
  }
  JohnBound result;
  result.containment = symmetric ? std::numbers::sqrt2 : 2.0;
  result.upper = std::pow((1.0 + 1.0 / (a * a)) / 2.0, alpha / 2.0) * lambda_disk;
  result.lower = result.upper * std::pow(result.containment, -alpha / 2.0);
  if (inradius) {
    if (!(*inradius > 0)) {
      throw domain_error("inradius must be positive");
    }
    result.inradius_bound = lambda_disk / std::pow(*inradius, alpha);
  }
  return result;
}

TransformMatrix ellipse_transform(double ratio) {
  if (!(ratio > 0)) {
    throw domain_error("ellipse semiaxis ratio must be positive");
  }
  return TransformMatrix::diagonal({std::sqrt(ratio), 1.0 / std::sqrt(ratio)});
}

std::string EllipseTable::to_text() const {
  std::ostringstream out;
  out << name << " (reference " << linalg::format_double(reference)
      << ", ab = 1)\n";
  constexpr int kLabelWidth = 16;
  const auto print_row = [&out](const std::string& label,
                                const std::vector<double>& values,
                                const char* cell_format) {
    char cell[48];
    std::snprintf(cell, sizeof(cell), "%-*s", kLabelWidth, label.c_str());
    out << cell;
    for (const double v : values) {
      std::snprintf(cell, sizeof(cell), cell_format, v);
      out << cell;
    }
    out << "\n";
  };
  print_row("a/b", ratios, "%10.4g");
  print_row("1-frames", one_frame, "%10.4f");
  print_row("2-frames", two_frame, "%10.4f");
  for (const auto& [label, values] : literature) {
    print_row(label, values, "%10.4f");
  }
  if (!literature.empty()) {
    out << "(literature rows are quoted values for comparison, not computed)\n";
  }
  return out.str();
}

nlohmann::json EllipseTable::to_json() const {
  nlohmann::json j;
  j["table"] = name;
  j["reference"] = reference;
  j["ratios"] = ratios;
  j["one_frame"] = one_frame;
  j["two_frame"] = two_frame;
  if (!literature.empty()) {
    nlohmann::json lit;
    for (const auto& [label, values] : literature) {
      lit[label] = values;
    }
    j["literature"] = std::move(lit);
    j["literature_note"] = "quoted values for comparison, not computed";
  }
  return j;
}

EllipseTable plate_table(const ReferenceEigenvalues& refs) {
  EllipseTable table;
  table.name = "clamped plate, tension-less, on ellipses";
  table.reference = refs.clamped_plate_disk;
  table.ratios = {1.1, 1.2, 2.0, 4.0};
  for (const double r : table.ratios) {
    const TransformMatrix t = ellipse_transform(r);
    table.one_frame.push_back(
        plate_bound(t, refs.clamped_plate_disk, 0.0, 1).bound);
    table.two_frame.push_back(
        plate_bound(t, refs.clamped_plate_disk, 0.0, 2).bound);
  }
  table.literature["McLaurin upper"] = {105.741, 109.440, 187.382, 603.2};
  table.literature["McLaurin lower"] = {105.741, 109.440, 187.380, 587.2};
  return table;
}

EllipseTable buckling_table(const ReferenceEigenvalues& refs) {
  EllipseTable table;
  table.name = "buckling on ellipses";
  table.reference = refs.buckling_disk;
  table.ratios = {1.2, 1.4, 1.6, 2.0, 4.0};
  for (const double r : table.ratios) {
    const TransformMatrix t = ellipse_transform(r);
    const TransformMatrix inverse(t.entries().inverse());
    const double hs2 = linalg::schatten(inverse, 2);
    const double s4 = linalg::schatten(inverse, 4);
    table.one_frame.push_back(s4 / hs2 * refs.buckling_disk);
    table.two_frame.push_back(buckling_bound(t, refs.buckling_disk).bound);
  }
  table.literature["McLaurin lower"] = {15.1, 16.1, 17.5, 20.8, 39.0};
  return table;
}

} // namespace framebound::bounds
