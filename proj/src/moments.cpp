#include "framebound/moments.hpp"

#include "framebound/errors.hpp"
#include "framebound/frames.hpp"
#include "framebound/groups.hpp"
#include "framebound/numeric.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

namespace framebound::moments {

namespace {

constexpr int kMaxMomentOrder = 8;

void check_moment_order(int p) {
  if (p < 0 || p > kMaxMomentOrder) {
    throw domain_error("moment order must satisfy 0 <= p <= 8");
  }
}

double polygon_signed_area(const Polygon& poly) {
  double twice = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * twice;
}

bool segments_cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                    const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                         const Eigen::Vector2d& r) {
    return (q.x() - p.x()) * (r.y() - p.y()) -
           (q.y() - p.y()) * (r.x() - p.x());
  };
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 &&
         o2 != 0 && o3 != 0 && o4 != 0;
}

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) {
    throw domain_error("polygon needs at least three vertices");
  }
  for (const auto& vertex : v) {
    if (!vertex.allFinite()) {
      throw domain_error("polygon vertices must be finite");
    }
  }
  const double area = polygon_signed_area(poly);
  double scale = 0.0;
  for (const auto& vertex : v) {
    scale = std::max(scale, vertex.cwiseAbs().maxCoeff());
  }
  if (std::abs(area) <= 1e-14 * std::max(1.0, scale * scale)) {
    throw domain_error("degenerate polygon (zero area)");
  }
  if (area < 0.0) {
    throw domain_error("polygon vertices must be counterclockwise");
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) {
        continue;
      }
      if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        throw domain_error("polygon must be simple (edges cross)");
      }
    }
  }
}

/// Gauss-Legendre nodes/weights on [0,1], exact for degree <= 2n-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre_unit(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-15) {
        break;
      }
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return rule;
}

/// Int over the signed triangle (0, a, b) of |x|^{2p}: the radial part is
/// analytic, leaving a polynomial of degree 2p in the edge parameter.
double triangle_moment(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       int p, const GaussRule& rule) {
  const double cross = a.x() * b.y() - a.y() * b.x();
  if (p == 0) {
    return 0.5 * cross;
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const Eigen::Vector2d point = (1.0 - t) * a + t * b;
    integral += rule.weights[i] * std::pow(point.squaredNorm(), p);
  }
  return 0.5 * cross * integral / (p + 1.0);
}

double polygon_moment(const Polygon& poly, int p) {
  validate_polygon(poly);
  const GaussRule rule = gauss_legendre_unit(p + 1);
  const auto& v = poly.vertices;
  std::vector<double> contributions;
  contributions.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    contributions.push_back(
        triangle_moment(v[i], v[(i + 1) % v.size()], p, rule));
  }
  return pairwise_sum(contributions);
}

double unit_ball_moment(int d, int p) {
  // surface(S^{d-1}) / (2p + d)
  const double surface =
      2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
  return surface / (2.0 * p + d);
}

double ellipse_moment(double a, double b, int p) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw domain_error("ellipse semiaxes must be positive");
  }
  if (p == 0) {
    return std::numbers::pi * a * b;
  }
  // transformed-moment law applied to the unit disk
  const double fp = frames::fp_value({a * a, b * b}, p);
  return a * b * fp * unit_ball_moment(2, p);
}

double ball_moment(const Ball& ball, int p) {
  if (!(ball.radius > 0.0) || ball.dim < 1) {
    throw domain_error("ball needs positive radius and dimension >= 1");
  }
  return std::pow(ball.radius, 2 * p + ball.dim) *
         unit_ball_moment(ball.dim, p);
}

/// Largest admissible frame order of the shape's symmetry group, or -1
/// when the shape admits frames of every order (balls and disks).
int shape_frame_capacity(const Shape& shape) {
  if (std::holds_alternative<Ball>(shape)) {
    return -1;
  }
  if (const auto* ellipse = std::get_if<Ellipse>(&shape)) {
    if (ellipse->a == ellipse->b) {
      return -1;
    }
    return 0;
  }
  const auto& poly = std::get<Polygon>(shape);
  if (poly.regular_n >= 3) {
    return groups::max_frame_order(groups::dihedral_group(poly.regular_n));
  }
  return 0;
}

void check_admissible(const Shape& shape, int p) {
  const int capacity = shape_frame_capacity(shape);
  if (capacity < 0 || p <= capacity) {
    return;
  }
  throw domain_error("shape admits p-frames only up to p = " +
                     std::to_string(capacity) + ", requested p = " +
                     std::to_string(p));
}

Eigen::MatrixXd checked_inverse(const TransformMatrix& t, int expected_dim) {
  if (t.rows() != t.cols() || t.cols() != expected_dim) {
    throw domain_error("transformation must be a square matrix matching the "
                       "shape dimension");
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(t.entries());
  if (!lu.isInvertible()) {
    throw domain_error("transformation must be invertible");
  }
  return lu.inverse();
}

} // namespace

Polygon regular_polygon(int n, double circumradius) {
  if (n < 3) {
    throw domain_error("regular polygon needs n >= 3");
  }
  if (!(circumradius > 0.0)) {
    throw domain_error("regular polygon needs a positive circumradius");
  }
  Polygon poly;
  poly.regular_n = n;
  poly.vertices.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    poly.vertices.emplace_back(circumradius * std::cos(angle),
                               circumradius * std::sin(angle));
  }
  return poly;
}

int shape_dimension(const Shape& shape) {
  if (const auto* ball = std::get_if<Ball>(&shape)) {
    return ball->dim;
  }
  return 2;
}

Shape shape_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw parse_error("shape JSON must be an object with a single kind key");
  }
  if (j.contains("ellipse")) {
    const auto& e = j["ellipse"];
    if (!e.is_array() || e.size() != 2) {
      throw parse_error("\"ellipse\" expects [a, b]");
    }
    Ellipse ellipse{e[0].get<double>(), e[1].get<double>()};
    if (!(ellipse.a > 0.0) || !(ellipse.b > 0.0)) {
      throw parse_error("ellipse semiaxes must be positive");
    }
    return ellipse;
  }
  if (j.contains("ball")) {
    const auto& b = j["ball"];
    Ball ball;
    if (b.is_array() && b.size() == 2) {
      ball.radius = b[0].get<double>();
      ball.dim = b[1].get<int>();
    } else if (b.is_object()) {
      ball.radius = b.value("radius", 1.0);
      ball.dim = b.contains("dim") ? b["dim"].get<int>()
                                   : b.value("dimension", 2);
    } else {
      throw parse_error("\"ball\" expects {\"radius\":r,\"dim\":d}");
    }
    if (!(ball.radius > 0.0) || ball.dim < 1) {
      throw parse_error("ball needs positive radius and dimension >= 1");
    }
    return ball;
  }
  if (j.contains("polygon")) {
    const auto& vertices = j["polygon"];
    if (!vertices.is_array() || vertices.size() < 3) {
      throw parse_error("\"polygon\" expects at least three [x, y] pairs");
    }
    Polygon poly;
    for (const auto& vertex : vertices) {
      if (!vertex.is_array() || vertex.size() != 2) {
        throw parse_error("polygon vertices must be [x, y] pairs");
      }
      poly.vertices.emplace_back(vertex[0].get<double>(),
                                 vertex[1].get<double>());
    }
    validate_polygon(poly);
    return poly;
  }
  if (j.contains("regular")) {
    const auto& r = j["regular"];
    if (!r.is_object() || !r.contains("n")) {
      throw parse_error("\"regular\" expects {\"n\":5,\"circumradius\":1}");
    }
    return regular_polygon(r["n"].get<int>(), r.value("circumradius", 1.0));
  }
  throw parse_error("unknown shape kind (expected ellipse, ball, polygon or "
                    "regular)");
}

Shape shape_from_file(const std::string& path) {
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
  return shape_from_json(j);
}

nlohmann::json shape_to_json(const Shape& shape) {
  nlohmann::json j;
  if (const auto* ellipse = std::get_if<Ellipse>(&shape)) {
    j["ellipse"] = {ellipse->a, ellipse->b};
  } else if (const auto* ball = std::get_if<Ball>(&shape)) {
    j["ball"] = {{"radius", ball->radius}, {"dim", ball->dim}};
  } else {
    const auto& poly = std::get<Polygon>(shape);
    if (poly.regular_n >= 3) {
      j["regular"] = {{"n", poly.regular_n},
                      {"circumradius", poly.vertices.front().norm()}};
    } else {
      nlohmann::json vertices = nlohmann::json::array();
      for (const auto& v : poly.vertices) {
        vertices.push_back({v.x(), v.y()});
      }
      j["polygon"] = std::move(vertices);
    }
  }
  return j;
}

double moment(const Shape& shape, int p) {
  check_moment_order(p);
  if (const auto* ellipse = std::get_if<Ellipse>(&shape)) {
    return ellipse_moment(ellipse->a, ellipse->b, p);
  }
  if (const auto* ball = std::get_if<Ball>(&shape)) {
    return ball_moment(*ball, p);
  }
  return polygon_moment(std::get<Polygon>(shape), p);
}

double volume(const Shape& shape) { return moment(shape, 0); }

MomentReport moment_report(const Shape& shape, int p) {
  MomentReport report;
  report.p = p;
  report.volume = volume(shape);
  report.moment = moment(shape, p);
  const double d = shape_dimension(shape);
  report.ratio = std::pow(report.volume, 1.0 + 2.0 * p / d) / report.moment;
  return report;
}

double transformed_moment(const Shape& shape, const TransformMatrix& t,
                          int p) {
  check_moment_order(p);
  if (p >= 1) {
    check_admissible(shape, p);
  }
  checked_inverse(t, shape_dimension(shape));
  const double det = std::abs(t.entries().determinant());
  const double fp =
      p == 0 ? 1.0 : frames::fp_from_matrix(t, p).value;
  return det * fp * moment(shape, p);
}

Shape apply_transform(const TransformMatrix& t, const Shape& shape) {
  if (shape_dimension(shape) != 2) {
    throw domain_error("apply_transform supports two-dimensional shapes");
  }
  if (t.rows() != 2 || t.cols() != 2) {
    throw domain_error("apply_transform needs a 2x2 matrix");
  }
  const Eigen::MatrixXd& m = t.entries();
  if (const auto* poly = std::get_if<Polygon>(&shape)) {
    Polygon image;
    image.vertices.reserve(poly->vertices.size());
    for (const auto& v : poly->vertices) {
      image.vertices.emplace_back(m * v);
    }
    if (m.determinant() < 0.0) {
      std::reverse(image.vertices.begin(), image.vertices.end());
    }
    return image;
  }
  double a = 1.0;
  double b = 1.0;
  if (const auto* ellipse = std::get_if<Ellipse>(&shape)) {
    a = ellipse->a;
    b = ellipse->b;
  } else {
    const auto& ball = std::get<Ball>(shape);
    a = ball.radius;
    b = ball.radius;
  }
  Eigen::MatrixXd scaled = m;
  scaled.col(0) *= a;
  scaled.col(1) *= b;
  const auto s2 = linalg::squared_singular_values(TransformMatrix(scaled));
  return Ellipse{std::sqrt(s2[0]), std::sqrt(s2[1])};
}

std::pair<double, double> two_dim_reciprocity(const Shape& shape,
                                              const TransformMatrix& t,
                                              int p) {
  check_moment_order(p);
  if (p < 1) {
    throw domain_error("two_dim_reciprocity needs p >= 1");
  }
  if (shape_dimension(shape) != 2) {
    throw domain_error("two_dim_reciprocity is a two-dimensional identity");
  }
  check_admissible(shape, p);
  const Eigen::MatrixXd inverse = checked_inverse(t, 2);

  const auto ratio_of = [p](const Shape& s) {
    const double area = volume(s);
    return std::pow(area, 1.0 + p) / moment(s, p);
  };
  const double forward = ratio_of(apply_transform(t, shape));
  const double backward =
      ratio_of(apply_transform(TransformMatrix(inverse), shape));
  const double scale = std::max(std::abs(forward), std::abs(backward));
  if (std::abs(forward - backward) > 1e-8 * scale) {
    throw numerical_error("two_dim_reciprocity: the transformed ratios differ "
                          "beyond 1e-8 relative");
  }
  return {forward, backward};
}

} // namespace framebound::moments
