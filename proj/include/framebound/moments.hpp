#pragma once

#include "framebound/linalg.hpp"

#include <Eigen/Core>

#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace framebound::moments {

using linalg::TransformMatrix;

struct Ellipse {
  double a = 1.0;
  double b = 1.0;
};

struct Ball {
  double radius = 1.0;
  int dim = 2;
};

/// Simple counterclockwise polygon with at least three vertices, centered
/// wherever its vertices put it (moments are always about the origin).
/// regular_n > 0 marks a regular n-gon built by regular_polygon().
struct Polygon {
  std::vector<Eigen::Vector2d> vertices;
  int regular_n = 0;
};

using Shape = std::variant<Ellipse, Ball, Polygon>;

/// Regular n-gon, one vertex on the positive x-axis, centroid at origin.
Polygon regular_polygon(int n, double circumradius = 1.0);

int shape_dimension(const Shape& shape);

/// Shapes ingest as {"ellipse":[a,b]}, {"polygon":[[x,y],...]},
/// {"regular":{"n":5,"circumradius":1}}, {"ball":{"radius":1,"dim":3}}.
Shape shape_from_json(const nlohmann::json& j);
Shape shape_from_file(const std::string& path);
nlohmann::json shape_to_json(const Shape& shape);

/// 2p-moment of mass I_2p = Int |x|^{2p} dx about the origin; p = 0 gives
/// the volume. Ellipses and balls use the closed form through the
/// transformed-moment law; polygons use signed fan triangulation with a
/// quadrature rule exact at degree 2p. 0 <= p <= 8.
double moment(const Shape& shape, int p);

double volume(const Shape& shape);

struct MomentReport {
  int p = 0;
  double volume = 0;
  double moment = 0;
  double ratio = 0; // V^{1+2p/d} / I_2p, invariant under uniform scaling
};

MomentReport moment_report(const Shape& shape, int p);

/// |det T| F_p(s^2(T)) I_2p(shape). The shape must admit p-frames: a ball
/// or disk (any p) or a regular n-gon with p within the dihedral frame
/// order; anything else raises domain_error naming the deficit.
double transformed_moment(const Shape& shape, const TransformMatrix& t, int p);

/// Image shape under T (2-D shapes only); polygons are re-oriented to stay
/// counterclockwise when det T < 0.
Shape apply_transform(const TransformMatrix& t, const Shape& shape);

/// ( A^{1+p}/I_2p at T(shape), same at T^{-1}(shape) ), both by direct
/// moments of the image shapes. The two agree for shapes admitting
/// p-frames; disagreement beyond 1e-8 relative raises numerical_error.
std::pair<double, double> two_dim_reciprocity(const Shape& shape,
                                              const TransformMatrix& t, int p);

} // namespace framebound::moments
