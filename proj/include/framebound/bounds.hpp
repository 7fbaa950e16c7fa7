#pragma once

#include "framebound/linalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace framebound::bounds {

using linalg::TransformMatrix;

/// Reference eigenvalues on the symmetric domain; every bound consumes one
/// of these as an input, nothing is solved here.
struct ReferenceEigenvalues {
  /// Lowest clamped-plate eigenvalue of the unit disk.
  double clamped_plate_disk = 104.36;
  /// Lowest buckling eigenvalue of the unit disk (j_{1,1}^2).
  double buckling_disk = 14.682;

  static ReferenceEigenvalues from_file(const std::string& path);
};

struct BoundReport {
  std::string operator_name;
  int frame_order = 1;          // frame order behind the factor (1 or 2)
  double factor = 1.0;          // multiplicative constant applied to the ref
  double reference = 0.0;
  double bound = 0.0;
  std::optional<double> rescaled_tau;
  std::optional<double> rescaled_mass;
  bool equality_case = false;   // T is a scalar multiple of an orthogonal
  std::map<std::string, double> details;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Clamped plate with tension. order 1 uses C(T^{-1}) = ||T^{-1}||_4^4,
/// order 2 uses D(T^{-1}) = (||T^{-1}||_2^4 + 2||T^{-1}||_4^4)/(d+2);
/// bound = factor * lambda_ref with factor = C/d or D/d, and the tension
/// rescales to tau' = tau * C/||T^{-1}||_2^2 (resp. D).
BoundReport plate_bound(const TransformMatrix& t, double lambda_ref,
                        double tau, int order);

/// Buckling: factor = (||T^{-1}||_2^4 + 2||T^{-1}||_4^4) /
/// ((d+2) ||T^{-1}||_2^2), equal to 1 at orthogonal T.
BoundReport buckling_bound(const TransformMatrix& t, double lambda_ref);

/// Fractional Laplacian (-Delta)^{alpha/2}, 0 < alpha <= 2:
/// factor = (||T^{-1}||_2^2 / d)^{alpha/2}.
BoundReport fractional_bound(const TransformMatrix& t, double alpha,
                             double sum_ref);

/// Ellipse-specific sharpening for 0 < alpha <= 1: the exact factor is the
/// sphere average of |T^{-T} theta|^alpha and the Jensen relaxation is
/// (perimeter/2pi)^alpha; exact <= relaxed always.
BoundReport fractional_ellipse_perimeter_bound(double a, double b,
                                               double alpha, double sum_ref);

/// Klein-Gordon operator sqrt(m^2 - Delta) - m: factor = ||T^{-1}||_2 /
/// sqrt(d), mass rescales to m' = m sqrt(d)/||T^{-1}||_2 (the identity
/// transform is the fixed point).
BoundReport klein_gordon_bound(const TransformMatrix& t, double mass,
                               double sum_ref);

/// Generic Bernstein-subordinated operator Psi(-Delta) with scaling
/// exponent 0 < beta <= 1 and |det T| = 1: factor = (||T^{-1}||_2^2/d)^beta.
BoundReport subordinator_bound(const TransformMatrix& t, double beta,
                               double sum_ref);

struct MultiplierBound {
  std::function<double(double)> multiplier; // t -> F[Phi1,Phi2,T](t)
  std::optional<double> bound;              // when reference sums are supplied
};

/// Emits the transformed multiplier t -> F[Phi1,Phi2,T](t); when the caller
/// supplies reference eigenvalue sums of that multiplier on the symmetric
/// domain (the hook), the eigenvalue sum on T(Omega) is bounded by it.
MultiplierBound general_multiplier_bound(
    const std::function<double(double)>& phi1,
    const std::function<double(double)>& phi2, const TransformMatrix& t,
    const std::function<double(const std::function<double(double)>&)>* hook =
        nullptr);

struct JohnBound {
  double upper = 0;
  double lower = 0;
  std::optional<double> inradius_bound;
  double containment = 2.0; // d for general domains, sqrt(d) if symmetric
};

/// Planar John-ellipse comparison: the John ellipse has semiaxes 1 and
/// a >= 1; upper = ((1 + 1/a^2)/2)^{alpha/2} * lambda_disk and lower =
/// upper * c^{-alpha/2} with c = 2 (general) or sqrt(2) (centrally
/// symmetric). An inradius r adds the lambda_disk / r^alpha comparison.
JohnBound john_domain_bound(double a, double alpha, double lambda_disk,
                            bool symmetric,
                            std::optional<double> inradius = std::nullopt);

/// diag(sqrt(r), 1/sqrt(r)): maps the unit disk to the ellipse with
/// semiaxis ratio r and unit area (ab = 1).
TransformMatrix ellipse_transform(double ratio);

struct EllipseTable {
  std::string name;
  std::vector<double> ratios;
  std::vector<double> one_frame;
  std::vector<double> two_frame;
  // literature rows quoted for comparison, never computed here
  std::map<std::string, std::vector<double>> literature;
  double reference = 0;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

EllipseTable plate_table(const ReferenceEigenvalues& refs = {});
EllipseTable buckling_table(const ReferenceEigenvalues& refs = {});

} // namespace framebound::bounds
