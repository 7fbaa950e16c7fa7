#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include <json.hpp>

namespace framebound::groups {

/// Finite set of orthogonal d x d matrices closed under product, holding
/// the identity, with no duplicates under a 1e-9 rounding grid.
class FiniteGroup {
public:
  FiniteGroup(int dimension, std::vector<Eigen::MatrixXd> elements,
              std::string provenance);

  int dimension() const { return dimension_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Eigen::MatrixXd>& elements() const { return elements_; }
  const std::string& provenance() const { return provenance_; }

private:
  int dimension_;
  std::vector<Eigen::MatrixXd> elements_;
  std::string provenance_;
};

inline constexpr std::size_t kDefaultClosureCap = 100000;

/// BFS closure of the generators under multiplication, deduplicated on a
/// 1e-9 grid. Throws resource_error past `cap` elements (likely an
/// infinite group) and domain_error for non-orthogonal generators.
FiniteGroup closure(const std::vector<Eigen::MatrixXd>& generators,
                    std::size_t cap = kDefaultClosureCap,
                    const std::string& provenance = "custom");

/// Built-in catalog.
FiniteGroup dihedral_group(int n);              // |I2(n)| = 2n, needs n >= 3
FiniteGroup hyperoctahedral_group(int d);       // signed permutations, 2^d d!
FiniteGroup simplex_group(int d);               // S_{d+1} on the sum-zero subspace
FiniteGroup icosahedral_group(bool full);       // order 120 (full) or 60 (rotations)

/// Elements of determinant +1.
FiniteGroup rotation_subgroup(const FiniteGroup& g);

/// Custom group from a JSON list of matrices (closure is taken, so a
/// generator list works too).
FiniteGroup group_from_json(const nlohmann::json& j,
                            std::size_t cap = kDefaultClosureCap);

/// Parses CLI-style group addresses: "dihedral:5", "hyperoctahedral:3",
/// "simplex:3", "simplex-rotation:3", "icosahedral:full", "icosahedral:rot".
FiniteGroup parse_group_spec(const std::string& spec);

/// Coefficients c_0..c_K of the Molien series; c_k is the dimension of the
/// space of degree-k invariant polynomials.
class MolienSeries {
public:
  explicit MolienSeries(std::vector<long long> coefficients);

  int max_degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  long long at(int degree) const;
  const std::vector<long long>& coefficients() const { return coefficients_; }

  /// Polynomial text in descending degree, e.g. "2*t^4 + t^3 + t^2 + 1".
  std::string to_polynomial_string() const;

private:
  std::vector<long long> coefficients_;
};

/// Power-series coefficients of (1/|G|) sum_U 1/det(I - tU) through
/// max_degree, computed in floating point and rounded; a post-rounding
/// residual >= 1e-6 raises numerical_error (the input was not a group).
MolienSeries molien_series(const FiniteGroup& g, int max_degree);

/// Largest p <= p_max such that the Molien coefficient c_{2q} equals 1 for
/// every 1 <= q <= p; zero if c_2 > 1 (reducible group).
int max_frame_order(const FiniteGroup& g, int p_max = 16);

} // namespace framebound::groups
