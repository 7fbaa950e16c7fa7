#include "framebound/groups.hpp"

#include "framebound/errors.hpp"
#include "framebound/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numbers>
#include <sstream>

namespace framebound::groups {

namespace {

constexpr double kOrthogonalityTol = 1e-9;
constexpr double kDedupGrid = 1e-9;

bool is_orthogonal(const Eigen::MatrixXd& u, double tol = kOrthogonalityTol) {
  if (u.rows() != u.cols()) {
    return false;
  }
  const Eigen::MatrixXd residual =
      u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff() < tol;
}

std::vector<std::int64_t> grid_key(const Eigen::MatrixXd& u) {
  std::vector<std::int64_t> key;
  key.reserve(static_cast<std::size_t>(u.size()));
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) {
      const auto snapped =
          static_cast<std::int64_t>(std::llround(u(i, j) / kDedupGrid));
      key.push_back(snapped == 0 ? 0 : snapped); // normalize -0
    }
  }
  return key;
}

} // namespace

FiniteGroup::FiniteGroup(int dimension, std::vector<Eigen::MatrixXd> elements,
                         std::string provenance)
    : dimension_(dimension),
      elements_(std::move(elements)),
      provenance_(std::move(provenance)) {
  if (dimension_ < 1) {
    throw domain_error("group dimension must be >= 1");
  }
  if (elements_.empty()) {
    throw domain_error("group must contain at least the identity");
  }
  std::map<std::vector<std::int64_t>, bool> seen;
  bool has_identity = false;
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(dimension_, dimension_);
  for (const auto& u : elements_) {
    if (u.rows() != dimension_ || u.cols() != dimension_) {
      throw domain_error("group elements must be d x d matrices");
    }
    if (!is_orthogonal(u)) {
      throw domain_error("group elements must be orthogonal within 1e-9");
    }
    if (!seen.emplace(grid_key(u), true).second) {
      throw domain_error("duplicate group element under 1e-9 rounding");
    }
    if ((u - identity).cwiseAbs().maxCoeff() < kDedupGrid) {
      has_identity = true;
    }
  }
  if (!has_identity) {
    throw domain_error("group must contain the identity");
  }
}

FiniteGroup closure(const std::vector<Eigen::MatrixXd>& generators,
                    std::size_t cap, const std::string& provenance) {
  if (generators.empty()) {
    throw domain_error("closure needs at least one generator");
  }
  const int d = static_cast<int>(generators.front().rows());
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw domain_error("closure generators must share one dimension");
    }
    if (!is_orthogonal(g)) {
      throw domain_error("closure generators must be orthogonal within 1e-9");
    }
  }

  std::vector<Eigen::MatrixXd> elements;
  std::map<std::vector<std::int64_t>, std::size_t> index;
  std::deque<std::size_t> frontier;

  const auto insert = [&](const Eigen::MatrixXd& u) -> bool {
    auto key = grid_key(u);
    if (index.contains(key)) {
      return false;
    }
    if (elements.size() >= cap) {
      throw resource_error(
          "group closure exceeded the element cap (" + std::to_string(cap) +
          "); the generators likely span an infinite group");
    }
    index.emplace(std::move(key), elements.size());
    elements.push_back(u);
    frontier.push_back(elements.size() - 1);
    return true;
  };

  insert(Eigen::MatrixXd::Identity(d, d));
  while (!frontier.empty()) {
    const std::size_t current = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      const Eigen::MatrixXd product = elements[current] * g;
      insert(product);
    }
  }
  return FiniteGroup(d, std::move(elements), provenance);
}

FiniteGroup dihedral_group(int n) {
  if (n < 3) {
    throw domain_error("dihedral group needs n >= 3");
  }
  std::vector<Eigen::MatrixXd> elements;
  elements.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    const double c = std::cos(2.0 * std::numbers::pi * k / n);
    const double s = std::sin(2.0 * std::numbers::pi * k / n);
    Eigen::MatrixXd rotation(2, 2);
    rotation << c, -s, s, c;
    elements.push_back(rotation);
    // rotation composed with the x-axis mirror
    Eigen::MatrixXd reflection(2, 2);
    reflection << c, s, s, -c;
    elements.push_back(reflection);
  }
  return FiniteGroup(2, std::move(elements), "dihedral(" + std::to_string(n) + ")");
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    perm[i] = i;
  }
  std::vector<std::vector<int>> result;
  do {
    result.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

} // namespace

FiniteGroup hyperoctahedral_group(int d) {
  if (d < 2) {
    throw domain_error("hyperoctahedral group needs d >= 2");
  }
  std::vector<Eigen::MatrixXd> elements;
  const auto perms = all_permutations(d);
  const std::size_t sign_patterns = std::size_t(1) << d;
  elements.reserve(perms.size() * sign_patterns);
  for (const auto& perm : perms) {
    for (std::size_t signs = 0; signs < sign_patterns; ++signs) {
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        u(perm[j], j) = (signs >> j) & 1 ? -1.0 : 1.0;
      }
      elements.push_back(u);
    }
  }
  return FiniteGroup(d, std::move(elements),
                     "hyperoctahedral(" + std::to_string(d) + ")");
}

FiniteGroup simplex_group(int d) {
  if (d < 2) {
    throw domain_error("simplex group needs d >= 2");
  }
  const int n = d + 1;
  // Orthonormal basis of the sum-zero subspace of R^{d+1}.
  Eigen::MatrixXd basis(n, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd column = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= j; ++i) {
      column[i] = 1.0;
    }
    column[j + 1] = -(j + 1.0);
    basis.col(j) = column / column.norm();
  }
  std::vector<Eigen::MatrixXd> elements;
  for (const auto& perm : all_permutations(n)) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      p(perm[j], j) = 1.0;
    }
    elements.push_back(basis.transpose() * p * basis);
  }
  return FiniteGroup(d, std::move(elements),
                     "simplex(" + std::to_string(d) + ")");
}

FiniteGroup icosahedral_group(bool full) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double inv = 1.0 / phi;
  // 3-fold rotation permuting the coordinate axes.
  Eigen::MatrixXd cycle(3, 3);
  cycle << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  // 5-fold golden-ratio rotation of the icosahedron.
  Eigen::MatrixXd five(3, 3);
  five << inv, -phi, 1, phi, 1, inv, -1, inv, phi;
  five *= 0.5;
  std::vector<Eigen::MatrixXd> generators{cycle, five};
  if (full) {
    generators.push_back(-Eigen::MatrixXd::Identity(3, 3));
  }
  return closure(generators, kDefaultClosureCap,
                 full ? "icosahedral-full" : "icosahedral-rotation");
}

FiniteGroup rotation_subgroup(const FiniteGroup& g) {
  std::vector<Eigen::MatrixXd> rotations;
  for (const auto& u : g.elements()) {
    if (u.determinant() > 0.0) {
      rotations.push_back(u);
    }
  }
  return FiniteGroup(g.dimension(), std::move(rotations),
                     g.provenance() + ":rot");
}

FiniteGroup group_from_json(const nlohmann::json& j, std::size_t cap) {
  if (!j.is_array() || j.empty()) {
    throw parse_error("custom group JSON must be a nonempty list of matrices");
  }
  std::vector<Eigen::MatrixXd> matrices;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.empty()) {
      throw parse_error("custom group matrices must be arrays of rows");
    }
    const int rows = static_cast<int>(entry.size());
    Eigen::MatrixXd m(rows, rows);
    for (int r = 0; r < rows; ++r) {
      const auto& row = entry[r];
      if (!row.is_array() || static_cast<int>(row.size()) != rows) {
        throw parse_error("custom group matrices must be square");
      }
      for (int c = 0; c < rows; ++c) {
        if (!row[c].is_number()) {
          throw parse_error("custom group entries must be numbers");
        }
        m(r, c) = row[c].get<double>();
      }
    }
    matrices.push_back(std::move(m));
  }
  return closure(matrices, cap, "custom");
}

FiniteGroup parse_group_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string param =
      colon == std::string::npos ? "" : spec.substr(colon + 1);
  const auto parse_int = [&](int min_value) {
    try {
      const int value = std::stoi(param);
      if (value < min_value) {
        throw domain_error("group parameter out of range in '" + spec + "'");
      }
      return value;
    } catch (const domain_error&) {
      throw;
    } catch (...) {
      throw domain_error("group address '" + spec +
                         "' needs an integer parameter");
    }
  };
  if (name == "dihedral") {
    return dihedral_group(parse_int(3));
  }
  if (name == "hyperoctahedral") {
    return hyperoctahedral_group(parse_int(2));
  }
  if (name == "simplex") {
    return simplex_group(parse_int(2));
  }
  if (name == "simplex-rotation") {
    return rotation_subgroup(simplex_group(parse_int(2)));
  }
  if (name == "icosahedral") {
    if (param == "full" || param.empty()) {
      return icosahedral_group(true);
    }
    if (param == "rot" || param == "rotation") {
      return icosahedral_group(false);
    }
    throw domain_error("icosahedral group variant must be 'full' or 'rot'");
  }
  throw domain_error("unknown group address '" + spec +
                     "' (expected dihedral:N, hyperoctahedral:D, simplex:D, "
                     "simplex-rotation:D, icosahedral:full, icosahedral:rot)");
}

MolienSeries::MolienSeries(std::vector<long long> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty() || coefficients_[0] != 1) {
    throw numerical_error("Molien series must start with c_0 = 1");
  }
  for (const long long c : coefficients_) {
    if (c < 0) {
      throw numerical_error("Molien coefficients must be nonnegative");
    }
  }
}

long long MolienSeries::at(int degree) const {
  if (degree < 0 || degree > max_degree()) {
    throw domain_error("Molien series degree out of range");
  }
  return coefficients_[static_cast<std::size_t>(degree)];
}

std::string MolienSeries::to_polynomial_string() const {
  std::ostringstream out;
  bool first = true;
  for (int k = max_degree(); k >= 0; --k) {
    const long long c = coefficients_[static_cast<std::size_t>(k)];
    if (c == 0) {
      continue;
    }
    if (!first) {
      out << " + ";
    }
    first = false;
    if (k == 0) {
      out << c;
    } else {
      if (c != 1) {
        out << c << "*";
      }
      out << "t";
      if (k > 1) {
        out << "^" << k;
      }
    }
  }
  if (first) {
    out << "0";
  }
  return out.str();
}

namespace {

/// Coefficients of det(I - tU) as a polynomial in t, via power traces and
/// Newton's identities (e_k of the eigenvalues of U).
std::vector<double> det_one_minus_t(const Eigen::MatrixXd& u) {
  const int d = static_cast<int>(u.rows());
  std::vector<double> power_trace(static_cast<std::size_t>(d) + 1, 0.0);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(d, d);
  for (int k = 1; k <= d; ++k) {
    power = (power * u).eval();
    power_trace[static_cast<std::size_t>(k)] = power.trace();
  }
  std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
  e[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      sum += (i % 2 == 1 ? 1.0 : -1.0) *
             e[static_cast<std::size_t>(k - i)] *
             power_trace[static_cast<std::size_t>(i)];
    }
    e[static_cast<std::size_t>(k)] = sum / k;
  }
  std::vector<double> poly(static_cast<std::size_t>(d) + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    poly[static_cast<std::size_t>(k)] =
        (k % 2 == 0 ? 1.0 : -1.0) * e[static_cast<std::size_t>(k)];
  }
  return poly;
}

/// Power-series inverse of a polynomial with constant term 1.
std::vector<double> series_inverse(const std::vector<double>& poly,
                                   int max_degree) {
  std::vector<double> inv(static_cast<std::size_t>(max_degree) + 1, 0.0);
  inv[0] = 1.0;
  for (int n = 1; n <= max_degree; ++n) {
    double sum = 0.0;
    const int top = std::min<int>(n, static_cast<int>(poly.size()) - 1);
    for (int k = 1; k <= top; ++k) {
      sum += poly[static_cast<std::size_t>(k)] *
             inv[static_cast<std::size_t>(n - k)];
    }
    inv[static_cast<std::size_t>(n)] = -sum;
  }
  return inv;
}

} // namespace

MolienSeries molien_series(const FiniteGroup& g, int max_degree) {
  if (max_degree < 0 || max_degree > 64) {
    throw domain_error("Molien series degree must satisfy 0 <= K <= 64");
  }
  const std::size_t n_coeffs = static_cast<std::size_t>(max_degree) + 1;
  // One series per element; reduce coefficient-wise with a fixed tree.
  std::vector<std::vector<double>> per_element;
  per_element.reserve(g.order());
  for (const auto& u : g.elements()) {
    per_element.push_back(series_inverse(det_one_minus_t(u), max_degree));
  }
  std::vector<long long> coefficients(n_coeffs, 0);
  double max_residual = 0.0;
  std::vector<double> column(g.order());
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    for (std::size_t i = 0; i < g.order(); ++i) {
      column[i] = per_element[i][k];
    }
    const double average = pairwise_sum(column) / static_cast<double>(g.order());
    const double rounded = std::round(average);
    max_residual = std::max(max_residual, std::abs(average - rounded));
    coefficients[k] = static_cast<long long>(rounded);
  }
  if (max_residual >= 1e-6) {
    throw numerical_error(
        "Molien coefficients are not integers (residual " +
        std::to_string(max_residual) +
        "); the element set is probably not a group");
  }
  return MolienSeries(std::move(coefficients));
}

int max_frame_order(const FiniteGroup& g, int p_max) {
  if (p_max < 1 || p_max > 16) {
    throw domain_error("max_frame_order needs 1 <= p_max <= 16");
  }
  const MolienSeries series = molien_series(g, 2 * p_max);
  int order = 0;
  for (int q = 1; q <= p_max; ++q) {
    if (series.at(2 * q) != 1) {
      break;
    }
    order = q;
  }
  return order;
}

} // namespace framebound::groups
