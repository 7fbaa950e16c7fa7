#pragma once

#include <Eigen/Core>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace framebound::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Real r x d transformation matrix (possibly rectangular). Entries must
/// be finite; d >= 1.
class TransformMatrix {
public:
  explicit TransformMatrix(Matrix entries);

  static TransformMatrix identity(int d);
  static TransformMatrix diagonal(const std::vector<double>& diag);

  /// CSV: one row per line, comma-separated values.
  static TransformMatrix from_csv_text(const std::string& text,
                                       const std::string& source_name = "<csv>");
  static TransformMatrix from_csv_file(const std::string& path);

  /// JSON array-of-arrays.
  static TransformMatrix from_json(const nlohmann::json& j);
  static TransformMatrix from_file(const std::string& path);

  std::string to_csv() const; // 17 significant digits, round-trips exactly
  nlohmann::json to_json() const;

  const Matrix& entries() const { return entries_; }
  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }

private:
  Matrix entries_;
};

/// T^T T, symmetrized so the result is symmetric to the last bit.
Matrix gram(const TransformMatrix& t);
Matrix gram(const Matrix& m);

/// Eigenvalues of a symmetric matrix in decreasing order, by cyclic Jacobi
/// sweeps until the off-diagonal Frobenius mass falls below tol (at most
/// 100 sweeps). Non-symmetric input raises domain_error, non-convergence
/// numerical_error.
std::vector<double> sym_eigenvalues(const Matrix& m, double tol = 1e-12);

/// Eigenvalues of gram(T), decreasing; values in [-1e-9, 0] clamp to 0 so
/// rank-deficient transforms report exact zeros.
std::vector<double> squared_singular_values(const TransformMatrix& t);

enum class SchattenMethod { TracePower, Spectral };

/// ||T||_{2k}^{2k}. The trace-power route multiplies whichever of T^T T,
/// T T^T is smaller and never touches eigenvalues. Only even orders are
/// supported.
double schatten(const TransformMatrix& t, int order,
                SchattenMethod method = SchattenMethod::TracePower);

/// Map 2k -> ||T||_{2k}^{2k} for 2k = 2, 4, ..., max_order.
class SchattenProfile {
public:
  SchattenProfile() = default;
  explicit SchattenProfile(std::map<int, double> values);
  double at(int order) const;
  const std::map<int, double>& values() const { return values_; }

private:
  std::map<int, double> values_;
};

SchattenProfile schatten_profile(const TransformMatrix& t, int max_order,
                                 SchattenMethod method = SchattenMethod::TracePower);

/// Sum of phi over the eigenvalues of a symmetric PSD matrix. Eigenvalues
/// in [-1e-9, 0] are clamped to 0 first; a non-finite phi value raises
/// domain_error.
double trace_matrix_function(const Matrix& psd,
                             const std::function<double(double)>& phi);

/// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_double(double x);

} // namespace framebound::linalg
