#include "framebound/linalg.hpp"

#include "framebound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace framebound::linalg {

namespace {

void require_finite(const Matrix& m) {
  if (!m.allFinite()) {
    throw domain_error("matrix entries must be finite");
  }
}

} // namespace

TransformMatrix::TransformMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.cols() < 1 || entries_.rows() < 1) {
    throw domain_error("matrix must have at least one row and one column");
  }
  require_finite(entries_);
}

TransformMatrix TransformMatrix::identity(int d) {
  return TransformMatrix(Matrix::Identity(d, d));
}

TransformMatrix TransformMatrix::diagonal(const std::vector<double>& diag) {
  Matrix m = Matrix::Zero(static_cast<int>(diag.size()),
                          static_cast<int>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) {
    m(static_cast<int>(i), static_cast<int>(i)) = diag[i];
  }
  return TransformMatrix(std::move(m));
}

TransformMatrix TransformMatrix::from_csv_text(const std::string& text,
                                               const std::string& source_name) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      const char* begin = field.data();
      const char* end = begin + field.size();
      while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
      while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
      double value = 0.0;
      const auto result = std::from_chars(begin, end, value);
      if (result.ec != std::errc() || result.ptr != end || begin == end) {
        throw parse_error(source_name + ":" + std::to_string(line_no) +
                          ": invalid number '" + field + "'");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw parse_error(source_name + ":" + std::to_string(line_no) +
                        ": ragged row (expected " +
                        std::to_string(rows.front().size()) + " fields, got " +
                        std::to_string(row.size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw parse_error(source_name + ":1: no matrix rows");
  }
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
  }
  return TransformMatrix(std::move(m));
}

TransformMatrix TransformMatrix::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error(path + ": cannot open file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_csv_text(buffer.str(), path);
}

TransformMatrix TransformMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw parse_error("matrix JSON must be a nonempty array of arrays");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) {
      throw parse_error("matrix JSON rows must be nonempty arrays");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw parse_error("matrix JSON entries must be numbers");
      }
      r.push_back(v.get<double>());
    }
    if (!rows.empty() && r.size() != rows.front().size()) {
      throw parse_error("matrix JSON rows have inconsistent lengths");
    }
    rows.push_back(std::move(r));
  }
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j2 = 0; j2 < rows[i].size(); ++j2) {
      m(static_cast<int>(i), static_cast<int>(j2)) = rows[i][j2];
    }
  }
  return TransformMatrix(std::move(m));
}

TransformMatrix TransformMatrix::from_file(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
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
    return from_json(j);
  }
  return from_csv_file(path);
}

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string TransformMatrix::to_csv() const {
  std::ostringstream out;
  for (int i = 0; i < rows(); ++i) {
    for (int j = 0; j < cols(); ++j) {
      if (j > 0) {
        out << ",";
      }
      out << format_double(entries_(i, j));
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json TransformMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < this->rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < cols(); ++j) {
      row.push_back(entries_(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix gram(const Matrix& m) {
  Matrix g = m.transpose() * m;
  g = 0.5 * (g + g.transpose()).eval();
  return g;
}

Matrix gram(const TransformMatrix& t) { return gram(t.entries()); }

namespace {

double offdiagonal_mass(const Matrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j) {
        sum += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(sum);
}

} // namespace

std::vector<double> sym_eigenvalues(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw domain_error("sym_eigenvalues requires a square matrix");
  }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * 10 + 1e-12) {
    throw domain_error("sym_eigenvalues requires a symmetric matrix");
  }
  const int n = static_cast<int>(m.rows());
  Matrix a = 0.5 * (m + m.transpose());
  if (n == 1) {
    return {a(0, 0)};
  }

  constexpr int kMaxSweeps = 100;
  bool converged = offdiagonal_mass(a) < tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
    converged = offdiagonal_mass(a) < tol;
  }
  if (!converged) {
    throw numerical_error("Jacobi iteration did not converge in 100 sweeps");
  }
  std::vector<double> eigenvalues(n);
  for (int i = 0; i < n; ++i) {
    eigenvalues[i] = a(i, i);
  }
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return eigenvalues;
}

std::vector<double> squared_singular_values(const TransformMatrix& t) {
  std::vector<double> values = sym_eigenvalues(gram(t));
  for (double& v : values) {
    if (v < 0.0 && v >= -1e-9) {
      v = 0.0;
    }
  }
  return values;
}

double schatten(const TransformMatrix& t, int order, SchattenMethod method) {
  if (order < 2 || order % 2 != 0) {
    throw domain_error("Schatten order must be a positive even integer");
  }
  const int k = order / 2;
  if (method == SchattenMethod::Spectral) {
    double sum = 0.0;
    for (const double s2 : squared_singular_values(t)) {
      sum += std::pow(s2, k);
    }
    return sum;
  }
  const Matrix& m = t.entries();
  Matrix base = m.rows() >= m.cols() ? Matrix(m.transpose() * m)
                                     : Matrix(m * m.transpose());
  Matrix power = base;
  for (int i = 1; i < k; ++i) {
    power = (power * base).eval();
  }
  return power.trace();
}

SchattenProfile::SchattenProfile(std::map<int, double> values)
    : values_(std::move(values)) {
  for (const auto& [order, value] : values_) {
    if (order < 2 || order % 2 != 0) {
      throw domain_error("Schatten profile keys must be positive even orders");
    }
    if (!std::isfinite(value)) {
      throw domain_error("Schatten profile values must be finite");
    }
  }
}

double SchattenProfile::at(int order) const {
  const auto it = values_.find(order);
  if (it == values_.end()) {
    throw domain_error("Schatten profile has no entry for order " +
                       std::to_string(order));
  }
  return it->second;
}

SchattenProfile schatten_profile(const TransformMatrix& t, int max_order,
                                 SchattenMethod method) {
  if (max_order < 2) {
    throw domain_error("Schatten profile needs max_order >= 2");
  }
  std::map<int, double> values;
  if (method == SchattenMethod::TracePower) {
    const Matrix& m = t.entries();
    Matrix base = m.rows() >= m.cols() ? Matrix(m.transpose() * m)
                                       : Matrix(m * m.transpose());
    Matrix power = base;
    values[2] = power.trace();
    for (int order = 4; order <= max_order; order += 2) {
      power = (power * base).eval();
      values[order] = power.trace();
    }
  } else {
    for (int order = 2; order <= max_order; order += 2) {
      values[order] = schatten(t, order, method);
    }
  }
  return SchattenProfile(std::move(values));
}

double trace_matrix_function(const Matrix& psd,
                             const std::function<double(double)>& phi) {
  std::vector<double> eigenvalues = sym_eigenvalues(psd);
  double sum = 0.0;
  for (double e : eigenvalues) {
    if (e < 0.0 && e >= -1e-9) {
      e = 0.0;
    }
    const double value = phi(e);
    if (!std::isfinite(value)) {
      throw domain_error("matrix function is undefined at eigenvalue " +
                         format_double(e));
    }
    sum += value;
  }
  return sum;
}

} // namespace framebound::linalg
