#include "framebound/frames.hpp"

#include "framebound/errors.hpp"
#include "framebound/numeric.hpp"
#include "framebound/parallel.hpp"
#include "framebound/rng.hpp"
#include "framebound/symfunc.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace framebound::frames {

std::string method_name(FpMethod method) {
  switch (method) {
    case FpMethod::Monomial: return "monomial";
    case FpMethod::Cycle: return "cycle";
    case FpMethod::MonteCarlo: return "montecarlo";
    case FpMethod::Sphere2d: return "sphere2d";
    case FpMethod::Orbit: return "orbit";
  }
  return "unknown";
}

namespace {

constexpr int kMaxFrameOrder = 16;

void check_fp_order(int p) {
  if (p < 1 || p > kMaxFrameOrder) {
    throw domain_error("frame order must satisfy 1 <= p <= 16");
  }
}

} // namespace

Rational fp_exact(const std::vector<Rational>& s2, int p) {
  check_fp_order(p);
  if (s2.empty()) {
    throw domain_error("fp_exact needs at least one squared singular value");
  }
  for (const Rational& v : s2) {
    if (v < 0) {
      throw domain_error("squared singular values must be nonnegative");
    }
  }
  const int d = static_cast<int>(s2.size());
  const Rational rising = rising_factorial_half(d, p);
  const Rational p_factorial(factorial(p));

  // Monomial-basis route.
  Rational monomial_sum = 0;
  for (const auto& lambda : symfunc::enumerate_partitions(p)) {
    BigInt coeff = 1;
    for (const int part : lambda.parts()) {
      coeff *= binomial(2 * part, part);
    }
    monomial_sum += Rational(coeff) * symfunc::eval_monomial(lambda, s2);
  }
  const Rational via_monomial =
      p_factorial / (Rational(BigInt(1) << (2 * p)) * rising) * monomial_sum;

  // Cycle-index route on the halved power-sum alphabet.
  const auto halved =
      symfunc::theta_scale(symfunc::cycle_index_terms(p), Rational(1, 2));
  const Rational via_cycle =
      p_factorial / rising * symfunc::eval_powersum(halved, s2);

  if (via_monomial != via_cycle) {
    throw consistency_error("fp_exact: monomial and cycle-index routes disagree");
  }
  return via_cycle;
}

double fp_value(const std::vector<double>& s2, int p) {
  std::vector<Rational> exact;
  exact.reserve(s2.size());
  for (const double v : s2) {
    exact.push_back(rational_from_double(v));
  }
  return to_double(fp_exact(exact, p));
}

double fp_2d_binomial(double s2a, double s2b, int p) {
  check_fp_order(p);
  if (s2a < 0 || s2b < 0) {
    throw domain_error("squared singular values must be nonnegative");
  }
  double sum = 0.0;
  for (int k = 0; k <= p; ++k) {
    const double coeff =
        to_double(Rational(binomial(2 * k, k) * binomial(2 * p - 2 * k, p - k)));
    sum += coeff * std::pow(s2a, k) * std::pow(s2b, p - k);
  }
  return sum / std::pow(4.0, p);
}

FrameConstant fp_from_matrix(const TransformMatrix& t, int p) {
  check_fp_order(p);
  const int d = t.cols();
  const double via_eigen = fp_value(linalg::squared_singular_values(t), p);

  // Schatten route: cycle-index formula fed by trace powers only.
  const linalg::SchattenProfile profile = linalg::schatten_profile(t, 2 * p);
  const auto z = symfunc::cycle_index_terms(p);
  double sum = 0.0;
  for (const auto& [lambda, coeff] : z.terms()) {
    double term = to_double(coeff);
    for (const int part : lambda.parts()) {
      term *= 0.5 * profile.at(2 * part);
    }
    sum += term;
  }
  const double rising = to_double(rising_factorial_half(d, p));
  const double p_factorial = to_double(Rational(factorial(p)));
  const double via_schatten = p_factorial / rising * sum;

  const double scale = std::max({std::abs(via_eigen), std::abs(via_schatten), 1e-300});
  if (std::abs(via_eigen - via_schatten) > 1e-10 * scale) {
    throw numerical_error(
        "fp_from_matrix: eigenvalue and trace-power routes disagree beyond "
        "1e-10 relative");
  }
  return FrameConstant{static_cast<double>(p), d, via_eigen, FpMethod::Cycle};
}

double rising_factorial(double x, double p) {
  if (x <= 0 || p < 0) {
    throw domain_error("rising_factorial needs x > 0 and p >= 0");
  }
  const double rounded = std::round(p);
  if (rounded == p && p <= 64) {
    double product = 1.0;
    for (int i = 0; i < static_cast<int>(rounded); ++i) {
      product *= x + i;
    }
    return product;
  }
  return std::exp(std::lgamma(x + p) - std::lgamma(x));
}

McEstimate fp_montecarlo(const TransformMatrix& t, double p,
                         std::uint64_t samples, std::uint64_t seed) {
  if (!(p > 0)) {
    throw domain_error("Monte-Carlo frame order must be positive");
  }
  if (samples < 10000) {
    throw precondition_error("fp_montecarlo needs at least 10^4 samples");
  }
  const int d = t.cols();
  const Eigen::MatrixXd& m = t.entries();

  constexpr std::uint64_t kBatches = 64;
  const std::uint64_t base = samples / kBatches;
  const std::uint64_t remainder = samples % kBatches;

  std::vector<double> batch_sum(kBatches, 0.0);
  std::vector<double> batch_sum_sq(kBatches, 0.0);
  parallel_for(kBatches, [&](std::size_t b) {
    const std::uint64_t count = base + (b < remainder ? 1 : 0);
    GaussianRng rng(stream_seed(seed, b));
    double sum = 0.0;
    double sum_sq = 0.0;
    Eigen::VectorXd x(d);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (int j = 0; j < d; ++j) {
        x[j] = rng.gaussian();
      }
      const double q = (m * x).squaredNorm();
      const double w = std::pow(q, p);
      sum += w;
      sum_sq += w * w;
    }
    batch_sum[b] = sum;
    batch_sum_sq[b] = sum_sq;
  });

  const double n = static_cast<double>(samples);
  const double total = pairwise_sum(batch_sum);
  const double total_sq = pairwise_sum(batch_sum_sq);
  const double mean = total / n;
  const double variance = std::max(0.0, (total_sq - n * mean * mean) / (n - 1.0));
  const double norm = std::pow(2.0, p) * rising_factorial(d / 2.0, p);

  McEstimate result;
  result.estimate = mean / norm;
  result.standard_error = std::sqrt(variance / n) / norm;
  result.samples = samples;
  result.seed = seed;
  return result;
}

std::vector<McEstimate> fp_montecarlo_batch(const TransformMatrix& t,
                                            int max_p, std::uint64_t samples,
                                            std::uint64_t seed) {
  check_fp_order(max_p);
  if (samples < 10000) {
    throw precondition_error("fp_montecarlo_batch needs at least 10^4 samples");
  }
  const int d = t.cols();
  const Eigen::MatrixXd& m = t.entries();
  const std::size_t orders = static_cast<std::size_t>(max_p);

  constexpr std::uint64_t kBatches = 64;
  const std::uint64_t base = samples / kBatches;
  const std::uint64_t remainder = samples % kBatches;

  // one slot pair (sum, sum of squares) per order per batch
  std::vector<std::vector<double>> batch_sum(orders,
                                             std::vector<double>(kBatches));
  std::vector<std::vector<double>> batch_sum_sq(orders,
                                                std::vector<double>(kBatches));
  parallel_for(kBatches, [&](std::size_t b) {
    const std::uint64_t count = base + (b < remainder ? 1 : 0);
    GaussianRng rng(stream_seed(seed, b));
    std::vector<double> sum(orders, 0.0);
    std::vector<double> sum_sq(orders, 0.0);
    Eigen::VectorXd x(d);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (int j = 0; j < d; ++j) {
        x[j] = rng.gaussian();
      }
      const double q = (m * x).squaredNorm();
      double w = 1.0;
      for (std::size_t k = 0; k < orders; ++k) {
        w *= q;
        sum[k] += w;
        sum_sq[k] += w * w;
      }
    }
    for (std::size_t k = 0; k < orders; ++k) {
      batch_sum[k][b] = sum[k];
      batch_sum_sq[k][b] = sum_sq[k];
    }
  });

  const double n = static_cast<double>(samples);
  std::vector<McEstimate> results(orders);
  for (std::size_t k = 0; k < orders; ++k) {
    const double total = pairwise_sum(batch_sum[k]);
    const double total_sq = pairwise_sum(batch_sum_sq[k]);
    const double mean = total / n;
    const double variance =
        std::max(0.0, (total_sq - n * mean * mean) / (n - 1.0));
    const double norm =
        std::pow(2.0, static_cast<double>(k + 1)) *
        rising_factorial(d / 2.0, static_cast<double>(k + 1));
    results[k].estimate = mean / norm;
    results[k].standard_error = std::sqrt(variance / n) / norm;
    results[k].samples = samples;
    results[k].seed = seed;
  }
  return results;
}

double fp_sphere_2d(double s2a, double s2b, double p) {
  if (s2a < 0 || s2b < 0) {
    throw domain_error("squared singular values must be nonnegative");
  }
  if (!(p > 0)) {
    throw domain_error("sphere-average frame order must be positive");
  }
  constexpr int kNodes = 4096;
  std::vector<double> values(kNodes);
  for (int j = 0; j < kNodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / kNodes;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    values[j] = std::pow(s2a * c * c + s2b * s * s, p);
  }
  return pairwise_sum(values) / kNodes;
}

double orbit_average(const groups::FiniteGroup& g, const TransformMatrix& t,
                     const Eigen::VectorXd& x, int p) {
  check_fp_order(p);
  if (x.size() != g.dimension() || t.cols() != g.dimension()) {
    throw domain_error("orbit_average: dimension mismatch between group, "
                       "matrix and vector");
  }
  if (std::abs(x.norm() - 1.0) > 1e-12) {
    throw precondition_error("orbit_average needs a unit vector (|x| = 1 "
                             "within 1e-12)");
  }
  const Eigen::MatrixXd& m = t.entries();
  std::vector<double> values;
  values.reserve(g.order());
  for (const auto& u : g.elements()) {
    const double q = (m * (u * x)).squaredNorm();
    double w = q;
    for (int i = 1; i < p; ++i) {
      w *= q;
    }
    values.push_back(w);
  }
  return pairwise_sum(values) / static_cast<double>(g.order());
}

FrameVerification verify_tight_frame(const groups::FiniteGroup& g,
                                     const TransformMatrix& t, int p,
                                     int trials, double tol,
                                     std::uint64_t seed) {
  if (trials < 10) {
    throw precondition_error("verify_tight_frame needs at least 10 trials");
  }
  const FrameConstant fp = fp_from_matrix(t, p);
  GaussianRng rng(stream_seed(seed, 0x7f7f7f));
  double max_deviation = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Eigen::VectorXd x = rng.unit_vector(g.dimension());
    const double average = orbit_average(g, t, x, p);
    const double deviation =
        std::abs(average - fp.value) / std::max(std::abs(fp.value), 1e-300);
    max_deviation = std::max(max_deviation, deviation);
  }
  FrameVerification v;
  v.group = g.provenance();
  v.p = p;
  v.d = g.dimension();
  v.trials = trials;
  v.frame_constant = fp.value;
  v.max_relative_deviation = max_deviation;
  v.tolerance = tol;
  v.seed = seed;
  v.tight = max_deviation < tol;
  return v;
}

std::pair<double, double> nontight_sandwich(const TransformMatrix& t, int p) {
  check_fp_order(p);
  const int d = t.cols();
  const double hs = linalg::schatten(t, 2);
  const double lower = std::pow(hs, p) / std::pow(static_cast<double>(d), p);
  const double upper = linalg::schatten(t, 2 * p) / d;
  return {lower, upper};
}

double multiplier_transform(const std::function<double(double)>& phi1,
                            const std::function<double(double)>& phi2,
                            const TransformMatrix& t, double arg) {
  if (t.rows() != t.cols()) {
    throw domain_error("multiplier_transform needs a square matrix");
  }
  if (arg < 0) {
    throw domain_error("multiplier_transform argument must be nonnegative");
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(t.entries());
  if (!lu.isInvertible()) {
    throw domain_error("multiplier_transform needs an invertible matrix");
  }
  const int d = t.cols();
  const Eigen::MatrixXd inverse = lu.inverse();
  const Eigen::MatrixXd g = linalg::gram(inverse);
  const double first =
      linalg::trace_matrix_function(
          g, [&](double e) { return phi1(arg * e); }) /
      d;
  const double second = phi2(arg * g.trace() / d);
  if (!std::isfinite(second)) {
    throw domain_error("multiplier_transform: phi2 undefined at its argument");
  }
  return first - second;
}

} // namespace framebound::frames
