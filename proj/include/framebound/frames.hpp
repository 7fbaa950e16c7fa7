#pragma once

#include "framebound/groups.hpp"
#include "framebound/linalg.hpp"
#include "framebound/rational.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace framebound::frames {

using linalg::TransformMatrix;

enum class FpMethod { Monomial, Cycle, MonteCarlo, Sphere2d, Orbit };

std::string method_name(FpMethod method);

/// The frame constant F_p: value of the orbit-average identity
/// (1/|G|) sum_U |TUx|^{2p} = F_p(s^2(T)) |x|^{2p}.
struct FrameConstant {
  double p = 0;
  int d = 0;
  double value = 0;
  FpMethod method = FpMethod::Cycle;
};

/// F_p of a multiset of squared singular values, exact. Evaluates both the
/// monomial-basis formula
///   p!/(4^p (d/2)_p) sum_lambda prod C(2k,k) m_lambda(s2)
/// and the cycle-index formula
///   p!/(d/2)_p Z(S_p, p_1(s2)/2, ..., p_p(s2)/2)
/// and insists on exact agreement before returning. 1 <= p <= 16.
Rational fp_exact(const std::vector<Rational>& s2, int p);

/// fp_exact through the exact rational image of the doubles.
double fp_value(const std::vector<double>& s2, int p);

/// d = 2 specialization: 4^{-p} sum_k C(2k,k) C(2p-2k,p-k) s2a^k s2b^{p-k}.
double fp_2d_binomial(double s2a, double s2b, int p);

/// F_p of a (possibly rectangular) matrix with d columns. Computed from the
/// squared singular values and, independently, from the Schatten profile by
/// trace powers without any eigendecomposition; the two must agree to 1e-10
/// relative.
FrameConstant fp_from_matrix(const TransformMatrix& t, int p);

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo estimate of E|TX|^{2p} / (2^p (d/2)_p) with X standard
/// Gaussian. Deterministic for a fixed seed regardless of the worker count
/// (fixed batch partition, pairwise reduction). samples >= 10^4; any real
/// p > 0.
McEstimate fp_montecarlo(const TransformMatrix& t, double p,
                         std::uint64_t samples, std::uint64_t seed);

/// Estimates for every integer order 1..max_p from one shared sample
/// stream (the estimates are correlated across orders but individually
/// unbiased).
std::vector<McEstimate> fp_montecarlo_batch(const TransformMatrix& t,
                                            int max_p, std::uint64_t samples,
                                            std::uint64_t seed);

/// (1/2pi) Int_0^{2pi} (s2a cos^2 + s2b sin^2)^p dtheta by a 4096-node
/// composite trapezoid rule (spectrally accurate; exact to roundoff for
/// integer p). Any real p > 0; d = 2 only.
double fp_sphere_2d(double s2a, double s2b, double p);

/// Exact group average (1/|G|) sum_U |TUx|^{2p} for a unit vector x.
double orbit_average(const groups::FiniteGroup& g, const TransformMatrix& t,
                     const Eigen::VectorXd& x, int p);

struct FrameVerification {
  std::string group;
  int p = 0;
  int d = 0;
  int trials = 0;
  double frame_constant = 0;
  double max_relative_deviation = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;
  bool tight = false;
};

/// Samples seeded random unit vectors and compares orbit averages against
/// fp_from_matrix; tight iff the max relative deviation stays below tol.
FrameVerification verify_tight_frame(const groups::FiniteGroup& g,
                                     const TransformMatrix& t, int p,
                                     int trials, double tol = 1e-9,
                                     std::uint64_t seed = 0);

/// ( ||T||_2^{2p} / d^p , ||T||_{2p}^{2p} / d ). Brackets F_p(s^2(T)) with
/// equality on both sides exactly when all squared singular values agree.
std::pair<double, double> nontight_sandwich(const TransformMatrix& t, int p);

/// F[Phi1, Phi2, T](t) = (1/d) tr Phi1(t T^{-1}T^{-T})
///                       - Phi2((t/d) tr T^{-1}T^{-T}).
/// Invariant under Phi_i -> Phi_i + l for linear l.
double multiplier_transform(const std::function<double(double)>& phi1,
                            const std::function<double(double)>& phi2,
                            const TransformMatrix& t, double arg);

/// Rising factorial (x)_p for real p >= 0 (exact product for integer p).
double rising_factorial(double x, double p);

} // namespace framebound::frames
