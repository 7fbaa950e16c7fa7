#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace framebound {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for an independent stream, stable across runs and thread counts.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic Gaussian source: mt19937_64 with an explicit uniform
/// mapping and Box-Muller, so results do not depend on the C++ runtime's
/// std::normal_distribution implementation.
class GaussianRng {
public:
  explicit GaussianRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian();

  Eigen::VectorXd gaussian_vector(int dim);

  /// Gaussian direction normalized to unit length.
  Eigen::VectorXd unit_vector(int dim);

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

} // namespace framebound
