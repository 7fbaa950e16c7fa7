#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace framebound {

/// Pairwise (cascade) summation; the reduction tree depends only on n,
/// so the result is independent of who produced the addends.
double pairwise_sum(std::span<const double> values);

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(std::span<const double>(values));
}

} // namespace framebound
