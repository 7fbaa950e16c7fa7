#include "framebound/numeric.hpp"

namespace framebound {

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 16) {
    double sum = 0.0;
    for (const double v : values) {
      sum += v;
    }
    return sum;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace framebound
