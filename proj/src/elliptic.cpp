#include "framebound/elliptic.hpp"

#include "framebound/errors.hpp"

#include <cmath>
#include <numbers>

namespace framebound {

double agm_elliptic_e(double k) {
  if (!(k >= 0.0) || k >= 1.0) {
    throw domain_error("agm_elliptic_e needs modulus 0 <= k < 1");
  }
  // A&S 17.6: a_0 = 1, b_0 = k', c_0 = k; E/K = 1 - sum 2^{n-1} c_n^2.
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  double c = k;
  double c_sum = 0.5 * c * c;
  double power = 0.5;
  for (int n = 1; n <= 64; ++n) {
    const double a_next = 0.5 * (a + b);
    const double b_next = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = a_next;
    b = b_next;
    power *= 2.0;
    c_sum += power * c * c;
    if (std::abs(c) < 1e-15 * a) {
      break;
    }
  }
  const double big_k = std::numbers::pi / (2.0 * a);
  return big_k * (1.0 - c_sum);
}

double ellipse_perimeter(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw domain_error("ellipse semiaxes must be positive");
  }
  const double major = std::max(a, b);
  const double minor = std::min(a, b);
  const double ratio = minor / major;
  const double eccentricity = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  return 4.0 * major * agm_elliptic_e(eccentricity);
}

} // namespace framebound
