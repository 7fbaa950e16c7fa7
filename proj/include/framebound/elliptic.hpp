#pragma once

namespace framebound {

/// Complete elliptic integral of the second kind E(k) in the modulus
/// convention, E(k) = Int_0^{pi/2} sqrt(1 - k^2 sin^2) dt, by the
/// arithmetic-geometric-mean iteration, terminating at relative change
/// below 1e-15. 0 <= k < 1.
double agm_elliptic_e(double k);

/// Exact perimeter of the ellipse with semiaxes a, b > 0.
double ellipse_perimeter(double a, double b);

} // namespace framebound
