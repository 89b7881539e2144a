#pragma once

#include <complex>

namespace oscint {

using Complex = std::complex<double>;

// Gamma function for real non-pole arguments. A fixed-coefficient rational
// approximation supplies >=13 significant digits on [1,2]; everything else
// is reached through the recurrence Gamma(x+1) = x*Gamma(x), which keeps
// relative accuracy away from the poles. Throws PoleError within 1e-12 of
// a non-positive integer.
double gamma(double x);

// n! exactly for n <= 20 (the largest factorial a double holds exactly),
// gamma(n+1) beyond. Throws DomainError for n < 0.
double factorial(int n);

// e^{i*theta} = (cos theta, sin theta). Modulus 1 to within 1e-15.
Complex unit_phase(double theta);

// Closed form of the generalized Fresnel integral
//   int_0^inf e^{+-i x^{1/alpha}} dx = e^{+-(alpha/2) pi i} Gamma(alpha+1)
// valid for 0 < alpha < 1 only; sign is +1 or -1. Throws DomainError for
// alpha outside (0,1) and InvalidSpec for sign not in {+1,-1}.
Complex fresnel_closed(double alpha, int sign);

}  // namespace oscint
