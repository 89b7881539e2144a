#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "oscint/errors.hpp"
#include "oscint/specfun.hpp"

using oscint::Complex;

namespace {

// |got - (re, im)| <= tol, reported with both components on failure.
void check_close(Complex got, double re, double im, double tol) {
  CAPTURE(got.real());
  CAPTURE(got.imag());
  CAPTURE(re);
  CAPTURE(im);
  CHECK(std::abs(got - Complex{re, im}) <= tol);
}

}  // namespace

TEST_CASE("gamma matches reference values across the real line") {
  CHECK(oscint::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oscint::gamma(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oscint::gamma(0.5) ==
        doctest::Approx(1.7724538509055160273).epsilon(1e-14));
  CHECK(oscint::gamma(1.25) ==
        doctest::Approx(0.90640247705547707798).epsilon(1e-14));
  CHECK(oscint::gamma(4.7) ==
        doctest::Approx(15.431411600047435652).epsilon(1e-13));
  // Integer arguments reach the exact factorial through the recurrence.
  CHECK(oscint::gamma(12.0) == doctest::Approx(39916800.0).epsilon(1e-14));
  // Negative arguments come through the reflection/recurrence path.
  CHECK(oscint::gamma(-0.5) ==
        doctest::Approx(-3.5449077018110320546).epsilon(1e-13));
  CHECK(oscint::gamma(-2.5) ==
        doctest::Approx(-0.94530872048294188123).epsilon(1e-13));
}

TEST_CASE("gamma satisfies the recurrence away from poles") {
  for (double x : {0.3, 1.9, 3.7, -1.3, -4.6}) {
    const double lhs = oscint::gamma(x + 1.0);
    const double rhs = x * oscint::gamma(x);
    CAPTURE(x);
    CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
  }
}

TEST_CASE("gamma rejects arguments within 1e-12 of a nonpositive integer") {
  CHECK_THROWS_AS(oscint::gamma(0.0), oscint::PoleError);
  CHECK_THROWS_AS(oscint::gamma(-1.0), oscint::PoleError);
  CHECK_THROWS_AS(oscint::gamma(-7.0), oscint::PoleError);
  CHECK_THROWS_AS(oscint::gamma(-3.0 + 1e-13), oscint::PoleError);
  CHECK_THROWS_AS(oscint::gamma(-3.0 - 1e-13), oscint::PoleError);
  CHECK_NOTHROW(oscint::gamma(-3.001));
  // Close to the pole but outside the guard: finite and huge.
  const double near = oscint::gamma(1e-11);
  CHECK(std::isfinite(near));
  CHECK(near > 9e10);
}

TEST_CASE("factorial is exact through 20 and follows gamma beyond") {
  double expect = 1.0;
  CHECK(oscint::factorial(0) == 1.0);
  for (int n = 1; n <= 20; ++n) {
    expect *= static_cast<double>(n);  // every n! <= 20! is an exact double
    CAPTURE(n);
    CHECK(oscint::factorial(n) == expect);
  }
  CHECK(oscint::factorial(21) ==
        doctest::Approx(51090942171709440000.0).epsilon(5e-15));
  CHECK_THROWS_AS(oscint::factorial(-1), oscint::DomainError);
}

TEST_CASE("unit_phase lies on the unit circle") {
  const Complex one = oscint::unit_phase(0.0);
  CHECK(one.real() == 1.0);
  CHECK(one.imag() == 0.0);
  for (double theta : {0.1, 1.0, -2.5, 3.14159, 12.0}) {
    CAPTURE(theta);
    CHECK(std::abs(std::abs(oscint::unit_phase(theta)) - 1.0) <= 1e-15);
  }
  check_close(oscint::unit_phase(3.141592653589793), -1.0, 0.0, 1e-15);
  // cos is even and sin is odd, so conjugation is exact.
  for (double theta : {0.7, 2.9, 31.0}) {
    const Complex diff =
        oscint::unit_phase(-theta) - std::conj(oscint::unit_phase(theta));
    CHECK(std::abs(diff) == 0.0);
  }
}

TEST_CASE("fresnel_closed matches the phased gamma product") {
  check_close(oscint::fresnel_closed(0.25, +1), 0.83740669676908648308,
              0.34686521102380949604, 1e-14);
  check_close(oscint::fresnel_closed(0.5, +1), 0.6266570686577501256,
              0.6266570686577501256, 1e-14);
  check_close(oscint::fresnel_closed(0.75, +1), 0.35171000233266310943,
              0.84910305765378817484, 1e-14);
  check_close(oscint::fresnel_closed(0.3, +1), 0.79965224567677031369,
              0.40744316991768581161, 1e-14);
}

TEST_CASE("fresnel_closed sign flip conjugates the value exactly") {
  for (double alpha : {0.25, 0.4, 0.5, 0.6, 0.75}) {
    const Complex plus = oscint::fresnel_closed(alpha, +1);
    const Complex minus = oscint::fresnel_closed(alpha, -1);
    CAPTURE(alpha);
    CHECK(std::abs(minus - std::conj(plus)) == 0.0);
  }
}

TEST_CASE("fresnel_closed guards its domain") {
  CHECK_THROWS_AS(oscint::fresnel_closed(0.0, +1), oscint::DomainError);
  CHECK_THROWS_AS(oscint::fresnel_closed(1.0, +1), oscint::DomainError);
  CHECK_THROWS_AS(oscint::fresnel_closed(-0.2, +1), oscint::DomainError);
  CHECK_THROWS_AS(oscint::fresnel_closed(1.3, -1), oscint::DomainError);
  CHECK_THROWS_AS(oscint::fresnel_closed(0.5, 0), oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::fresnel_closed(0.5, 2), oscint::InvalidSpec);
}
