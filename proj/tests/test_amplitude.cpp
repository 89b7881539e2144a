#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oscint/amplitude.hpp"
#include "oscint/errors.hpp"

using oscint::Amplitude;
using oscint::CutoffSpec;

TEST_CASE("cutoff spec validation") {
  CHECK_NOTHROW(oscint::validate(CutoffSpec{1.0, 2.0}));
  CHECK_THROWS_AS(oscint::validate(CutoffSpec{0.0, 2.0}), oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::validate(CutoffSpec{-1.0, 2.0}), oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::validate(CutoffSpec{2.0, 2.0}), oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::validate(CutoffSpec{3.0, 2.0}), oscint::InvalidSpec);
}

TEST_CASE("plateau cutoff is exactly 1 inside, 0 outside, 1/2 at center") {
  const CutoffSpec spec{1.0, 2.0};
  CHECK(oscint::plateau_cutoff(0.0, spec) == 1.0);
  CHECK(oscint::plateau_cutoff(0.7, spec) == 1.0);
  CHECK(oscint::plateau_cutoff(1.0, spec) == 1.0);
  CHECK(oscint::plateau_cutoff(2.0, spec) == 0.0);
  CHECK(oscint::plateau_cutoff(5.0, spec) == 0.0);
  // h(1/2)/(h(1/2)+h(1/2)) reduces to an exact 0.5 in floating point.
  CHECK(oscint::plateau_cutoff(1.5, spec) == 0.5);
  // Strictly between the bounds it is strictly between the levels.
  const double v = oscint::plateau_cutoff(1.2, spec);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(oscint::plateau_cutoff(1.2, spec) >
        oscint::plateau_cutoff(1.8, spec));
}

TEST_CASE("rising cutoff mirrors the plateau and they sum to 1") {
  const CutoffSpec spec{0.5, 3.0};
  CHECK(oscint::rising_cutoff(0.2, spec) == 0.0);
  CHECK(oscint::rising_cutoff(0.5, spec) == 0.0);
  CHECK(oscint::rising_cutoff(3.0, spec) == 1.0);
  CHECK(oscint::rising_cutoff(7.0, spec) == 1.0);
  for (double x : {0.6, 1.0, 1.75, 2.4, 2.9}) {
    const double sum =
        oscint::rising_cutoff(x, spec) + oscint::plateau_cutoff(x, spec);
    CAPTURE(x);
    CHECK(std::abs(sum - 1.0) <= 1e-15);
  }
}

TEST_CASE("poly plateau jets are exact factorials of the coefficients") {
  const std::vector<double> coeffs{3.0, 2.0, 5.0, -1.0, 0.5, 2.0, 500.0};
  const Amplitude phi = oscint::make_poly_plateau(coeffs, CutoffSpec{1.0, 2.0}, 8);
  double fact = 1.0;
  for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) {
    if (n > 0) fact *= n;
    CAPTURE(n);
    CHECK(oscint::jet_at_zero(phi, n) == fact * coeffs[n]);
  }
  CHECK(oscint::jet_at_zero(phi, 7) == 0.0);  // past the degree, inside the jet
  CHECK_THROWS_AS(oscint::jet_at_zero(phi, 8), oscint::JetExhausted);
  CHECK_THROWS_AS(oscint::jet_at_zero(phi, -1), oscint::DomainError);
}

TEST_CASE("poly plateau evaluates the polynomial where the cutoff is flat") {
  const std::vector<double> coeffs{1.5, -0.25, 2.0};
  const Amplitude phi = oscint::make_poly_plateau(coeffs, CutoffSpec{1.0, 2.0});
  CHECK(phi(0.0) == 1.5);
  for (double x : {0.25, 0.5, 1.0}) {
    const double poly = coeffs[0] + x * (coeffs[1] + x * coeffs[2]);
    CAPTURE(x);
    CHECK(phi(x) == doctest::Approx(poly).epsilon(1e-15));
  }
  CHECK(phi(2.0) == 0.0);
  CHECK(phi(3.0) == 0.0);
  CHECK(phi.support_radius() == 2.0);
  CHECK(phi.cutoff_inner() == 1.0);
}

TEST_CASE("jets agree with central finite differences of the evaluator") {
  // Second-order stencils: halving errors by ~100x when h drops 10x.
  // The comparison only asks for observed order >= 1.8 plus a roundoff
  // allowance, which the exact jets must meet if evaluator and jet
  // describe the same function.
  const std::vector<double> coeffs{3.0, 2.0, 5.0, -1.0, 0.5, 2.0, 500.0};
  const Amplitude phi = oscint::make_poly_plateau(coeffs, CutoffSpec{1.0, 2.0}, 8);
  const auto fd = [&phi](int n, double h) {
    switch (n) {
      case 1:
        return (phi(h) - phi(-h)) / (2.0 * h);
      case 2:
        return (phi(h) - 2.0 * phi(0.0) + phi(-h)) / (h * h);
      case 3:
        return (phi(2 * h) - 2.0 * phi(h) + 2.0 * phi(-h) - phi(-2 * h)) /
               (2.0 * h * h * h);
      default:
        return (phi(2 * h) - 4.0 * phi(h) + 6.0 * phi(0.0) - 4.0 * phi(-h) +
                phi(-2 * h)) /
               (h * h * h * h);
    }
  };
  for (int n = 1; n <= 4; ++n) {
    const double truth = oscint::jet_at_zero(phi, n);
    const double e1 = std::abs(fd(n, 1e-2) - truth);
    const double e2 = std::abs(fd(n, 1e-3) - truth);
    CAPTURE(n);
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e2 <= 0.025 * e1 + 1e-8);
  }
}

TEST_CASE("default amplitude is the unit plateau on [0,1] with support 2") {
  const Amplitude phi = oscint::default_amplitude();
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(0.5) == 1.0);
  CHECK(phi(1.0) == 1.0);
  CHECK(phi(2.0) == 0.0);
  CHECK(phi.support_radius() == 2.0);
  CHECK(phi.cutoff_inner() == 1.0);
  CHECK(oscint::jet_at_zero(phi, 0) == 1.0);
  CHECK(oscint::jet_at_zero(phi, 1) == 0.0);
  CHECK(oscint::jet_at_zero(phi, 17) == 0.0);
}

TEST_CASE("amplitude constructor validates its geometry") {
  const auto eval = [](double) { return 1.0; };
  const std::vector<double> jet{1.0};
  CHECK_NOTHROW(Amplitude(eval, jet, 2.0, 2.0));  // boundary inner == radius
  CHECK_NOTHROW(Amplitude(eval, jet, 2.0, 0.5));
  CHECK_THROWS_AS(Amplitude(eval, jet, 2.0, 0.0), oscint::InvalidSpec);
  CHECK_THROWS_AS(Amplitude(eval, jet, 2.0, -1.0), oscint::InvalidSpec);
  CHECK_THROWS_AS(Amplitude(eval, jet, 2.0, 2.5), oscint::InvalidSpec);
  CHECK_THROWS_AS(Amplitude(eval, jet, 0.0, 1.0), oscint::InvalidSpec);
  CHECK_THROWS_AS(Amplitude(eval, std::vector<double>{}, 2.0, 1.0),
                  oscint::InvalidSpec);
}

TEST_CASE("make_poly_plateau rejects degenerate requests") {
  CHECK_THROWS_AS(oscint::make_poly_plateau({}, CutoffSpec{1.0, 2.0}),
                  oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::make_poly_plateau({1.0}, CutoffSpec{2.0, 1.0}),
                  oscint::InvalidSpec);
  CHECK_THROWS_AS(oscint::make_poly_plateau({1.0}, CutoffSpec{1.0, 2.0}, 0),
                  oscint::InvalidSpec);
}

TEST_CASE("amplitude JSON round-trips through parse and serialize") {
  const std::vector<double> coeffs{1.5, -2.0, 0.25};
  const CutoffSpec spec{0.5, 3.0};
  const std::string text = oscint::amplitude_to_json(coeffs, spec);
  const Amplitude parsed = oscint::amplitude_from_json(text);
  const Amplitude direct = oscint::make_poly_plateau(coeffs, spec);
  CHECK(parsed.support_radius() == direct.support_radius());
  CHECK(parsed.cutoff_inner() == direct.cutoff_inner());
  CHECK(parsed.jet() == direct.jet());
  for (double x : {0.0, 0.4, 1.1, 2.2, 3.5}) {
    CAPTURE(x);
    CHECK(parsed(x) == direct(x));
  }
}

TEST_CASE("amplitude JSON rejects malformed and invalid input") {
  CHECK_THROWS_AS(oscint::amplitude_from_json("not json"), oscint::ParseError);
  CHECK_THROWS_AS(oscint::amplitude_from_json("{"), oscint::ParseError);
  CHECK_THROWS_AS(oscint::amplitude_from_json("{\"coeffs\":[1]}"),
                  oscint::ParseError);  // missing cutoff bounds
  CHECK_THROWS_AS(
      oscint::amplitude_from_json("{\"coeffs\":\"x\",\"inner\":1,\"outer\":2}"),
      oscint::ParseError);
  CHECK_THROWS_AS(
      oscint::amplitude_from_json("{\"coeffs\":[1],\"inner\":2,\"outer\":1}"),
      oscint::InvalidSpec);
  CHECK_THROWS_AS(
      oscint::amplitude_from_json("{\"coeffs\":[],\"inner\":1,\"outer\":2}"),
      oscint::InvalidSpec);
}
