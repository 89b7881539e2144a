#pragma once

#include <functional>

#include "oscint/amplitude.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  long long max_evals = 10'000'000;
};

struct QuadResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  long long evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<Complex(double)>;

// Which of the two independent computation routes an oracle takes. The
// cross-check route uses a different split point, partition offset, and
// series accelerator so that agreement is evidence, not tautology.
enum class Strategy { primary, cross_check };

enum class Accel { levin, euler };

// Adaptive bisection on [a,b] with an embedded 15/7-point rule pair per
// sub-panel (error from rule disagreement), depth <= 50. Never throws on
// resource exhaustion: returns the best estimate with converged=false.
QuadResult integrate_panel(const Integrand& f, double a, double b,
                           const Tolerance& tol);

// integrate_panel over [a,b] pre-split into geometric blocks when b/a spans
// many octaves; needed when the integrand's scale varies over decades.
QuadResult integrate_geometric(const Integrand& f, double a, double b,
                               const Tolerance& tol);

// int_{y0}^inf e^{i t y} g(y) dy: segments on the half-period lattice
// y0 + k*pi/|t| (an odd multiple of pi/|t| wide, so consecutive segment
// integrals alternate), each segment by panel quadrature, partial sums
// extrapolated by Levin-u (order <= 12, restarted when the table fills)
// or by iterated Euler averaging. decay_from marks where |g|'s envelope
// is guaranteed non-increasing: segments are sized to reach past it and
// the extrapolation is not trusted before it. Defaults to y0 (decaying
// from the start). Stalled acceleration reports converged=false.
QuadResult osc_tail(const Integrand& g, double y0, double t,
                    const Tolerance& tol, Accel accel = Accel::levin,
                    double decay_from = -1.0);

// int_0^R phi(x) x^{-s} dx for s < 1, geometrically graded toward the
// integrable endpoint. Shared by the t=0 oracle branches and the Taylor
// coefficients so that values that must agree exactly share one code path.
QuadResult moment_integral(const Amplitude& phi, double s,
                           const Tolerance& tol);

// I_alpha(t) = int_0^inf e^{i t / x^alpha} phi(x) dx.
// primary: split at delta = min(R, (|t|/(100 pi))^{1/alpha}); direct panels
// on [delta, R] (phase span capped at 100 pi), substitution y = x^{-alpha}
// on (0, delta] handled as an oscillatory tail.
// cross_check: pure substitution over the whole support, Euler-accelerated.
QuadResult oracle_I(double alpha, const Amplitude& phi, double t,
                    const Tolerance& tol, Strategy strategy = Strategy::primary);

// L_alpha(t) = int_0^inf e^{-t / x^alpha} phi(x) dx for t >= 0; the value is
// real (imaginary part exactly zero). Integration starts at the underflow
// cut where t*x^{-alpha} = 750. cross_check integrates in substituted
// coordinates. Throws DomainError for t < 0.
QuadResult oracle_L(double alpha, const Amplitude& phi, double t,
                    const Tolerance& tol, Strategy strategy = Strategy::primary);

// F_p(t) = int_0^inf e^{i t x} x^{-p-1} chi(x) dx with the rising cutoff
// chi (0 below inner, 1 above outer); p > -1, t != 0. cross_check offsets
// the tail partition by a quarter period.
QuadResult oracle_F(double p, const CutoffSpec& cutoff, double t,
                    const Tolerance& tol, Strategy strategy = Strategy::primary);

// int_0^inf e^{+-i x^{1/alpha}} dx computed as
// alpha * int_0^inf e^{+-i y} y^{alpha-1} dy for alpha in (0,1): graded mesh
// on (0, 2 pi] against the integrable endpoint, oscillatory tail beyond.
QuadResult oracle_fresnel(double alpha, int sign, const Tolerance& tol);

}  // namespace oscint
