#pragma once

#include <string>
#include <vector>

#include "oscint/amplitude.hpp"
#include "oscint/asymptotics.hpp"
#include "oscint/report.hpp"

namespace oscint {

// Geometric grid request shared by the verification commands.
struct GridSpec {
  double tmin = 0.0;
  double tmax = 0.0;
  int points = 0;
};

// Ascending geometric grid from tmin to tmax. points == 1 collapses to
// {tmin}. Throws InvalidSpec on a non-positive or inverted window.
std::vector<double> geometric_grid(const GridSpec& grid);

// Each command assembles one ExperimentReport. alpha_text and
// amplitude_text are the operator-facing forms of the inputs and are
// echoed into the report parameters verbatim.

// Coefficient table for n = 0..N plus the structural verdict: the gated
// family is exactly zero at every order, and for rational alpha the
// reindexed log coefficients agree bit for bit.
ExperimentReport cmd_coeffs(const AlphaSpec& alpha, const Amplitude& phi,
                            int N, const Tolerance& tol,
                            const std::string& alpha_text,
                            const std::string& amplitude_text);

// Oracle vs expansion at a single t (any sign; 0 takes the limit branch).
// No claim is made at a single point, so the verdict is inconclusive.
ExperimentReport cmd_eval(const AlphaSpec& alpha, const Amplitude& phi,
                          double t, int N, const Tolerance& tol,
                          const std::string& alpha_text,
                          const std::string& amplitude_text);

// Oracle vs closed form for the generalized Fresnel integral, both signs,
// each alpha in (0,1). Pass iff every relative error is at most 1e-6.
ExperimentReport cmd_verify_fresnel(const std::vector<double>& alphas,
                                    const Tolerance& tol);

// Small-t limit of (I(t) - C0) / normalizer against the predicted
// constant on a descending geometric grid. The bar is 1% at the final
// point, loosened to 10% plus strict deviation decrease in the log
// regime where the next correction dies only like 1/log(1/t).
ExperimentReport cmd_verify_limits(const AlphaSpec& alpha,
                                   const Amplitude& phi, const GridSpec& grid,
                                   const Tolerance& tol,
                                   const std::string& alpha_text,
                                   const std::string& amplitude_text);

// Growth order of the expansion remainder on a log grid. empirical > 0
// additionally subtracts that many fitted Taylor terms past the
// convergent ones before fitting the slope. The slope bar comes from the
// exponent lattice, not a hard-coded constant.
ExperimentReport cmd_verify_remainder(const AlphaSpec& alpha,
                                      const Amplitude& phi, int N,
                                      const GridSpec& grid, int empirical,
                                      const Tolerance& tol,
                                      const std::string& alpha_text,
                                      const std::string& amplitude_text);

// Large-t decay order of |I(t)|. Windows reaching below t = 1 are
// declined as inconclusive: the claim is asymptotic.
ExperimentReport cmd_verify_decay(const AlphaSpec& alpha, const Amplitude& phi,
                                  const GridSpec& grid, const Tolerance& tol,
                                  const std::string& alpha_text,
                                  const std::string& amplitude_text);

// Laplace-kind mirror of the limit and remainder checks, with a leading
// t = 0 row; additionally requires every reported value to be exactly
// real.
ExperimentReport cmd_laplace(const AlphaSpec& alpha, const Amplitude& phi,
                             int N, const GridSpec& grid, const Tolerance& tol,
                             const std::string& alpha_text,
                             const std::string& amplitude_text);

}  // namespace oscint
