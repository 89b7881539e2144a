#include "oscint/commands.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "oscint/errors.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

namespace {

void push_common(ExperimentReport& report, const std::string& alpha_text,
                 const std::string& amplitude_text) {
  report.parameters.push_back({"alpha", alpha_text});
  report.parameters.push_back({"amplitude", amplitude_text});
}

void push_quad_tol(ExperimentReport& report, const Tolerance& tol) {
  report.tolerances.push_back({"abs_tol", tol.abs_tol});
  report.tolerances.push_back({"rel_tol", tol.rel_tol});
}

bool is_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }

bool bitwise_equal(const Complex& a, const Complex& b) {
  return a.real() == b.real() && a.imag() == b.imag();
}

// Sum of the expansion's exponent-zero plain terms: the t -> 0 limit.
Complex constant_term(const Expansion& expansion) {
  Complex c{0.0, 0.0};
  for (const auto& term : expansion.terms)
    if (term.exp_value == 0.0 && term.log_power == 0) c += term.coeff;
  return c;
}

int default_taylor_orders(const AlphaSpec& alpha, int N) {
  const long long ro = remainder_order_exact(alpha, N);
  return static_cast<int>(
      std::min(std::max(0LL, ro - 1), convergent_taylor_limit(alpha)));
}

std::string kind_name(Kind kind) {
  return kind == Kind::oscillatory ? "oscillatory" : "laplace";
}

struct RegimeTarget {
  Regime regime = Regime::one;
  Complex constant{0.0, 0.0};
  std::string normalizer;
  double bar = 0.01;  // final-point relative deviation allowed
};

RegimeTarget laplace_target(const AlphaSpec& alpha, const Amplitude& phi,
                            const Tolerance& tol) {
  RegimeTarget out;
  const bool below_one =
      alpha.is_rational ? alpha.p < alpha.q : alpha.irr < 1.0;
  const bool exactly_one = alpha.is_rational && alpha.p == alpha.q;
  if (exactly_one) {
    out.regime = Regime::one;
    out.constant = coeff_B_hat(alpha, phi, 1);
    out.normalizer = "t*log(t)";
  } else if (below_one) {
    out.regime = Regime::sub_one;
    out.constant = coeff_C_laplace(alpha, phi, 1, tol);
    out.normalizer = "t";
  } else {
    out.regime = Regime::super_one;
    out.constant = coeff_A_hat(alpha, phi, 1);
    out.normalizer = "t^(1/alpha)";
  }
  out.bar = out.regime == Regime::one ? 0.10 : 0.01;
  return out;
}

double normalizer_value(Regime regime, const AlphaSpec& alpha, double t) {
  switch (regime) {
    case Regime::sub_one:
      return t;
    case Regime::one:
      return t * std::log(t);
    case Regime::super_one:
    default:
      return std::pow(t, n_over_alpha(alpha, 1));
  }
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::sub_one:
      return "sub_one";
    case Regime::one:
      return "one";
    case Regime::super_one:
    default:
      return "super_one";
  }
}

}  // namespace

std::vector<double> geometric_grid(const GridSpec& grid) {
  if (!(grid.tmin > 0.0) || !(grid.tmax >= grid.tmin) || grid.points < 1)
    throw InvalidSpec("grid requires 0 < tmin <= tmax and points >= 1");
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(grid.points));
  if (grid.points == 1 || grid.tmax == grid.tmin) {
    ts.push_back(grid.tmin);
    return ts;
  }
  const double ratio = grid.tmax / grid.tmin;
  for (int i = 0; i < grid.points; ++i)
    ts.push_back(grid.tmin *
                 std::pow(ratio, static_cast<double>(i) / (grid.points - 1)));
  ts.front() = grid.tmin;
  ts.back() = grid.tmax;
  return ts;
}

ExperimentReport cmd_coeffs(const AlphaSpec& alpha, const Amplitude& phi,
                            int N, const Tolerance& tol,
                            const std::string& alpha_text,
                            const std::string& amplitude_text) {
  if (N < 0) throw InvalidSpec("cmd_coeffs: order must be >= 0");
  ExperimentReport report;
  report.command = "coeffs";
  push_common(report, alpha_text, amplitude_text);
  report.parameters.push_back({"order", static_cast<long long>(N)});
  push_quad_tol(report, tol);
  report.tolerances.push_back({"structural", std::string("exact")});

  const long long conv = convergent_taylor_limit(alpha);
  bool structural = true;
  for (int n = 0; n <= N; ++n) {
    Complex a{0.0, 0.0}, b{0.0, 0.0}, ah{0.0, 0.0}, bh{0.0, 0.0};
    if (n >= 1) {
      a = coeff_A(alpha, phi, n);
      b = coeff_B(alpha, phi, n);
      ah = coeff_A_hat(alpha, phi, n);
      bh = coeff_B_hat(alpha, phi, n);
      if (integer_ratio(alpha, n)) {
        if (!is_zero(a) || !is_zero(ah)) structural = false;
      } else {
        if (!is_zero(b) || !is_zero(bh)) structural = false;
      }
    }
    Complex c{0.0, 0.0};
    const bool c_defined = n <= conv;
    if (c_defined) c = coeff_C(alpha, phi, n, tol);
    Row row;
    row.push_back({"n", static_cast<long long>(n)});
    row.push_back({"A_re", a.real()});
    row.push_back({"A_im", a.imag()});
    row.push_back({"B_re", b.real()});
    row.push_back({"B_im", b.imag()});
    row.push_back({"A_hat_re", ah.real()});
    row.push_back({"A_hat_im", ah.imag()});
    row.push_back({"B_hat_re", bh.real()});
    row.push_back({"B_hat_im", bh.imag()});
    row.push_back({"C_re", c.real()});
    row.push_back({"C_im", c.imag()});
    row.push_back({"C_defined", c_defined});
    report.rows.push_back(std::move(row));
  }

  if (alpha.is_rational) {
    for (int m = 1; static_cast<long long>(m) * alpha.p <= N; ++m) {
      const Complex direct =
          coeff_B(alpha, phi, static_cast<int>(alpha.p * m));
      const Complex reindexed = coeff_B_check(alpha, phi, m);
      if (!bitwise_equal(direct, reindexed)) structural = false;
    }
  }

  report.verdict = structural ? Verdict::pass : Verdict::fail;
  return report;
}

ExperimentReport cmd_eval(const AlphaSpec& alpha, const Amplitude& phi,
                          double t, int N, const Tolerance& tol,
                          const std::string& alpha_text,
                          const std::string& amplitude_text) {
  ExperimentReport report;
  report.command = "eval";
  push_common(report, alpha_text, amplitude_text);
  report.parameters.push_back({"order", static_cast<long long>(N)});

  const int taylor = default_taylor_orders(alpha, N);
  const Expansion e =
      build_expansion(alpha, phi, N, Kind::oscillatory, taylor, tol);
  report.parameters.push_back(
      {"taylor_orders", static_cast<long long>(taylor)});
  report.parameters.push_back({"remainder_order", e.remainder_order});
  report.parameters.push_back({"expansion", expansion_to_json(e)});
  push_quad_tol(report, tol);

  const QuadResult o = oracle_I(alpha.as_double(), phi, t, tol);
  const Complex expv =
      t == 0.0 ? constant_term(e)
               : eval_expansion(e, t,
                                t < 0.0 ? Branch::negative_axis
                                        : Branch::positive_axis);
  Row row;
  row.push_back({"t", t});
  row.push_back({"oracle_re", o.value.real()});
  row.push_back({"oracle_im", o.value.imag()});
  row.push_back({"oracle_err", o.err_estimate});
  row.push_back({"oracle_converged", o.converged});
  row.push_back({"expansion_re", expv.real()});
  row.push_back({"expansion_im", expv.imag()});
  row.push_back({"abs_diff", std::abs(o.value - expv)});
  report.rows.push_back(std::move(row));

  report.verdict = Verdict::inconclusive;  // no claim at a single t
  return report;
}

ExperimentReport cmd_verify_fresnel(const std::vector<double>& alphas,
                                    const Tolerance& tol) {
  ExperimentReport report;
  report.command = "verify-fresnel";
  std::string joined;
  for (double a : alphas) {
    if (!joined.empty()) joined += ",";
    joined += fmt17(a);
  }
  report.parameters.push_back({"alphas", joined});
  push_quad_tol(report, tol);
  static constexpr double kRelMax = 1e-6;
  report.tolerances.push_back({"rel_err_max", kRelMax});

  bool all_ok = true;
  for (double a : alphas) {
    for (int sign : {+1, -1}) {
      const QuadResult o = oracle_fresnel(a, sign, tol);
      const Complex closed = fresnel_closed(a, sign);
      const double rel = std::abs(o.value - closed) / std::abs(closed);
      if (!(rel <= kRelMax) || !o.converged) all_ok = false;
      Row row;
      row.push_back({"alpha", a});
      row.push_back({"sign", static_cast<long long>(sign)});
      row.push_back({"oracle_re", o.value.real()});
      row.push_back({"oracle_im", o.value.imag()});
      row.push_back({"closed_re", closed.real()});
      row.push_back({"closed_im", closed.imag()});
      row.push_back({"rel_err", rel});
      row.push_back({"converged", o.converged});
      report.rows.push_back(std::move(row));
    }
  }
  report.verdict = report.rows.empty() ? Verdict::inconclusive
                   : all_ok            ? Verdict::pass
                                       : Verdict::fail;
  return report;
}

ExperimentReport cmd_verify_limits(const AlphaSpec& alpha,
                                   const Amplitude& phi, const GridSpec& grid,
                                   const Tolerance& tol,
                                   const std::string& alpha_text,
                                   const std::string& amplitude_text) {
  ExperimentReport report;
  report.command = "verify-limits";
  push_common(report, alpha_text, amplitude_text);

  const LimitConstant lc = limit_constant(alpha, phi, tol);
  const Complex c0 = coeff_C(alpha, phi, 0, tol);
  const double bar = lc.regime == Regime::one ? 0.10 : 0.01;
  report.parameters.push_back({"regime", regime_name(lc.regime)});
  report.parameters.push_back({"normalizer", lc.normalizer});
  report.parameters.push_back({"constant_re", lc.constant.real()});
  report.parameters.push_back({"constant_im", lc.constant.imag()});
  report.parameters.push_back({"tmin", grid.tmin});
  report.parameters.push_back({"tmax", grid.tmax});
  report.parameters.push_back({"points", static_cast<long long>(grid.points)});
  push_quad_tol(report, tol);
  report.tolerances.push_back({"deviation_max", bar});
  if (lc.regime == Regime::one)
    report.tolerances.push_back({"monotone_required", true});

  std::vector<double> ts = geometric_grid(grid);
  std::reverse(ts.begin(), ts.end());  // descend toward the limit

  const double cmag = std::abs(lc.constant);
  std::vector<double> deviations;
  bool all_converged = true;
  for (double t : ts) {
    const QuadResult o = oracle_I(alpha.as_double(), phi, t, tol);
    const Complex ratio =
        (o.value - c0) / normalizer_value(lc.regime, alpha, t);
    const double dev = cmag > 0.0 ? std::abs(ratio - lc.constant) / cmag
                                  : std::abs(ratio - lc.constant);
    deviations.push_back(dev);
    all_converged = all_converged && o.converged;
    Row row;
    row.push_back({"t", t});
    row.push_back({"ratio_re", ratio.real()});
    row.push_back({"ratio_im", ratio.imag()});
    row.push_back({"deviation", dev});
    row.push_back({"converged", o.converged});
    report.rows.push_back(std::move(row));
  }

  bool ok = all_converged && !deviations.empty() &&
            deviations.back() <= bar;
  if (lc.regime == Regime::one)
    for (std::size_t i = 1; i < deviations.size(); ++i)
      if (!(deviations[i] < deviations[i - 1])) ok = false;
  report.verdict = report.rows.empty() ? Verdict::inconclusive
                   : all_converged     ? (ok ? Verdict::pass : Verdict::fail)
                                       : Verdict::inconclusive;
  return report;
}

ExperimentReport cmd_verify_remainder(const AlphaSpec& alpha,
                                      const Amplitude& phi, int N,
                                      const GridSpec& grid, int empirical,
                                      const Tolerance& tol,
                                      const std::string& alpha_text,
                                      const std::string& amplitude_text) {
  if (empirical < 0)
    throw InvalidSpec("cmd_verify_remainder: empirical must be >= 0");
  ExperimentReport report;
  report.command = "verify-remainder";
  push_common(report, alpha_text, amplitude_text);
  report.parameters.push_back({"order", static_cast<long long>(N)});
  report.parameters.push_back(
      {"empirical", static_cast<long long>(empirical)});

  const long long conv = convergent_taylor_limit(alpha);
  const int taylor = default_taylor_orders(alpha, N);
  // Slope bar from the exponent lattice: the first singular exponent not
  // subtracted, capped by the first Taylor power past the exact ones.
  // Empirically fitted terms carry their own fit error of the same order,
  // so they do not move the bar.
  const double predicted =
      std::min(n_over_alpha(alpha, N + 1), static_cast<double>(taylor + 1));
  report.parameters.push_back(
      {"taylor_orders", static_cast<long long>(taylor)});
  report.parameters.push_back(
      {"remainder_order", remainder_order_exact(alpha, N)});
  report.parameters.push_back({"predicted_exponent", predicted});
  push_quad_tol(report, tol);
  report.tolerances.push_back({"slope_min", predicted - 0.3});

  std::vector<std::pair<int, Complex>> fitted;  // (power, coefficient)
  for (int j = 1; j <= empirical; ++j) {
    const int k = static_cast<int>(conv) + j;
    fitted.push_back({k, coeff_C_empirical(alpha, phi, k, kFitWindowLo,
                                           kFitWindowHi, Kind::oscillatory,
                                           tol)});
  }

  std::vector<std::pair<double, double>> pts;
  for (double t : geometric_grid(grid)) {
    const Complex rem =
        remainder(alpha, phi, N, Kind::oscillatory, t, tol);
    Complex corrected = rem;
    for (const auto& [k, c] : fitted)
      corrected -= c * std::pow(t, static_cast<double>(k));
    pts.push_back({t, std::abs(corrected)});
    Row row;
    row.push_back({"t", t});
    row.push_back({"abs_remainder", std::abs(rem)});
    row.push_back({"abs_corrected", std::abs(corrected)});
    report.rows.push_back(std::move(row));
  }

  try {
    const SlopeFit fit = slope_fit(pts);
    report.parameters.push_back({"fit_slope", fit.slope});
    report.parameters.push_back({"fit_r2", fit.r_squared});
    report.parameters.push_back(
        {"fit_points", static_cast<long long>(fit.points_used)});
    report.verdict =
        fit.slope >= predicted - 0.3 ? Verdict::pass : Verdict::fail;
  } catch (const InsufficientPoints&) {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

ExperimentReport cmd_verify_decay(const AlphaSpec& alpha, const Amplitude& phi,
                                  const GridSpec& grid, const Tolerance& tol,
                                  const std::string& alpha_text,
                                  const std::string& amplitude_text) {
  ExperimentReport report;
  report.command = "verify-decay";
  push_common(report, alpha_text, amplitude_text);
  report.parameters.push_back({"tmin", grid.tmin});
  report.parameters.push_back({"tmax", grid.tmax});
  report.parameters.push_back({"points", static_cast<long long>(grid.points)});
  push_quad_tol(report, tol);
  static constexpr double kSlopeMax = -3.0;
  report.tolerances.push_back({"slope_max", kSlopeMax});

  if (grid.tmin < 1.0) {
    // Decay is an asymptotic claim; a window reaching below t = 1 says
    // nothing about it.
    report.verdict = Verdict::inconclusive;
    return report;
  }

  std::vector<std::pair<double, double>> pts;
  for (double t : geometric_grid(grid)) {
    const QuadResult o = oracle_I(alpha.as_double(), phi, t, tol);
    const double mag = std::abs(o.value);
    pts.push_back({t, mag});
    Row row;
    row.push_back({"t", t});
    row.push_back({"abs_I", mag});
    row.push_back({"converged", o.converged});
    report.rows.push_back(std::move(row));
  }

  try {
    const SlopeFit fit = slope_fit(pts);
    report.parameters.push_back({"fit_slope", fit.slope});
    report.parameters.push_back({"fit_r2", fit.r_squared});
    report.parameters.push_back(
        {"fit_points", static_cast<long long>(fit.points_used)});
    report.verdict =
        fit.slope <= kSlopeMax ? Verdict::pass : Verdict::fail;
  } catch (const InsufficientPoints&) {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

ExperimentReport cmd_laplace(const AlphaSpec& alpha, const Amplitude& phi,
                             int N, const GridSpec& grid, const Tolerance& tol,
                             const std::string& alpha_text,
                             const std::string& amplitude_text) {
  ExperimentReport report;
  report.command = "laplace";
  push_common(report, alpha_text, amplitude_text);
  report.parameters.push_back({"order", static_cast<long long>(N)});

  const RegimeTarget target = laplace_target(alpha, phi, tol);
  const Complex c0 = coeff_C_laplace(alpha, phi, 0, tol);
  report.parameters.push_back({"regime", regime_name(target.regime)});
  report.parameters.push_back({"normalizer", target.normalizer});
  report.parameters.push_back({"constant", target.constant.real()});
  report.parameters.push_back({"tmin", grid.tmin});
  report.parameters.push_back({"tmax", grid.tmax});
  report.parameters.push_back({"points", static_cast<long long>(grid.points)});
  push_quad_tol(report, tol);
  report.tolerances.push_back({"deviation_max", target.bar});
  if (target.regime == Regime::one)
    report.tolerances.push_back({"monotone_required", true});
  report.tolerances.push_back({"imag_exactly_zero", true});

  bool all_real = c0.imag() == 0.0;
  bool all_converged = true;

  // t = 0 first: the oracle and C0 are the same moment computation, so
  // the difference is exactly zero.
  {
    const QuadResult o = oracle_L(alpha.as_double(), phi, 0.0, tol);
    all_real = all_real && o.value.imag() == 0.0;
    all_converged = all_converged && o.converged;
    Row row;
    row.push_back({"t", 0.0});
    row.push_back({"value", o.value.real()});
    row.push_back({"ratio", 0.0});
    row.push_back({"deviation", std::abs(o.value.real() - c0.real())});
    row.push_back({"abs_residual", std::abs(o.value.real() - c0.real())});
    row.push_back({"converged", o.converged});
    report.rows.push_back(std::move(row));
  }

  std::vector<double> ts = geometric_grid(grid);
  std::reverse(ts.begin(), ts.end());

  const double cmag = std::abs(target.constant.real());
  std::vector<double> deviations;
  std::vector<std::pair<double, double>> residual_pts;
  for (double t : ts) {
    const QuadResult o = oracle_L(alpha.as_double(), phi, t, tol);
    all_real = all_real && o.value.imag() == 0.0;
    all_converged = all_converged && o.converged;
    const double nu = normalizer_value(target.regime, alpha, t);
    const double ratio = (o.value.real() - c0.real()) / nu;
    const double dev = cmag > 0.0
                           ? std::abs(ratio - target.constant.real()) / cmag
                           : std::abs(ratio - target.constant.real());
    const double resid =
        std::abs(o.value.real() - c0.real() - target.constant.real() * nu);
    deviations.push_back(dev);
    residual_pts.push_back({t, resid});
    Row row;
    row.push_back({"t", t});
    row.push_back({"value", o.value.real()});
    row.push_back({"ratio", ratio});
    row.push_back({"deviation", dev});
    row.push_back({"abs_residual", resid});
    row.push_back({"converged", o.converged});
    report.rows.push_back(std::move(row));
  }

  // Residual growth order, informational: the ratio test is the verdict.
  try {
    const SlopeFit fit = slope_fit(residual_pts);
    report.parameters.push_back({"residual_slope", fit.slope});
    report.parameters.push_back({"residual_r2", fit.r_squared});
  } catch (const InsufficientPoints&) {
  }

  bool ok = all_real && !deviations.empty() && deviations.back() <= target.bar;
  if (target.regime == Regime::one)
    for (std::size_t i = 1; i < deviations.size(); ++i)
      if (!(deviations[i] < deviations[i - 1])) ok = false;
  report.verdict = !all_converged ? Verdict::inconclusive
                   : ok           ? Verdict::pass
                                  : Verdict::fail;
  return report;
}

}  // namespace oscint
