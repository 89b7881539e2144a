#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscint/commands.hpp"
#include "oscint/errors.hpp"

namespace {

oscint::AlphaSpec parse_alpha_text(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
      return oscint::alpha_rational(std::stoll(text), 1);
    return oscint::alpha_rational(std::stoll(text.substr(0, slash)),
                                  std::stoll(text.substr(slash + 1)));
  } catch (const oscint::Error&) {
    throw;
  } catch (const std::exception&) {
    throw oscint::ParseError("cannot parse --alpha '" + text +
                             "' (expected P or P/Q)");
  }
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw oscint::ParseError("cannot parse alpha value '" + item + "'");
    }
  }
  return out;
}

// --amplitude accepts inline JSON (leading '{'), a file path, or nothing
// for the built-in plateau with constant polynomial 1.
oscint::Amplitude resolve_amplitude(const std::string& text) {
  if (text.empty()) return oscint::default_amplitude();
  if (text.front() == '{') return oscint::amplitude_from_json(text);
  std::ifstream f(text);
  if (!f)
    throw oscint::ParseError("cannot read amplitude file '" + text + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return oscint::amplitude_from_json(ss.str());
}

int emit(const oscint::ExperimentReport& report, const std::string& format,
         const std::string& out_path) {
  const std::string text =
      format == "csv" ? oscint::to_csv(report) : oscint::to_json(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw oscint::ParseError("cannot open output file '" + out_path + "'");
    f << text;
  }
  return oscint::exit_code(report.verdict);
}

struct CommonOpts {
  std::string alpha_text = "1";
  double alpha_irr = 0.0;
  std::string amplitude_text;
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* sub, CommonOpts& opts, bool with_alpha = true) {
  if (with_alpha) {
    auto* a = sub->add_option("--alpha", opts.alpha_text,
                              "Exponent as P or P/Q (exact rational)");
    auto* b = sub->add_option("--alpha-irrational", opts.alpha_irr,
                              "Exponent declared irrational, as a value");
    a->excludes(b);
    b->excludes(a);
    sub->add_option("--amplitude", opts.amplitude_text,
                    "Amplitude as inline JSON or a file path "
                    "(default: plateau, value 1 on [0,1], 0 past 2)");
  }
  sub->add_option("--tol-abs", opts.tol_abs, "Quadrature absolute tolerance");
  sub->add_option("--tol-rel", opts.tol_rel, "Quadrature relative tolerance");
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", opts.out_path, "Write the report to a file");
}

oscint::AlphaSpec make_alpha(CLI::App* sub, const CommonOpts& opts,
                             std::string& echoed) {
  if (sub->count("--alpha-irrational")) {
    echoed = "irrational:" + oscint::fmt17(opts.alpha_irr);
    return oscint::alpha_irrational(opts.alpha_irr);
  }
  echoed = opts.alpha_text;
  return parse_alpha_text(opts.alpha_text);
}

std::string amplitude_echo(const CommonOpts& opts) {
  return opts.amplitude_text.empty() ? "default" : opts.amplitude_text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Small-t expansions and large-t decay of oscillatory integrals with "
      "a power singularity in the phase: coefficient tables, quadrature "
      "oracles, and verification experiments."};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* coeffs = app.add_subcommand(
      "coeffs",
      "Coefficient table for n = 0..N. Columns: n, A_re, A_im, B_re, B_im, "
      "A_hat_re, A_hat_im, B_hat_re, B_hat_im, C_re, C_im, C_defined.");
  int coeffs_order = 4;
  add_common(coeffs, opts);
  coeffs->add_option("--order", coeffs_order, "Highest order N");

  auto* eval = app.add_subcommand(
      "eval",
      "Oracle vs expansion at one t. Columns: t, oracle_re, oracle_im, "
      "oracle_err, oracle_converged, expansion_re, expansion_im, abs_diff.");
  int eval_order = 1;
  double eval_t = 0.0;
  add_common(eval, opts);
  eval->add_option("--order", eval_order, "Singular order N of the expansion");
  eval->add_option("--t", eval_t, "Evaluation point (any sign)")->required();

  auto* fresnel = app.add_subcommand(
      "verify-fresnel",
      "Oracle vs closed form for the generalized Fresnel integral. Columns: "
      "alpha, sign, oracle_re, oracle_im, closed_re, closed_im, rel_err, "
      "converged.");
  std::string fresnel_alphas = "0.25,0.4,0.5,0.6,0.75";
  add_common(fresnel, opts, /*with_alpha=*/false);
  fresnel->add_option("--alphas", fresnel_alphas,
                      "Comma-separated exponents in (0,1)");

  auto* limits = app.add_subcommand(
      "verify-limits",
      "Small-t limit of (I(t)-C0)/normalizer vs the predicted constant. "
      "Columns: t, ratio_re, ratio_im, deviation, converged.");
  oscint::GridSpec limits_grid{1e-6, 1e-2, 5};
  add_common(limits, opts);
  limits->add_option("--tmin", limits_grid.tmin, "Smallest t");
  limits->add_option("--tmax", limits_grid.tmax, "Largest t");
  limits->add_option("--points", limits_grid.points, "Grid points");

  auto* rem = app.add_subcommand(
      "verify-remainder",
      "Growth order of the expansion remainder. Columns: t, abs_remainder, "
      "abs_corrected.");
  oscint::GridSpec rem_grid{1e-6, 1e-3, 10};
  int rem_order = 1;
  int rem_empirical = 0;
  add_common(rem, opts);
  rem->add_option("--order", rem_order, "Singular order N");
  rem->add_option("--tmin", rem_grid.tmin, "Smallest t");
  rem->add_option("--tmax", rem_grid.tmax, "Largest t");
  rem->add_option("--points", rem_grid.points, "Grid points");
  rem->add_option("--empirical", rem_empirical,
                  "Fitted Taylor terms to subtract past the convergent ones");

  auto* decay = app.add_subcommand(
      "verify-decay",
      "Large-t decay order of |I(t)|. Columns: t, abs_I, converged.");
  oscint::GridSpec decay_grid{1e2, 1e4, 9};
  add_common(decay, opts);
  decay->add_option("--tmin", decay_grid.tmin, "Smallest t (must be >= 1)");
  decay->add_option("--tmax", decay_grid.tmax, "Largest t");
  decay->add_option("--points", decay_grid.points, "Grid points");

  auto* laplace = app.add_subcommand(
      "laplace",
      "Laplace-kind limit and residual checks with a t = 0 row. Columns: t, "
      "value, ratio, deviation, abs_residual, converged.");
  oscint::GridSpec laplace_grid{1e-6, 1e-2, 5};
  int laplace_order = 1;
  add_common(laplace, opts);
  laplace->add_option("--order", laplace_order, "Singular order N");
  laplace->add_option("--tmin", laplace_grid.tmin, "Smallest t");
  laplace->add_option("--tmax", laplace_grid.tmax, "Largest t");
  laplace->add_option("--points", laplace_grid.points, "Grid points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage errors are exit 1 regardless of CLI11's own code
  }

  try {
    const oscint::Tolerance tol{opts.tol_abs, opts.tol_rel};
    if (fresnel->parsed()) {
      return emit(
          oscint::cmd_verify_fresnel(parse_alpha_list(fresnel_alphas), tol),
          opts.format, opts.out_path);
    }

    const oscint::Amplitude phi = resolve_amplitude(opts.amplitude_text);
    const std::string phi_echo = amplitude_echo(opts);

    if (coeffs->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(coeffs, opts, alpha_echo);
      return emit(oscint::cmd_coeffs(alpha, phi, coeffs_order, tol,
                                     alpha_echo, phi_echo),
                  opts.format, opts.out_path);
    }
    if (eval->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(eval, opts, alpha_echo);
      return emit(oscint::cmd_eval(alpha, phi, eval_t, eval_order, tol,
                                   alpha_echo, phi_echo),
                  opts.format, opts.out_path);
    }
    if (limits->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(limits, opts, alpha_echo);
      return emit(oscint::cmd_verify_limits(alpha, phi, limits_grid, tol,
                                            alpha_echo, phi_echo),
                  opts.format, opts.out_path);
    }
    if (rem->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(rem, opts, alpha_echo);
      return emit(
          oscint::cmd_verify_remainder(alpha, phi, rem_order, rem_grid,
                                       rem_empirical, tol, alpha_echo,
                                       phi_echo),
          opts.format, opts.out_path);
    }
    if (decay->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(decay, opts, alpha_echo);
      return emit(oscint::cmd_verify_decay(alpha, phi, decay_grid, tol,
                                           alpha_echo, phi_echo),
                  opts.format, opts.out_path);
    }
    if (laplace->parsed()) {
      std::string alpha_echo;
      const oscint::AlphaSpec alpha = make_alpha(laplace, opts, alpha_echo);
      return emit(oscint::cmd_laplace(alpha, phi, laplace_order, laplace_grid,
                                      tol, alpha_echo, phi_echo),
                  opts.format, opts.out_path);
    }
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const oscint::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const oscint::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
