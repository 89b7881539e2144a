#include "oscint/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>

#include "oscint/errors.hpp"
#include "oscint/report.hpp"

namespace oscint {

namespace {

constexpr Complex kIPow[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

// alpha * n as a single-rounded double; the moment exponent of coeff_C.
double alpha_times(const AlphaSpec& a, long long n) {
  return a.is_rational
             ? static_cast<double>(a.p * n) / static_cast<double>(a.q)
             : a.irr * static_cast<double>(n);
}

long long ceil_div(long long num, long long den) {
  return (num + den - 1) / den;  // positive operands only
}

// Eigenvalue ratio of a small symmetric matrix by cyclic Jacobi rotations.
double condition_number(std::vector<double> m, int dim) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q)
        off = std::max(off, std::abs(m[p * dim + q]));
    if (off < 1e-18) break;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) {
        const double apq = m[p * dim + q];
        if (std::abs(apq) < 1e-18) continue;
        const double theta = (m[q * dim + q] - m[p * dim + p]) / (2.0 * apq);
        const double sgn = theta >= 0.0 ? 1.0 : -1.0;
        const double tt =
            sgn / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = tt * c;
        for (int k = 0; k < dim; ++k) {
          const double mkp = m[k * dim + p];
          const double mkq = m[k * dim + q];
          m[k * dim + p] = c * mkp - s * mkq;
          m[k * dim + q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < dim; ++k) {
          const double mpk = m[p * dim + k];
          const double mqk = m[q * dim + k];
          m[p * dim + k] = c * mpk - s * mqk;
          m[q * dim + k] = s * mpk + c * mqk;
        }
      }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double ev = m[k * dim + k];
    lo = std::min(lo, ev);
    hi = std::max(hi, ev);
  }
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

// In-place Gaussian elimination with partial pivoting; rhs overwritten by
// the solution. dim stays single digits here.
void solve_inplace(std::vector<double> m, int dim, std::vector<double>& rhs) {
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::abs(m[r * dim + col]) > std::abs(m[piv * dim + col])) piv = r;
    if (m[piv * dim + col] == 0.0)
      throw IllConditionedFit("coeff_C_empirical: singular normal equations");
    if (piv != col) {
      for (int k = 0; k < dim; ++k)
        std::swap(m[piv * dim + k], m[col * dim + k]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (int r = col + 1; r < dim; ++r) {
      const double f = m[r * dim + col] / m[col * dim + col];
      for (int k = col; k < dim; ++k) m[r * dim + k] -= f * m[col * dim + k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int col = dim - 1; col >= 0; --col) {
    double s = rhs[col];
    for (int k = col + 1; k < dim; ++k) s -= m[col * dim + k] * rhs[k];
    rhs[col] = s / m[col * dim + col];
  }
}

bool term_less(const ExpansionTerm& a, const ExpansionTerm& b) {
  if (a.exp_exact && b.exp_exact) {
    const long long lhs = a.exp_rat.num * b.exp_rat.den;
    const long long rhs = b.exp_rat.num * a.exp_rat.den;
    if (lhs != rhs) return lhs < rhs;
  } else if (a.exp_value != b.exp_value) {
    return a.exp_value < b.exp_value;
  }
  return a.log_power < b.log_power;  // plain term before log term
}

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw InvalidSpec("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(std::llabs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

double to_double(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}

AlphaSpec alpha_rational(long long p, long long q) {
  if (p < 1 || q < 1) throw InvalidSpec("alpha = p/q requires p, q >= 1");
  const Rational r = make_rational(p, q);
  AlphaSpec out;
  out.is_rational = true;
  out.p = r.num;
  out.q = r.den;
  return out;
}

AlphaSpec alpha_irrational(double value) {
  if (!std::isfinite(value) || !(value > 0.0))
    throw InvalidSpec("irrational alpha must be a positive finite value");
  AlphaSpec out;
  out.is_rational = false;
  out.irr = value;
  return out;
}

double n_over_alpha(const AlphaSpec& alpha, long long n) {
  return alpha.is_rational
             ? static_cast<double>(n * alpha.q) / static_cast<double>(alpha.p)
             : static_cast<double>(n) / alpha.irr;
}

std::optional<long long> integer_ratio(const AlphaSpec& alpha, long long n) {
  if (n < 1) throw InvalidSpec("integer_ratio: n must be >= 1");
  if (!alpha.is_rational) return std::nullopt;
  if (n % alpha.p != 0) return std::nullopt;
  return (n / alpha.p) * alpha.q;
}

long long convergent_taylor_limit(const AlphaSpec& alpha) {
  if (alpha.is_rational) return ceil_div(alpha.q, alpha.p) - 1;
  return static_cast<long long>(std::ceil(1.0 / alpha.irr)) - 1;
}

long long remainder_order_exact(const AlphaSpec& alpha, int N) {
  if (N < 0) throw InvalidSpec("remainder_order_exact: N must be >= 0");
  const long long n1 = static_cast<long long>(N) + 1;
  if (alpha.is_rational) return ceil_div(n1 * alpha.q, alpha.p) - 1;
  return static_cast<long long>(
             std::ceil(static_cast<double>(n1) / alpha.irr)) -
         1;
}

Complex coeff_A_hat(const AlphaSpec& alpha, const Amplitude& phi, int n) {
  if (n < 1) throw InvalidSpec("coeff_A_hat: n must be >= 1");
  if (integer_ratio(alpha, n)) return {0.0, 0.0};
  const double jet_ratio = jet_at_zero(phi, n - 1) / factorial(n - 1);
  const double val =
      jet_ratio * gamma(-n_over_alpha(alpha, n)) / alpha.as_double();
  return {val, 0.0};
}

Complex coeff_A(const AlphaSpec& alpha, const Amplitude& phi, int n) {
  if (n < 1) throw InvalidSpec("coeff_A: n must be >= 1");
  if (integer_ratio(alpha, n)) return {0.0, 0.0};
  // The Laplace coefficient times the unit phase, multiplicatively, so the
  // kinship between the two families is exact in floating point.
  return coeff_A_hat(alpha, phi, n) *
         unit_phase(-0.5 * std::numbers::pi * n_over_alpha(alpha, n));
}

Complex coeff_B(const AlphaSpec& alpha, const Amplitude& phi, int n) {
  if (n < 1) throw InvalidSpec("coeff_B: n must be >= 1");
  const auto m = integer_ratio(alpha, n);
  if (!m) return {0.0, 0.0};
  const double pref =
      -static_cast<double>(alpha.q) / static_cast<double>(alpha.p);
  const double base = pref * (jet_at_zero(phi, n - 1) / factorial(n - 1));
  const double mag = base / factorial(static_cast<int>(*m));
  return mag * kIPow[*m % 4];
}

Complex coeff_B_check(const AlphaSpec& alpha, const Amplitude& phi, int m) {
  if (!alpha.is_rational)
    throw InvalidSpec("coeff_B_check: requires rational alpha");
  if (m < 1) throw InvalidSpec("coeff_B_check: m must be >= 1");
  // Reindexed form: order n = p*m carries the log coefficient with
  // n/alpha = q*m. Same operation order as coeff_B on purpose: the two
  // must agree bit for bit.
  const long long n = alpha.p * m;
  const long long qm = alpha.q * m;
  const double pref =
      -static_cast<double>(alpha.q) / static_cast<double>(alpha.p);
  const double base =
      pref * (jet_at_zero(phi, static_cast<int>(n - 1)) /
              factorial(static_cast<int>(n - 1)));
  const double mag = base / factorial(static_cast<int>(qm));
  return mag * kIPow[qm % 4];
}

Complex coeff_B_hat(const AlphaSpec& alpha, const Amplitude& phi, int n) {
  if (n < 1) throw InvalidSpec("coeff_B_hat: n must be >= 1");
  const auto m = integer_ratio(alpha, n);
  if (!m) return {0.0, 0.0};
  const double pref =
      -static_cast<double>(alpha.q) / static_cast<double>(alpha.p);
  const double base = pref * (jet_at_zero(phi, n - 1) / factorial(n - 1));
  const double mag = base / factorial(static_cast<int>(*m));
  return {mag, 0.0};
}

Complex coeff_C(const AlphaSpec& alpha, const Amplitude& phi, int n,
                const Tolerance& tol) {
  if (n < 0) throw InvalidSpec("coeff_C: n must be >= 0");
  if (n > convergent_taylor_limit(alpha))
    throw DivergentIntegral("coeff_C: moment diverges for order " +
                            std::to_string(n));
  const QuadResult m = moment_integral(phi, alpha_times(alpha, n), tol);
  return m.value.real() * kIPow[n % 4];
}

Complex coeff_C_laplace(const AlphaSpec& alpha, const Amplitude& phi, int n,
                        const Tolerance& tol) {
  if (n < 0) throw InvalidSpec("coeff_C_laplace: n must be >= 0");
  if (n > convergent_taylor_limit(alpha))
    throw DivergentIntegral("coeff_C_laplace: moment diverges for order " +
                            std::to_string(n));
  const QuadResult m = moment_integral(phi, alpha_times(alpha, n), tol);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return {sign * m.value.real(), 0.0};
}

Complex coeff_C_empirical(const AlphaSpec& alpha, const Amplitude& phi, int n,
                          double window_lo, double window_hi, Kind kind,
                          const Tolerance& tol, FitDiag* diag) {
  const long long conv = convergent_taylor_limit(alpha);
  if (n <= conv)
    throw InvalidSpec("coeff_C_empirical: order " + std::to_string(n) +
                      " is convergent; use coeff_C");
  if (!(window_lo > 0.0) || !(window_hi > window_lo))
    throw InvalidSpec("coeff_C_empirical: window must satisfy 0 < lo < hi");

  // Everything known in closed form: convergent Taylor orders plus all
  // singular terms whose exponent is within reach of the basis.
  std::vector<ExpansionTerm> known;
  for (long long k = 0; k <= conv; ++k) {
    const Complex c =
        kind == Kind::oscillatory
            ? coeff_C(alpha, phi, static_cast<int>(k), tol)
            : coeff_C_laplace(alpha, phi, static_cast<int>(k), tol);
    known.push_back({c, true, make_rational(k, 1), static_cast<double>(k), 0});
  }
  const double reach = static_cast<double>(n) + 2.5;
  for (long long s = 1; n_over_alpha(alpha, s) <= reach; ++s) {
    const auto m = integer_ratio(alpha, s);
    const Complex c =
        kind == Kind::oscillatory
            ? (m ? coeff_B(alpha, phi, static_cast<int>(s))
                 : coeff_A(alpha, phi, static_cast<int>(s)))
            : (m ? coeff_B_hat(alpha, phi, static_cast<int>(s))
                 : coeff_A_hat(alpha, phi, static_cast<int>(s)));
    if (c == Complex{0.0, 0.0}) continue;
    known.push_back({c, false, {}, n_over_alpha(alpha, s), m ? 1 : 0});
  }

  static constexpr int kPoints = 24;
  const int cols = static_cast<int>(n + 2 - conv);  // exponents conv+1..n+2
  std::vector<double> ts(kPoints);
  std::vector<Complex> resid(kPoints);
  const double ratio = window_hi / window_lo;
  for (int i = 0; i < kPoints; ++i) {
    const double t =
        window_lo * std::pow(ratio, static_cast<double>(i) / (kPoints - 1));
    ts[i] = t;
    const QuadResult o = kind == Kind::oscillatory
                             ? oracle_I(alpha.as_double(), phi, t, tol)
                             : oracle_L(alpha.as_double(), phi, t, tol);
    Complex r = o.value;
    const double lg = std::log(t);
    for (const auto& term : known)
      r -= term.coeff * std::pow(t, term.exp_value) *
           (term.log_power ? lg : 1.0);
    resid[i] = r;
  }

  // Column-equilibrated normal equations; conditioning read off the
  // eigenvalue spread of the scaled Gram matrix.
  std::vector<double> expn(cols);
  for (int j = 0; j < cols; ++j)
    expn[j] = static_cast<double>(conv + 1 + j);
  std::vector<double> design(kPoints * cols);
  std::vector<double> scale(cols);
  for (int j = 0; j < cols; ++j) {
    double ss = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      const double v = std::pow(ts[i], expn[j]);
      design[i * cols + j] = v;
      ss += v * v;
    }
    scale[j] = 1.0 / std::sqrt(ss);
  }
  std::vector<double> gram(cols * cols);
  for (int j = 0; j < cols; ++j)
    for (int k = 0; k < cols; ++k) {
      double s = 0.0;
      for (int i = 0; i < kPoints; ++i)
        s += design[i * cols + j] * design[i * cols + k];
      gram[j * cols + k] = s * scale[j] * scale[k];
    }
  const double cond = condition_number(gram, cols);
  if (!(cond < 1e12))
    throw IllConditionedFit("coeff_C_empirical: condition " + fmt17(cond));

  std::vector<double> rhs_re(cols), rhs_im(cols);
  for (int j = 0; j < cols; ++j) {
    Complex s{0.0, 0.0};
    for (int i = 0; i < kPoints; ++i) s += design[i * cols + j] * resid[i];
    rhs_re[j] = scale[j] * s.real();
    rhs_im[j] = scale[j] * s.imag();
  }
  solve_inplace(gram, cols, rhs_re);
  solve_inplace(gram, cols, rhs_im);

  std::vector<Complex> fitted(cols);
  for (int j = 0; j < cols; ++j)
    fitted[j] = Complex{rhs_re[j], rhs_im[j]} * scale[j];

  if (diag) {
    double ss = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      Complex model{0.0, 0.0};
      for (int j = 0; j < cols; ++j)
        model += fitted[j] * design[i * cols + j];
      ss += std::norm(resid[i] - model);
    }
    diag->condition = cond;
    diag->rms_residual = std::sqrt(ss / kPoints);
  }
  return fitted[static_cast<std::size_t>(n - conv - 1)];
}

ExpansionTerm singular_part_F(double p) {
  if (!(p > -1.0)) throw DomainError("singular_part_F: requires p > -1");
  ExpansionTerm term;
  if (p >= 0.0 && p == std::floor(p)) {
    const int ip = static_cast<int>(p);
    term.coeff = -kIPow[ip % 4] / factorial(ip);
    term.exp_exact = true;
    term.exp_rat = Rational{ip, 1};
    term.exp_value = p;
    term.log_power = 1;
  } else {
    term.coeff = gamma(-p) * unit_phase(-0.5 * std::numbers::pi * p);
    term.exp_exact = false;
    term.exp_value = p;
    term.log_power = 0;
  }
  return term;
}

Expansion build_expansion(const AlphaSpec& alpha, const Amplitude& phi, int N,
                          Kind kind, int taylor_orders, const Tolerance& tol) {
  if (N < 1) throw InvalidSpec("build_expansion: N must be >= 1");
  if (taylor_orders < 0)
    throw InvalidSpec("build_expansion: taylor_orders must be >= 0");

  Expansion out;
  out.alpha = alpha;
  out.kind = kind;
  out.order_N = N;
  out.taylor_orders = taylor_orders;
  out.remainder_order = remainder_order_exact(alpha, N);
  // Taylor orders at or past the remainder order are indistinguishable
  // from the remainder; the constant term alone is always legitimate.
  if (taylor_orders > 0 && taylor_orders >= out.remainder_order)
    throw OrderTooHigh("build_expansion: taylor_orders " +
                       std::to_string(taylor_orders) +
                       " reaches remainder order " +
                       std::to_string(out.remainder_order));

  const long long conv = convergent_taylor_limit(alpha);
  for (int k = 0; k <= taylor_orders; ++k) {
    const Complex c =
        k <= conv
            ? (kind == Kind::oscillatory
                   ? coeff_C(alpha, phi, k, tol)
                   : coeff_C_laplace(alpha, phi, k, tol))
            : coeff_C_empirical(alpha, phi, k, kFitWindowLo, kFitWindowHi,
                                kind, tol);
    if (c == Complex{0.0, 0.0}) continue;
    out.terms.push_back(
        {c, true, make_rational(k, 1), static_cast<double>(k), 0});
  }

  for (int n = 1; n <= N; ++n) {
    const auto m = integer_ratio(alpha, n);
    const Complex c =
        kind == Kind::oscillatory
            ? (m ? coeff_B(alpha, phi, n) : coeff_A(alpha, phi, n))
            : (m ? coeff_B_hat(alpha, phi, n) : coeff_A_hat(alpha, phi, n));
    if (c == Complex{0.0, 0.0}) continue;
    ExpansionTerm term;
    term.coeff = c;
    term.exp_value = n_over_alpha(alpha, n);
    term.log_power = m ? 1 : 0;
    if (alpha.is_rational) {
      term.exp_exact = true;
      term.exp_rat = make_rational(static_cast<long long>(n) * alpha.q,
                                   alpha.p);
    }
    out.terms.push_back(term);
  }

  std::stable_sort(out.terms.begin(), out.terms.end(), term_less);
  return out;
}

Complex eval_expansion(const Expansion& expansion, double t, Branch branch) {
  if (t == 0.0)
    throw DomainError(
        "eval_expansion: log divergence at t=0; use the limit value C0");
  if (t < 0.0 && branch != Branch::negative_axis)
    throw DomainError("eval_expansion: t < 0 requires the negative_axis branch");
  if (t > 0.0 && branch == Branch::negative_axis)
    throw DomainError("eval_expansion: negative_axis branch requires t < 0");

  const double at = std::abs(t);
  const double lg = std::log(at);
  Complex sum{0.0, 0.0};
  for (const auto& term : expansion.terms) {
    Complex v = term.coeff * std::pow(at, term.exp_value);
    if (t < 0.0) {
      // t^e = e^{i pi e} |t|^e on this branch; integer exponents reduce to
      // an exact sign.
      if (term.exp_exact && term.exp_rat.den == 1) {
        if (term.exp_rat.num % 2 != 0) v = -v;
      } else {
        v *= unit_phase(std::numbers::pi * term.exp_value);
      }
    }
    if (term.log_power == 1) v *= lg;  // log|t| on both branches
    sum += v;
  }
  return sum;
}

Complex remainder(const AlphaSpec& alpha, const Amplitude& phi, int N,
                  Kind kind, double t, const Tolerance& tol,
                  int taylor_orders) {
  // At 0 the oracle branch and the expansion's constant term are the same
  // moment computation, so the difference is zero by construction.
  if (t == 0.0) return {0.0, 0.0};
  if (taylor_orders < 0) {
    const long long ro = remainder_order_exact(alpha, N);
    taylor_orders = static_cast<int>(
        std::min(std::max(0LL, ro - 1), convergent_taylor_limit(alpha)));
  }
  const Expansion e =
      build_expansion(alpha, phi, N, kind, taylor_orders, tol);
  const QuadResult o = kind == Kind::oscillatory
                           ? oracle_I(alpha.as_double(), phi, t, tol)
                           : oracle_L(alpha.as_double(), phi, t, tol);
  const Branch branch =
      t < 0.0 ? Branch::negative_axis : Branch::positive_axis;
  return o.value - eval_expansion(e, t, branch);
}

LimitConstant limit_constant(const AlphaSpec& alpha, const Amplitude& phi,
                             const Tolerance& tol) {
  const bool below_one =
      alpha.is_rational ? alpha.p < alpha.q : alpha.irr < 1.0;
  const bool exactly_one = alpha.is_rational && alpha.p == alpha.q;
  LimitConstant out;
  if (exactly_one) {
    out.regime = Regime::one;
    out.constant = coeff_B(alpha, phi, 1);
    out.normalizer = "t*log(t)";
  } else if (below_one) {
    out.regime = Regime::sub_one;
    out.constant = coeff_C(alpha, phi, 1, tol);
    out.normalizer = "t";
  } else {
    out.regime = Regime::super_one;
    out.constant = coeff_A(alpha, phi, 1);
    out.normalizer = "t^(1/alpha)";
  }
  return out;
}

std::string expansion_to_json(const Expansion& expansion) {
  std::string out = "[";
  for (const auto& term : expansion.terms) {
    out += "{\"re\":" + fmt17(term.coeff.real()) +
           ",\"im\":" + fmt17(term.coeff.imag());
    if (term.exp_exact) {
      out += ",\"exp_num\":" + std::to_string(term.exp_rat.num) +
             ",\"exp_den\":" + std::to_string(term.exp_rat.den);
    } else {
      out += ",\"exp_value\":" + fmt17(term.exp_value);
    }
    out += ",\"log_power\":" + std::to_string(term.log_power) + "},";
  }
  out += "{\"remainder_order\":" + std::to_string(expansion.remainder_order) +
         ",\"kind\":\"" +
         (expansion.kind == Kind::oscillatory ? "oscillatory" : "laplace") +
         "\"}]";
  return out;
}

}  // namespace oscint
