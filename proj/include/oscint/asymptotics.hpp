#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscint/amplitude.hpp"
#include "oscint/quadrature.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

// Exact rational, normalized to lowest terms with den > 0.
struct Rational {
  long long num = 0;
  long long den = 1;
};

Rational make_rational(long long num, long long den);
double to_double(const Rational& r);
bool operator==(const Rational& a, const Rational& b);

// The exponent alpha, rational by declaration (never inferred from a
// float). Every exactness question -- which coefficient family owns order
// n, where log terms sit, what the remainder order is -- is answered in
// integer arithmetic when the declaration is rational.
struct AlphaSpec {
  bool is_rational = true;
  long long p = 1;     // alpha = p/q in lowest terms when rational
  long long q = 1;
  double irr = 0.0;    // the declared value when irrational

  double as_double() const {
    return is_rational ? static_cast<double>(p) / static_cast<double>(q) : irr;
  }
};

AlphaSpec alpha_rational(long long p, long long q);
AlphaSpec alpha_irrational(double value);

// n*q/p as a single-rounded double (or n/irr); every formula that needs
// n/alpha in floating point goes through here so the rounding is shared.
double n_over_alpha(const AlphaSpec& alpha, long long n);

// n/alpha as an exact integer when alpha = p/q divides n, otherwise empty.
// Irrational alpha never divides.
std::optional<long long> integer_ratio(const AlphaSpec& alpha, long long n);

// Largest k with alpha*k < 1, i.e. the last convergent Taylor moment.
long long convergent_taylor_limit(const AlphaSpec& alpha);

// ceil((N+1)/alpha) - 1, computed in integers for rational alpha.
long long remainder_order_exact(const AlphaSpec& alpha, int N);

// Oscillatory fractional-power coefficient at order n (zero exactly when
// n/alpha is an integer): the phased form of coeff_A_hat.
Complex coeff_A(const AlphaSpec& alpha, const Amplitude& phi, int n);

// Oscillatory log coefficient at order n (zero unless n/alpha = m is an
// integer): -(1/alpha) phi^{(n-1)}(0)/(n-1)! i^m / m!.
Complex coeff_B(const AlphaSpec& alpha, const Amplitude& phi, int n);

// The reindexed log coefficient at lattice index m (so order n = p*m),
// written independently of coeff_B but with the same operation order:
// the two must agree bit for bit.
Complex coeff_B_check(const AlphaSpec& alpha, const Amplitude& phi, int m);

// Laplace counterparts: coeff_A without the phase, coeff_B without the
// i^m factor. Both real.
Complex coeff_A_hat(const AlphaSpec& alpha, const Amplitude& phi, int n);
Complex coeff_B_hat(const AlphaSpec& alpha, const Amplitude& phi, int n);

// Convergent Taylor coefficient i^n int_0^R phi(x) x^{-alpha n} dx.
// Throws DivergentIntegral past convergent_taylor_limit.
Complex coeff_C(const AlphaSpec& alpha, const Amplitude& phi, int n,
                const Tolerance& tol);

// Laplace variant: (-1)^n in place of i^n. Real.
Complex coeff_C_laplace(const AlphaSpec& alpha, const Amplitude& phi, int n,
                        const Tolerance& tol);

struct FitDiag {
  double condition = 0.0;
  double rms_residual = 0.0;
};

// Divergent-moment Taylor coefficient recovered numerically: fit
// t^k monomials to the oracle minus everything known in closed form, on a
// geometric t-window. Throws InvalidSpec when the order is closed-form
// convergent and IllConditionedFit when the window cannot separate the
// basis. Defaults for the window live in kFitWindowLo/Hi.
inline constexpr double kFitWindowLo = 1e-6;
inline constexpr double kFitWindowHi = 1e-3;

enum class Kind { oscillatory, laplace };

Complex coeff_C_empirical(const AlphaSpec& alpha, const Amplitude& phi, int n,
                          double window_lo, double window_hi, Kind kind,
                          const Tolerance& tol, FitDiag* diag = nullptr);

// One term of a small-t expansion: coeff * t^exponent * (log t)^log_power.
// The exponent carries its exact rational form whenever one is known.
struct ExpansionTerm {
  Complex coeff{0.0, 0.0};
  bool exp_exact = false;
  Rational exp_rat{};
  double exp_value = 0.0;
  int log_power = 0;
};

struct Expansion {
  AlphaSpec alpha{};
  Kind kind = Kind::oscillatory;
  int order_N = 0;
  int taylor_orders = 0;
  long long remainder_order = 0;
  std::vector<ExpansionTerm> terms;  // ascending exponent, plain before log
};

// Leading singular behaviour of F_p at small t: a t^p term, which is
// -i^p/p! t^p log t at integer p >= 0 and Gamma(-p) e^{-i pi p/2} t^p
// otherwise.
ExpansionTerm singular_part_F(double p);

// Assemble the expansion through singular order N plus Taylor orders
// 0..taylor_orders (closed-form where convergent, fitted beyond). Throws
// OrderTooHigh when taylor_orders > 0 reaches the remainder order, since
// such terms are indistinguishable from the remainder.
Expansion build_expansion(const AlphaSpec& alpha, const Amplitude& phi, int N,
                          Kind kind, int taylor_orders, const Tolerance& tol);

enum class Branch { positive_axis, negative_axis };

// Evaluate at t != 0. On the negative axis t^e means e^{i pi e} |t|^e and
// log t means log |t|; asking for the wrong branch throws DomainError.
Complex eval_expansion(const Expansion& expansion, double t, Branch branch);

// oracle minus expansion, with the default Taylor depth (one below the
// remainder order, capped at the convergent limit) unless overridden.
// remainder(0) is exactly zero: oracle and expansion meet at C_0 by
// construction.
Complex remainder(const AlphaSpec& alpha, const Amplitude& phi, int N,
                  Kind kind, double t, const Tolerance& tol,
                  int taylor_orders = -1);

enum class Regime { sub_one, one, super_one };

// The constant c and normalizer nu(t) with (I(t) - I(0))/nu(t) -> c.
struct LimitConstant {
  Regime regime = Regime::one;
  Complex constant{0.0, 0.0};
  std::string normalizer;
};

LimitConstant limit_constant(const AlphaSpec& alpha, const Amplitude& phi,
                             const Tolerance& tol);

// Deterministic serialization (fixed key order, 17 significant digits).
std::string expansion_to_json(const Expansion& expansion);

}  // namespace oscint
