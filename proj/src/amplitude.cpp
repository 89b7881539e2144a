#include "oscint/amplitude.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "oscint/errors.hpp"
#include "oscint/specfun.hpp"

namespace oscint {

namespace {

// h(u) = exp(-1/u) for u > 0, else 0: the C-infinity bump generator.
double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

void validate(const CutoffSpec& spec) {
  if (!(spec.inner > 0.0) || !(spec.inner < spec.outer))
    throw InvalidSpec("cutoff requires 0 < inner < outer");
}

double plateau_cutoff(double x, const CutoffSpec& spec) {
  validate(spec);
  if (x <= spec.inner) return 1.0;
  if (x >= spec.outer) return 0.0;
  const double u = (spec.outer - x) / (spec.outer - spec.inner);
  const double a = bump(u);
  const double b = bump(1.0 - u);
  // a + b > 0 on (0,1): the underflowed side is exactly 0, never both.
  return a / (a + b);
}

double rising_cutoff(double x, const CutoffSpec& spec) {
  return 1.0 - plateau_cutoff(x, spec);
}

Amplitude::Amplitude(std::function<double(double)> evaluator,
                     std::vector<double> jet, double support_radius,
                     double cutoff_inner)
    : evaluator_(std::move(evaluator)),
      jet_(std::move(jet)),
      support_radius_(support_radius),
      cutoff_inner_(cutoff_inner) {
  if (jet_.empty()) throw InvalidSpec("amplitude jet must not be empty");
  if (!(support_radius_ > 0.0))
    throw InvalidSpec("amplitude support radius must be positive");
  if (!(cutoff_inner_ > 0.0) || cutoff_inner_ > support_radius_)
    throw InvalidSpec("amplitude cutoff_inner must lie in (0, radius]");
}

Amplitude make_poly_plateau(const std::vector<double>& coeffs,
                            const CutoffSpec& spec, int jet_length) {
  validate(spec);
  if (jet_length < 1) throw InvalidSpec("jet_length must be >= 1");
  if (coeffs.empty()) throw InvalidSpec("poly-plateau needs coefficients");

  std::vector<double> jet(static_cast<size_t>(jet_length), 0.0);
  for (size_t n = 0; n < jet.size() && n < coeffs.size(); ++n)
    jet[n] = factorial(static_cast<int>(n)) * coeffs[n];

  CutoffSpec local = spec;
  std::vector<double> c = coeffs;
  auto eval = [c, local](double x) {
    double p = 0.0;
    for (size_t k = c.size(); k-- > 0;) p = p * x + c[k];
    return p * plateau_cutoff(x, local);
  };
  return Amplitude(eval, std::move(jet), spec.outer, spec.inner);
}

double jet_at_zero(const Amplitude& phi, int n) {
  if (n < 0) throw DomainError("jet_at_zero: negative derivative order");
  if (static_cast<size_t>(n) >= phi.jet().size())
    throw JetExhausted("jet_at_zero: order " + std::to_string(n) +
                       " exceeds constructed jet of length " +
                       std::to_string(phi.jet().size()));
  return phi.jet()[static_cast<size_t>(n)];
}

Amplitude default_amplitude() {
  return make_poly_plateau({1.0}, CutoffSpec{1.0, 2.0});
}

Amplitude amplitude_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("amplitude JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("coeffs") || !j.contains("inner") ||
      !j.contains("outer"))
    throw ParseError("amplitude JSON needs coeffs, inner, outer");
  std::vector<double> coeffs;
  try {
    coeffs = j.at("coeffs").get<std::vector<double>>();
    CutoffSpec spec{j.at("inner").get<double>(), j.at("outer").get<double>()};
    int jet_length = j.value("jet_length", 32);
    return make_poly_plateau(coeffs, spec, jet_length);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("amplitude JSON: ") + e.what());
  }
}

std::string amplitude_to_json(const std::vector<double>& coeffs,
                              const CutoffSpec& spec) {
  nlohmann::json j;
  j["coeffs"] = coeffs;
  j["inner"] = spec.inner;
  j["outer"] = spec.outer;
  return j.dump();
}

}  // namespace oscint
