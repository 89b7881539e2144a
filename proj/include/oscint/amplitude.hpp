#pragma once

#include <functional>
#include <string>
#include <vector>

namespace oscint {

// Bounds of a smooth plateau/rising cutoff. For the falling (amplitude)
// form the function is 1 on [0, inner] and 0 beyond outer; the rising form
// used by the F_p family is its mirror (0 below inner, 1 above outer).
struct CutoffSpec {
  double inner = 1.0;
  double outer = 2.0;
};

// Throws InvalidSpec unless 0 < inner < outer.
void validate(const CutoffSpec& spec);

// Falling plateau cutoff: 1 for x <= inner, 0 for x >= outer, and
// s(u) = h(u)/(h(u)+h(1-u)) with h(u) = exp(-1/u), u = (outer-x)/(outer-inner)
// in between. C-infinity in exact arithmetic.
double plateau_cutoff(double x, const CutoffSpec& spec);

// Rising mirror: 0 for x <= inner, 1 for x >= outer.
double rising_cutoff(double x, const CutoffSpec& spec);

// A smooth amplitude supported in [0, support_radius] whose derivatives at 0
// are known exactly. Immutable after construction. cutoff_inner is the x
// below which the cutoff factor no longer varies (the plateau boundary);
// the oscillatory oracle uses it to size its tail segments.
class Amplitude {
 public:
  Amplitude(std::function<double(double)> evaluator, std::vector<double> jet,
            double support_radius, double cutoff_inner);

  double operator()(double x) const { return evaluator_(x); }
  const std::vector<double>& jet() const { return jet_; }
  double support_radius() const { return support_radius_; }
  double cutoff_inner() const { return cutoff_inner_; }

 private:
  std::function<double(double)> evaluator_;
  std::vector<double> jet_;  // jet_[n] = phi^{(n)}(0)
  double support_radius_;
  double cutoff_inner_;
};

// P(x) * plateau_cutoff(x, spec) with P(x) = sum coeffs[k] x^k. The cutoff is
// identically 1 near 0, so jet[n] = n! * coeffs[n] exactly (0 past the
// degree), up to jet_length-1 derivatives. Throws InvalidSpec on a bad spec
// or jet_length < 1.
Amplitude make_poly_plateau(const std::vector<double>& coeffs,
                            const CutoffSpec& spec, int jet_length = 32);

// phi^{(n)}(0). Throws JetExhausted when n is past the constructed jet.
double jet_at_zero(const Amplitude& phi, int n);

// The running test amplitude: coeffs = [1], plateau on [0,1], support [0,2].
Amplitude default_amplitude();

// Poly-plateau (de)serialization: {"coeffs":[...], "inner":r, "outer":R}.
// Parsing throws ParseError on malformed JSON and InvalidSpec on bad values.
Amplitude amplitude_from_json(const std::string& text);
std::string amplitude_to_json(const std::vector<double>& coeffs,
                              const CutoffSpec& spec);

}  // namespace oscint
