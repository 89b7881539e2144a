#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oscint {

// Shortest round-trip-safe decimal form (%.17g). All serialized doubles in
// the project go through this one function so outputs are byte-identical
// across runs.
std::string fmt17(double v);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

// Least squares of log(value) on log(t). Points with nonpositive or
// nonfinite entries are dropped first; fewer than 3 survivors throws
// InsufficientPoints. r_squared is clamped to [0,1] and a flat series
// counts as a perfect fit.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);

enum class Verdict { pass, fail, inconclusive };

int exit_code(Verdict v);              // pass 0, fail 2, inconclusive 3
std::string to_string(Verdict v);

using Cell = std::variant<double, long long, std::string, bool>;
using KeyValue = std::pair<std::string, Cell>;
using Row = std::vector<KeyValue>;

// One experiment = parameters in, rows of measurements out, one verdict.
// Key order is the insertion order everywhere; all rows share a schema.
struct ExperimentReport {
  std::string command;
  std::vector<KeyValue> parameters;
  std::vector<Row> rows;
  Verdict verdict = Verdict::inconclusive;
  std::vector<KeyValue> tolerances;
};

std::string to_json(const ExperimentReport& report);

// CSV: '#'-prefixed metadata lines (command, parameters, tolerances,
// verdict), then a header row, then data rows.
std::string to_csv(const ExperimentReport& report);

}  // namespace oscint
