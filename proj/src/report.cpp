#include "oscint/report.hpp"

#include <cmath>
#include <cstdio>

#include "oscint/errors.hpp"

namespace oscint {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [t, v] : points) {
    if (!(t > 0.0) || !(v > 0.0) || !std::isfinite(t) || !std::isfinite(v))
      continue;
    logs.emplace_back(std::log(t), std::log(v));
  }
  if (logs.size() < 3)
    throw InsufficientPoints("slope_fit: need at least 3 positive points");

  const double n = static_cast<double>(logs.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0)
    throw InsufficientPoints("slope_fit: all abscissae coincide");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = static_cast<int>(logs.size());
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // flat series: the fit explains everything
  } else {
    const double r2 = (sxy * sxy) / (sxx * syy);
    fit.r_squared = std::min(1.0, std::max(0.0, r2));
  }
  return fit;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return 0;
    case Verdict::fail:
      return 2;
    case Verdict::inconclusive:
      return 3;
  }
  return 3;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  out += '"';
}

void append_cell_json(std::string& out, const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    out += fmt17(*d);
  } else if (const auto* i = std::get_if<long long>(&cell)) {
    out += std::to_string(*i);
  } else if (const auto* s = std::get_if<std::string>(&cell)) {
    append_escaped(out, *s);
  } else {
    out += std::get<bool>(cell) ? "true" : "false";
  }
}

void append_cell_plain(std::string& out, const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    out += fmt17(*d);
  } else if (const auto* i = std::get_if<long long>(&cell)) {
    out += std::to_string(*i);
  } else if (const auto* s = std::get_if<std::string>(&cell)) {
    out += *s;
  } else {
    out += std::get<bool>(cell) ? "true" : "false";
  }
}

void append_map_json(std::string& out, const std::vector<KeyValue>& kv) {
  out += '{';
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) out += ',';
    first = false;
    append_escaped(out, k);
    out += ':';
    append_cell_json(out, v);
  }
  out += '}';
}

}  // namespace

std::string to_json(const ExperimentReport& report) {
  std::string out;
  out += "{\"command\":";
  append_escaped(out, report.command);
  out += ",\"parameters\":";
  append_map_json(out, report.parameters);
  out += ",\"rows\":[";
  bool first = true;
  for (const auto& row : report.rows) {
    if (!first) out += ',';
    first = false;
    append_map_json(out, row);
  }
  out += "],\"verdict\":";
  append_escaped(out, to_string(report.verdict));
  out += ",\"tolerances\":";
  append_map_json(out, report.tolerances);
  out += "}\n";
  return out;
}

std::string to_csv(const ExperimentReport& report) {
  std::string out;
  out += "# command: " + report.command + "\n";
  for (const auto& [k, v] : report.parameters) {
    out += "# parameter " + k + " = ";
    append_cell_plain(out, v);
    out += '\n';
  }
  for (const auto& [k, v] : report.tolerances) {
    out += "# tolerance " + k + " = ";
    append_cell_plain(out, v);
    out += '\n';
  }
  out += "# verdict: " + to_string(report.verdict) + "\n";
  if (report.rows.empty()) return out;
  bool first = true;
  for (const auto& [k, v] : report.rows.front()) {
    if (!first) out += ',';
    first = false;
    out += k;
  }
  out += '\n';
  for (const auto& row : report.rows) {
    first = true;
    for (const auto& [k, v] : row) {
      if (!first) out += ',';
      first = false;
      append_cell_plain(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace oscint
