#include "cli/csv_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "ou/errors.hpp"

namespace ou::cli {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!line.empty() && line.back() == sep) parts.emplace_back();
  return parts;
}

// Value following `key=` in a space-separated comment line.
double footer_value(const std::string& line, const std::string& key) {
  const std::string needle = key + "=";
  const auto pos = line.find(needle);
  if (pos == std::string::npos) throw DomainError("csv footer is missing " + key);
  const auto start = pos + needle.size();
  const auto end = line.find(' ', start);
  return parse_double(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  if (text.empty()) throw DomainError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << kSweepHeader << '\n';
  for (const SweepRow& r : result.rows) {
    os << format_double(r.cb_norm) << ',' << format_double(r.log_lhs) << ','
       << format_double(r.log_gamma_b) << ',' << format_double(r.log_implied_constant) << '\n';
  }
  if (!result.complete) os << "# incomplete: " << result.failure << '\n';
  os << "# fitted_slope=" << format_double(result.fitted_slope)
     << " predicted_slope=" << format_double(result.predicted_slope)
     << " rel_err=" << format_double(result.slope_rel_error) << '\n';
}

SweepResult read_sweep_csv(std::istream& is) {
  SweepResult result;
  std::string line;
  bool header_seen = false;
  bool footer_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# incomplete: ", 0) == 0) {
        result.complete = false;
        result.failure = line.substr(14);
      } else if (line.find("fitted_slope=") != std::string::npos) {
        result.fitted_slope = footer_value(line, "fitted_slope");
        result.predicted_slope = footer_value(line, "predicted_slope");
        result.slope_rel_error = footer_value(line, "rel_err");
        footer_seen = true;
      }
      continue;
    }
    if (!header_seen) {
      if (line != kSweepHeader) throw DomainError("unexpected sweep header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4) throw DomainError("sweep row needs 4 fields: " + line);
    result.rows.push_back(
        {parse_double(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3])});
  }
  if (!header_seen || !footer_seen) throw DomainError("sweep csv is missing header or footer");
  return result;
}

void write_regime_csv(std::ostream& os, const RegimeMap& map) {
  os << kRegimeHeader << '\n';
  for (const RegimeCell& c : map.cells) {
    os << format_double(c.p) << ',' << format_double(c.q) << ',' << format_double(c.t) << ','
       << format_double(c.t_star) << ',' << format_double(c.p_nelson) << ',' << to_string(c.regime)
       << '\n';
  }
  for (const SkippedCell& s : map.skipped) {
    os << "# skipped p=" << format_double(s.p) << " q=" << format_double(s.q)
       << " t=" << format_double(s.t) << ": " << s.reason << '\n';
  }
}

Regime regime_from_string(const std::string& name) {
  for (Regime r : {Regime::fails_restricted, Regime::holds_unrestricted,
                   Regime::conjectured_extension, Regime::unknown}) {
    if (to_string(r) == name) return r;
  }
  throw DomainError("unknown regime class: " + name);
}

RegimeMap read_regime_csv(std::istream& is) {
  RegimeMap map;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kRegimeHeader) throw DomainError("unexpected regime header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw DomainError("regime row needs 6 fields: " + line);
    RegimeCell c;
    c.p = parse_double(f[0]);
    c.q = parse_double(f[1]);
    c.t = parse_double(f[2]);
    c.t_star = parse_double(f[3]);
    c.p_nelson = parse_double(f[4]);
    c.regime = regime_from_string(f[5]);
    map.cells.push_back(c);
  }
  if (!header_seen) throw DomainError("regime csv is missing its header");
  return map;
}

}  // namespace ou::cli
