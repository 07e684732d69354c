#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "cli/csv_io.hpp"
#include "cli/selftest.hpp"
#include "ou/errors.hpp"
#include "ou/estimates.hpp"
#include "ou/experiments.hpp"
#include "ou/measure.hpp"
#include "ou/mehler.hpp"

namespace ou::cli {

namespace {

using json = nlohmann::ordered_json;

// A flat record printed either as a two-line CSV table or as a JSON object.
using Field = std::variant<double, std::string, std::monostate>;
using Record = std::vector<std::pair<std::string, Field>>;

void write_record(std::ostream& os, const Record& rec, bool as_json,
                  const std::vector<std::string>& comments = {}) {
  if (as_json) {
    json j = json::object();
    for (const auto& [key, value] : rec) {
      if (const auto* d = std::get_if<double>(&value)) {
        j[key] = *d;
      } else if (const auto* s = std::get_if<std::string>(&value)) {
        j[key] = *s;
      } else {
        j[key] = nullptr;
      }
    }
    for (const auto& c : comments) j["notes"].push_back(c);
    os << j.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < rec.size(); ++i) os << (i ? "," : "") << rec[i].first;
  os << '\n';
  for (std::size_t i = 0; i < rec.size(); ++i) {
    os << (i ? "," : "");
    const Field& value = rec[i].second;
    if (const auto* d = std::get_if<double>(&value)) {
      os << format_double(*d);
    } else if (const auto* s = std::get_if<std::string>(&value)) {
      os << *s;
    }
  }
  os << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
}

Field linear_or_null(const LogNumber& v) {
  if (!v.representable()) return std::monostate{};
  return v.value();
}

void write_sweep_json(std::ostream& os, const SweepResult& r) {
  json j;
  j["rows"] = json::array();
  for (const SweepRow& row : r.rows) {
    j["rows"].push_back({{"cB_norm", row.cb_norm},
                         {"log_lhs", row.log_lhs},
                         {"log_gammaB", row.log_gamma_b},
                         {"log_implied_const", row.log_implied_constant}});
  }
  j["fitted_slope"] = r.fitted_slope;
  j["predicted_slope"] = r.predicted_slope;
  j["rel_err"] = r.slope_rel_error;
  j["complete"] = r.complete;
  if (!r.complete) j["failure"] = r.failure;
  os << j.dump(2) << '\n';
}

void write_regime_json(std::ostream& os, const RegimeMap& map) {
  json j;
  j["cells"] = json::array();
  for (const RegimeCell& c : map.cells) {
    j["cells"].push_back({{"p", c.p},
                          {"q", c.q},
                          {"t", c.t},
                          {"t_star", c.t_star},
                          {"p_nelson", c.p_nelson},
                          {"class", std::string(to_string(c.regime))}});
  }
  j["skipped"] = json::array();
  for (const SkippedCell& s : map.skipped) {
    j["skipped"].push_back({{"p", s.p}, {"q", s.q}, {"t", s.t}, {"reason", s.reason}});
  }
  os << j.dump(2) << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) values.push_back(parse_double(item));
  if (values.empty()) throw DomainError("empty coordinate list");
  return values;
}

}  // namespace

Point parse_point(const std::string& text) {
  const auto values = parse_list(text);
  return Point(std::span<const double>(values));
}

Ball parse_ball(const std::string& text) {
  const auto colon = text.find(':');
  const Point center = parse_point(text.substr(0, colon));
  if (colon == std::string::npos) return make_maximal_admissible_ball(center);
  return Ball(center, parse_double(text.substr(colon + 1)));
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw DomainError("grid needs at least one step");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw DomainError("grid bounds must be finite with min <= max");
  }
  if (steps == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
  v.back() = hi;
  return v;
}

QuadratureSpec default_quadrature_spec() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("OU_QUAD_TOL"); env != nullptr && *env != '\0') {
    try {
      spec.tol = parse_double(env);
    } catch (const DomainError&) {
      throw DomainError(std::string("OU_QUAD_TOL is not a number: ") + env);
    }
    spec.validate();
  }
  return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ou-offdiag");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ornstein-Uhlenbeck off-diagonal estimates: kernels, measures and sweeps",
               "ou-offdiag"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string output;
  std::optional<double> tol;
  int order = 16;
  int max_refinements = 12;
  std::uint64_t seed = 42;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", output, "Write to this file instead of stdout");
  app.add_option("--order", order, "Initial quadrature order")->check(CLI::Range(2, 1 << 20));
  app.add_option("--tol", tol, "Relative quadrature tolerance (overrides OU_QUAD_TOL)");
  app.add_option("--max-refinements", max_refinements, "Order doublings before giving up")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized checks");

  double t = 0.0;
  double p = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  int k = 1;
  int n = 1;
  double theta = 0.0;
  double c = 0.5;
  double mcintosh = 1.0;
  double distance = 0.0;
  double cmin = 0.0;
  double cmax = 0.0;
  int steps = 0;
  std::string x_text;
  std::string y_text;
  std::string ball_text;
  std::string annulus_text;

  auto* kernel = app.add_subcommand("kernel", "Mehler kernel M_t(x, y)");
  kernel->add_option("--t", t, "Semigroup time")->required();
  kernel->add_option("--x", x_text, "Point x1[,x2[,x3]]")->required();
  kernel->add_option("--y", y_text, "Point y1[,y2[,y3]]")->required();

  auto* gamma = app.add_subcommand("gamma", "Gaussian measure of a ball or annulus");
  auto* ball_opt = gamma->add_option("--ball", ball_text, "Ball x1[,x2[,x3]][:r]");
  auto* annulus_opt =
      gamma->add_option("--annulus", annulus_text, "Base ball of C_k(B), x1[,x2[,x3]][:r]");
  gamma->add_option("--k", k, "Annulus index")->check(CLI::NonNegativeNumber);
  ball_opt->excludes(annulus_opt);

  auto* apply = app.add_subcommand("apply", "e^{tL} 1_B (y) through the kernel");
  apply->add_option("--t", t, "Semigroup time")->required();
  apply->add_option("--ball", ball_text, "Ball x1[,x2[,x3]][:r]")->required();
  apply->add_option("--y", y_text, "Evaluation point")->required();

  auto* sweep = app.add_subcommand("sweep", "Implied off-diagonal constants over |c_B|");
  sweep->add_option("--t", t, "Semigroup time")->required();
  sweep->add_option("--p", p, "Source exponent")->required();
  sweep->add_option("--q", q, "Target exponent")->required();
  sweep->add_option("--k", k, "Annulus index (>= 1)");
  sweep->add_option("--n", n, "Dimension (1-3)");
  sweep->add_option("--theta", theta, "Template power of t");
  sweep->add_option("--c", c, "Template Gaussian decay constant");
  sweep->add_option("--cmin", cmin, "Smallest |c_B|")->required();
  sweep->add_option("--cmax", cmax, "Largest |c_B|")->required();
  sweep->add_option("--steps", steps, "Number of grid points")->required();
  bool serial = false;
  sweep->add_flag("--serial", serial, "Evaluate grid points one at a time");

  double pmin = 0.0;
  double pmax = 0.0;
  int psteps = 0;
  double qfixed = 2.0;
  double tmin = 0.0;
  double tmax = 0.0;
  int tsteps = 0;
  auto* regime = app.add_subcommand("regime", "Classify (p, q, t) cells");
  regime->add_option("--pmin", pmin)->required();
  regime->add_option("--pmax", pmax)->required();
  regime->add_option("--psteps", psteps)->required();
  regime->add_option("--qfixed", qfixed, "Target exponent q");
  regime->add_option("--tmin", tmin)->required();
  regime->add_option("--tmax", tmax)->required();
  regime->add_option("--tsteps", tsteps)->required();

  auto* hyper = app.add_subcommand("hypercheck", "Nelson ratio for f = exp(lambda x)");
  hyper->add_option("--t", t, "Semigroup time")->required();
  hyper->add_option("--p", p, "Exponent in (1, 2]")->required();
  hyper->add_option("--lambda", lambda, "Exponential rate")->required();

  auto* bounds = app.add_subcommand("bounds", "Closed-form thresholds and bounds");
  bounds->add_option("--t", t, "Semigroup time")->required();
  bounds->add_option("--p", p, "Source exponent")->required();
  bounds->add_option("--q", q, "Target exponent");
  bounds->add_option("--d", distance, "Set distance for the Davies-Gaffney bound");
  bounds->add_option("--C", mcintosh, "Davies-Gaffney constant");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    QuadratureSpec spec = default_quadrature_spec();
    spec.order = order;
    spec.max_refinements = max_refinements;
    if (tol) spec.tol = *tol;
    spec.validate();

    std::ofstream file;
    if (!output.empty()) {
      file.open(output, std::ios::binary | std::ios::trunc);
      if (!file) throw DomainError("cannot open output file: " + output);
    }
    std::ostream& sink = output.empty() ? out : file;
    const bool as_json = format == "json";

    if (kernel->parsed()) {
      const TimeParam time(t);
      const LogNumber v = mehler_log(time, parse_point(x_text), parse_point(y_text));
      write_record(sink, {{"log_kernel", v.log_magnitude()}, {"kernel", linear_or_null(v)}},
                   as_json);
    } else if (gamma->parsed()) {
      if (ball_text.empty() == annulus_text.empty()) {
        throw DomainError("gamma needs exactly one of --ball or --annulus");
      }
      Region set = ball_text.empty() ? Region{Annulus(parse_ball(annulus_text), k)}
                                     : Region{parse_ball(ball_text)};
      const LogNumber g = gamma_log(set, spec);
      write_record(sink, {{"log_gamma", g.log_magnitude()}, {"gamma", linear_or_null(g)}},
                   as_json);
    } else if (apply->parsed()) {
      const TimeParam time(t);
      const Ball ball = parse_ball(ball_text);
      const Point y = parse_point(y_text);
      const LogNumber v = apply_indicator_log(time, ball, y, spec);
      Record rec{{"log_apply", v.log_magnitude()}, {"apply", linear_or_null(v)}};
      if (ball.dim() == 1) {
        const LogNumber cf = apply_indicator_closed_form_log(time, ball, y);
        rec.emplace_back("log_closed_form", cf.log_magnitude());
        rec.emplace_back("closed_form", linear_or_null(cf));
      }
      write_record(sink, rec, as_json);
    } else if (sweep->parsed()) {
      const OffDiagHypothesis hyp{p, q, theta, c};
      const auto grid = linspace(cmin, cmax, steps);
      const SweepResult result = sweep_blowup(hyp, TimeParam(t), k, n, grid, spec, !serial);
      if (as_json) {
        write_sweep_json(sink, result);
      } else {
        write_sweep_csv(sink, result);
      }
      if (!result.complete) {
        err << "error: sweep aborted: " << result.failure << '\n';
        return kExitNumerical;
      }
    } else if (regime->parsed()) {
      const auto ps = linspace(pmin, pmax, psteps);
      const auto ts = linspace(tmin, tmax, tsteps);
      const std::vector<double> qs{qfixed};
      const RegimeMap map = regime_map(ps, qs, ts);
      if (as_json) {
        write_regime_json(sink, map);
      } else {
        write_regime_csv(sink, map);
      }
    } else if (hyper->parsed()) {
      const TimeParam time(t);
      const HypercontractivityCheck h = hypercontractivity_check(time, p, lambda, spec);
      const double p_min = nelson_min_p(time);
      std::ostringstream verdict;
      verdict << "verdict: " << (h.ratio_numeric <= 1.0 + 1e-9 ? "contraction" : "no contraction")
              << " (p " << (p >= p_min ? ">=" : "<") << " 1 + e^{-2t} = " << format_double(p_min)
              << ")";
      write_record(sink,
                   {{"ratio_closed_form", h.ratio_closed_form}, {"ratio_numeric", h.ratio_numeric}},
                   as_json, {verdict.str()});
    } else if (bounds->parsed()) {
      const TimeParam time(t);
      Record rec{{"nelson_min_p", nelson_min_p(time)}};
      if (p > nelson_min_p(time) && p <= 2.0) {
        rec.emplace_back("delta", delta_exponent(p, time));
      } else {
        rec.emplace_back("delta", std::monostate{});
      }
      if (distance > 0.0) {
        rec.emplace_back("davies_gaffney", davies_gaffney_bound(time, distance, {mcintosh}));
        if (p > nelson_min_p(time) && p <= 2.0) {
          rec.emplace_back("log_interpolated",
                           interpolated_bound_log(p, time, distance, {mcintosh}).log_magnitude());
        }
      }
      if (q > 0.0) {
        rec.emplace_back("failure_threshold", failure_threshold(p, q));
        rec.emplace_back("blowup_slope", blowup_slope(p, q, time));
      }
      write_record(sink, rec, as_json);
    } else if (selftest->parsed()) {
      const auto outcomes = run_selftest(seed, spec);
      int failed = 0;
      for (const CheckOutcome& o : outcomes) {
        sink << (o.passed ? "PASS " : "FAIL ") << o.name;
        if (!o.detail.empty()) sink << ": " << o.detail;
        sink << '\n';
        failed += o.passed ? 0 : 1;
      }
      sink << "# " << outcomes.size() - failed << "/" << outcomes.size() << " checks passed\n";
      return failed == 0 ? kExitOk : kExitFailure;
    }
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: numerical non-convergence: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
}

}  // namespace ou::cli
