#include "polygonflow/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "polygonflow/ellipse.hpp"
#include "polygonflow/harmonic.hpp"
#include "polygonflow/hetero.hpp"
#include "polygonflow/io.hpp"
#include "polygonflow/periodicity.hpp"
#include "polygonflow/spectral.hpp"

namespace polygonflow {

using json = nlohmann::json;

namespace {

constexpr std::array<std::pair<std::string_view, Command>, 8> kCommands{{
    {"gen", Command::Gen},
    {"iterate", Command::Iterate},
    {"spectrum", Command::Spectrum},
    {"predict", Command::Predict},
    {"ellipse", Command::Ellipse},
    {"period", Command::Period},
    {"hetero", Command::Hetero},
    {"sweep", Command::Sweep},
}};

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, "/" + field + ": " + what);
}

double real_field(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) invalid(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(key, "expected a finite number");
  return d;
}

std::uint64_t unsigned_field(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_unsigned()) invalid(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string string_field(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) invalid(key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> real_list(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) invalid(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) invalid(key + "/" + std::to_string(i), "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

DivisionScheme checked_scheme(const std::string& key, const std::function<DivisionScheme()>& make) {
  try {
    return make();
  } catch (const Error& e) {
    invalid(key, e.what());
  }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json scheme_json(const DivisionScheme& scheme) {
  if (scheme.is_uniform()) return {{"xi", scheme.xi()}};
  return {{"xi_list", std::vector<double>(scheme.values().begin(), scheme.values().end())}};
}

std::string_view mode_name(IterationMode mode) {
  return mode == IterationMode::Normalized ? "normalized" : "unnormalized";
}

// Reports go to the given path, or to `out` when no path is configured.
void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::size_t require_n(const RunConfig& config) {
  if (!config.n) invalid("n", "required for this command");
  return *config.n;
}

double require_uniform_xi(const RunConfig& config) {
  if (!config.scheme.is_uniform()) invalid("xi_list", "this command needs a uniform xi");
  return config.scheme.xi();
}

Polygon load_polygon(const RunConfig& config) {
  if (config.input_path) return read_polygon_csv(*config.input_path);
  if (!config.n) invalid("n", "either n or input is required");
  return random_polygon(*config.n, config.seed_or_default(), config.half_width);
}

double max_distance_to(const Polygon& p, Point c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    worst = std::max(worst, std::hypot(p.xs()[i] - c.x, p.ys()[i] - c.y));
  }
  return worst;
}

json decomposition_json(const EllipseDecomposition& dec, std::size_t n) {
  const auto [ax1, ax2] = dec.semi_axes(n);
  json j{{"sigma", {dec.sigma1, dec.sigma2}}, {"semi_axes", {ax1, ax2}}};
  j["orientation_rad"] = dec.orientation ? json(*dec.orientation) : json(nullptr);
  return j;
}

// --- commands --------------------------------------------------------------

int run_gen(const RunConfig& config, std::ostream& out) {
  const Polygon p = random_polygon(require_n(config), config.seed_or_default(), config.half_width);
  std::ostringstream text;
  write_polygon_csv(p, text);
  emit(config.out_polygon, text.str(), out);
  return 0;
}

int run_iterate(const RunConfig& config, std::ostream& out) {
  const Polygon start = load_polygon(config);
  config.scheme.check_size(start.size());
  const IterationTrace trace = iterate(start, config.scheme, config.steps, config.mode);
  const Polygon& last = trace.polygons.back();
  const std::size_t n = start.size();

  if (config.out_trace) write_trace_csv(trace, *config.out_trace);
  if (config.out_svg) write_svg(make_scene(trace), *config.out_svg);

  json report{{"command", "iterate"},
              {"n", n},
              {"scheme", scheme_json(config.scheme)},
              {"steps", config.steps},
              {"mode", mode_name(config.mode)},
              {"centroid_initial", point_json(centroid(start))},
              {"centroid_final", point_json(centroid(last))},
              {"final_norms", {trace.norms.back().x, trace.norms.back().y}},
              {"final_max_distance_to_initial_centroid",
               max_distance_to(last, centroid(start))}};
  if (!config.input_path) report["seed"] = config.seed_or_default();

  if (config.mode == IterationMode::Normalized) {
    try {
      const auto pts = vertices(last);
      const EllipseFit fit = fit_ellipse(pts);
      report["ellipse_fit"] = {{"center", point_json(fit.center)},
                               {"semi_axes", {fit.semi_axes.first, fit.semi_axes.second}},
                               {"angle_rad", fit.angle}};
    } catch (const Error& e) {
      report["ellipse_fit"] = nullptr;
      report["ellipse_fit_error"] = e.what();
    }
    const auto pu = project_D2(trace.polygons.front().xs());
    const auto pv = project_D2(trace.polygons.front().ys());
    if (config.scheme.is_uniform() && pu.theta && pv.theta) {
      const auto coeff = coefficient_matrix(*pu.theta, *pv.theta, n, config.scheme.xi(),
                                            config.steps);
      json pred = decomposition_json(svd_2x2(coeff.matrix), n);
      pred["theta_u"] = *pu.theta;
      pred["theta_v"] = *pv.theta;
      report["predicted_ellipse"] = pred;
    } else {
      report["predicted_ellipse"] = nullptr;
    }
  }
  emit(config.out_report, dump(report), out);
  return 0;
}

int run_spectrum(const RunConfig& config, std::ostream& out) {
  const std::size_t n = require_n(config);
  const double xi = require_uniform_xi(config);
  std::ostringstream csv;
  csv << "j,re_lambda,im_lambda,abs_lambda\n";
  for (std::size_t j = 0; j < n; ++j) {
    const EigenPair pair = eigenpair(n, xi, j);
    csv << j << ',' << format_real(pair.lambda.real()) << ',' << format_real(pair.lambda.imag())
        << ',' << format_real(eigenvalue_magnitude(n, xi, j)) << '\n';
  }
  emit(config.out_trace, csv.str(), out);

  json summary{{"n", n}, {"xi", xi}};
  if (n >= 5) {
    const DampingReport report = damping_factor(n, xi);
    summary["rho"] = report.rho;
    summary["argmin_xi"] = report.argmin_xi;
    summary["rho_closed_form"] = report.rho_closed_form;
    summary["rho_literal_formula"] = report.rho_literal_formula;
  } else {
    summary["rho"] = nullptr;
    summary["argmin_xi"] = nullptr;
  }
  emit(config.out_report, dump(summary), out);
  return 0;
}

int run_predict(const RunConfig& config, std::ostream& out) {
  const std::size_t n = require_n(config);
  const double xi = require_uniform_xi(config);
  const IterationTrace trace = predicted_trace(config.theta_u, config.theta_v, n, xi, config.steps);
  std::ostringstream csv;
  write_trace_csv(trace, csv);
  emit(config.out_trace, csv.str(), out);
  if (config.out_svg) write_svg(make_scene(trace), *config.out_svg);
  return 0;
}

int run_ellipse(const RunConfig& config, std::ostream& out) {
  const std::size_t n = require_n(config);
  const double xi = require_uniform_xi(config);
  const RotationNumber r = rotation_number(n, xi);
  const CoefficientMatrix coeff = coefficient_matrix(config.theta_u, config.theta_v, n, xi,
                                                     config.steps);
  const EllipseDecomposition dec = svd_2x2(coeff.matrix);
  const auto [ax1, ax2] = dec.semi_axes(n);
  const auto [ps1, ps2] = paper_sigma(config.theta_u, config.theta_v, config.steps, r.phase, n);
  const bool discrepancy =
      std::abs(ps1 - ax1) > kCircleThreshold || std::abs(ps2 - ax2) > kCircleThreshold;
  json report{{"n", n},
              {"xi", xi},
              {"k", config.steps},
              {"a", coeff.phase_u},
              {"b", coeff.phase_v},
              {"sigma_svd", {dec.sigma1, dec.sigma2}},
              {"sigma_literal", {ps1, ps2}},
              {"semi_axes", {ax1, ax2}},
              {"orientation_rad", dec.orientation ? json(*dec.orientation) : json(nullptr)},
              {"discrepancy_flag", discrepancy}};
  emit(config.out_report, dump(report), out);
  return 0;
}

int run_period(const RunConfig& config, std::ostream& out) {
  const std::size_t n = require_n(config);
  const double xi = require_uniform_xi(config);
  PeriodReport report;
  report.exact = exact_period(n, xi, config.qmax);
  report.near = near_periods(n, xi, config.qmax);
  report.empirical = empirical_period(
      predicted_trace(config.theta_u, config.theta_v, n, xi, config.steps), kEmpiricalPeriodTol);

  json doc{{"n", n}, {"xi", xi}, {"arg_z", rotation_number(n, xi).phase}, {"qmax", config.qmax}};
  if (report.exact) {
    doc["exact"] = {{"period", report.exact->period},
                    {"p", report.exact->witness.p},
                    {"q", report.exact->witness.q}};
  } else {
    doc["exact"] = nullptr;
  }
  doc["near"] = json::array();
  for (const NearPeriod& np : report.near) {
    doc["near"].push_back(
        {{"period", np.period}, {"deviation", np.deviation}, {"p", np.approx.p}, {"q", np.approx.q}});
  }
  if (report.empirical) {
    doc["empirical"] = {{"period", report.empirical->period},
                        {"distance", report.empirical->distance},
                        {"offset", report.empirical->offset},
                        {"steps", config.steps}};
  } else {
    doc["empirical"] = nullptr;
  }
  emit(config.out_report, dump(doc), out);
  return 0;
}

int run_hetero(const RunConfig& config, std::ostream& out) {
  const Polygon start = load_polygon(config);
  const TransformMatrix transform = build_transform(start.size(), config.scheme);
  const LimitPrediction prediction = predict_limit(start, transform);
  const IterationTrace trace =
      iterate(start, config.scheme, config.steps, IterationMode::Unnormalized);
  const Polygon& last = trace.polygons.back();
  if (config.out_trace) write_trace_csv(trace, *config.out_trace);
  if (config.out_svg) write_svg(make_scene(trace), *config.out_svg);
  json report{{"n", start.size()},
              {"scheme", scheme_json(config.scheme)},
              {"steps", config.steps},
              {"weights", prediction.weights},
              {"limit_point", point_json(prediction.point)},
              {"centroid", point_json(centroid(start))},
              {"empirical_limit", point_json(centroid(last))},
              {"max_deviation", max_distance_to(last, prediction.point)},
              {"spectral_gap", prediction.spectral_gap}};
  emit(config.out_report, dump(report), out);
  return 0;
}

struct SweepTask {
  std::size_t n = 0;
  double xi = 0.0;
};

json run_sweep_task(const RunConfig& config, const SweepTask& task, std::size_t index) {
  const Polygon start = random_polygon(task.n, config.seed_or_default(), config.half_width);
  const DivisionScheme scheme = DivisionScheme::uniform(task.xi);
  const IterationTrace trace = iterate(start, scheme, config.steps, config.mode);
  const Polygon& last = trace.polygons.back();
  if (config.out_trace) {
    write_trace_csv(trace, *config.out_trace + "." + std::to_string(index) + ".csv");
  }
  json row{{"n", task.n},
           {"xi", task.xi},
           {"modulus", rotation_number(task.n, task.xi).modulus},
           {"final_norms", {trace.norms.back().x, trace.norms.back().y}},
           {"final_max_distance_to_centroid", max_distance_to(last, centroid(start))}};
  if (config.mode == IterationMode::Normalized) {
    row["final_d2_residual"] =
        std::hypot(project_D2(last.xs()).residual, project_D2(last.ys()).residual);
  }
  return row;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
  std::vector<std::size_t> ns = config.sweep_n;
  if (ns.empty()) ns.push_back(config.n.value_or(20));
  std::vector<SweepTask> tasks;
  for (std::size_t n : ns) {
    for (double xi : config.sweep_xi) tasks.push_back({n, xi});
  }

  std::vector<json> rows(tasks.size());
  std::vector<std::string> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        rows[i] = run_sweep_task(config, tasks[i], i);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  const std::size_t workers = std::min(sweep_threads(), std::max<std::size_t>(tasks.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const std::string& f : failures) {
    if (!f.empty()) throw std::runtime_error(f);
  }
  json report{{"command", "sweep"},
              {"steps", config.steps},
              {"mode", mode_name(config.mode)},
              {"seed", config.seed_or_default()},
              {"runs", rows}};
  emit(config.out_report, dump(report), out);
  return 0;
}

int dispatch(Command command, const RunConfig& config, std::ostream& out) {
  switch (command) {
    case Command::Gen: return run_gen(config, out);
    case Command::Iterate: return run_iterate(config, out);
    case Command::Spectrum: return run_spectrum(config, out);
    case Command::Predict: return run_predict(config, out);
    case Command::Ellipse: return run_ellipse(config, out);
    case Command::Period: return run_period(config, out);
    case Command::Hetero: return run_hetero(config, out);
    case Command::Sweep: return run_sweep(config, out);
  }
  return 1;
}

bool is_validation(ErrorCode code) {
  switch (code) {
    case ErrorCode::ValidationError:
    case ErrorCode::ParseError:
    case ErrorCode::DivisionPointOutOfRange:
    case ErrorCode::SchemeLengthMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [key, command] : kCommands) {
    if (key == name) return command;
  }
  return std::nullopt;
}

std::string_view command_name(Command command) {
  for (const auto& [key, c] : kCommands) {
    if (c == command) return key;
  }
  return "unknown";
}

RunConfig merge_config(RunConfig config, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");

  static const std::vector<std::string> kKeys{
      "n",       "xi",         "xi_list",   "steps",      "seed",    "half_width",
      "mode",    "input",      "out_polygon", "out_trace", "out_svg", "out_report",
      "qmax",    "theta_u",    "theta_v",   "sweep_xi",   "sweep_n"};
  for (const auto& item : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), item.key()) == kKeys.end()) {
      invalid(item.key(), "unknown key");
    }
  }

  if (doc.contains("xi") && doc.contains("xi_list")) invalid("xi", "give either xi or xi_list");
  if (doc.contains("n")) config.n = unsigned_field(doc, "n");
  if (doc.contains("xi")) {
    const double xi = real_field(doc, "xi");
    config.scheme = checked_scheme("xi", [&] { return DivisionScheme::uniform(xi); });
  }
  if (doc.contains("xi_list")) {
    auto xis = real_list(doc, "xi_list");
    config.scheme = checked_scheme("xi_list", [&] { return DivisionScheme::per_segment(xis); });
  }
  if (doc.contains("steps")) config.steps = unsigned_field(doc, "steps");
  if (doc.contains("seed")) config.seed = unsigned_field(doc, "seed");
  if (doc.contains("half_width")) {
    config.half_width = real_field(doc, "half_width");
    if (!(config.half_width > 0.0)) invalid("half_width", "must be positive");
  }
  if (doc.contains("mode")) {
    const std::string mode = string_field(doc, "mode");
    if (mode == "normalized") {
      config.mode = IterationMode::Normalized;
    } else if (mode == "unnormalized") {
      config.mode = IterationMode::Unnormalized;
    } else {
      invalid("mode", "expected 'normalized' or 'unnormalized'");
    }
  }
  if (doc.contains("input")) config.input_path = string_field(doc, "input");
  if (doc.contains("out_polygon")) config.out_polygon = string_field(doc, "out_polygon");
  if (doc.contains("out_trace")) config.out_trace = string_field(doc, "out_trace");
  if (doc.contains("out_svg")) config.out_svg = string_field(doc, "out_svg");
  if (doc.contains("out_report")) config.out_report = string_field(doc, "out_report");
  if (doc.contains("qmax")) {
    config.qmax = static_cast<std::int64_t>(unsigned_field(doc, "qmax"));
    if (config.qmax < 1) invalid("qmax", "must be at least 1");
  }
  if (doc.contains("theta_u")) config.theta_u = real_field(doc, "theta_u");
  if (doc.contains("theta_v")) config.theta_v = real_field(doc, "theta_v");
  if (doc.contains("sweep_xi")) {
    config.sweep_xi = real_list(doc, "sweep_xi");
    for (double xi : config.sweep_xi) {
      if (!(xi > 0.0 && xi < 1.0)) invalid("sweep_xi", "values must lie in (0, 1)");
    }
  }
  if (doc.contains("sweep_n")) {
    const json& v = doc.at("sweep_n");
    if (!v.is_array() || v.empty()) invalid("sweep_n", "expected a non-empty array of integers");
    config.sweep_n.clear();
    for (const json& e : v) {
      if (!e.is_number_unsigned()) invalid("sweep_n", "expected non-negative integers");
      config.sweep_n.push_back(e.get<std::size_t>());
    }
  }
  validate_config(config);
  return config;
}

RunConfig parse_config(std::string_view text) { return merge_config(RunConfig{}, text); }

void validate_config(const RunConfig& config) {
  if (config.n && config.input_path) invalid("input", "give either n (with seed) or input, not both");
  if (config.seed && config.input_path) invalid("seed", "seed applies to generated polygons only");
  if (config.n && *config.n < 3) invalid("n", "need at least 3 vertices");
  if (config.n && !config.scheme.is_uniform() && config.scheme.values().size() != *config.n) {
    invalid("xi_list", "expected " + std::to_string(*config.n) + " division points, got " +
                           std::to_string(config.scheme.values().size()));
  }
  for (std::size_t n : config.sweep_n) {
    if (n < 3) invalid("sweep_n", "need at least 3 vertices");
  }
  if (config.qmax < 1) invalid("qmax", "must be at least 1");
}

int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_config(config);
    return dispatch(command, config, out);
  } catch (const Error& e) {
    err << "polygonflow " << command_name(command) << ": " << e.what() << '\n';
    return is_validation(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "polygonflow " << command_name(command) << ": " << e.what() << '\n';
    return 1;
  }
}

std::size_t sweep_threads() {
  if (const char* env = std::getenv("POLYGONFLOW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace polygonflow
