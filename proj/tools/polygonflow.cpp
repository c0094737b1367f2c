// polygonflow: command-line driver for the polygon averaging iteration.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "polygonflow/cli.hpp"
#include "polygonflow/error.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw polygonflow::Error(polygonflow::ErrorCode::IoError, "cannot read config '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterate weighted-average polygon maps and analyse their limits."};
  app.require_subcommand(1, 1);

  std::string config_path;
  nlohmann::json flags = nlohmann::json::object();

  std::size_t n = 0, steps = 0, seed = 0, qmax = 0;
  double xi = 0.0, half_width = 0.0, theta_u = 0.0, theta_v = 0.0;
  std::vector<double> xi_list, sweep_xi;
  std::vector<std::size_t> sweep_n;
  std::string mode, input, out_polygon, out_trace, out_svg, out_report;

  const std::pair<const char*, const char*> subcommands[] = {
      {"gen", "write a seeded random polygon"},
      {"iterate", "run the averaging map and record the trace"},
      {"spectrum", "eigenvalues, damping ratio and rotation number"},
      {"predict", "closed-form vertex vectors after k steps"},
      {"ellipse", "limit ellipse of the normalized flow"},
      {"period", "exact and near periods of the predicted flow"},
      {"hetero", "limit point for per-segment division points"},
      {"sweep", "damping and rotation over a grid of (n, xi)"},
  };
  for (const auto& [name, about] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--config", config_path, "JSON config file; flags override its keys");
    sub->add_option("--n", n, "vertex count");
    auto* xi_opt = sub->add_option("--xi", xi, "uniform division point in (0, 1)");
    sub->add_option("--xi-list", xi_list, "per-segment division points")
        ->delimiter(',')
        ->excludes(xi_opt);
    sub->add_option("--steps", steps, "iteration count (k for predict/ellipse)");
    sub->add_option("--seed", seed, "seed for the random polygon");
    sub->add_option("--half-width", half_width, "random coordinates lie in [-w, w]");
    sub->add_option("--mode", mode, "normalized | unnormalized");
    sub->add_option("--input", input, "polygon CSV (header x,y)");
    sub->add_option("--out-polygon", out_polygon, "polygon CSV output (gen)");
    sub->add_option("--out-trace", out_trace, "trace CSV output");
    sub->add_option("--out-svg", out_svg, "SVG output");
    sub->add_option("--out-report", out_report, "JSON report output");
    sub->add_option("--qmax", qmax, "largest denominator for period search");
    sub->add_option("--theta-u", theta_u, "phase of the x coordinate vector");
    sub->add_option("--theta-v", theta_v, "phase of the y coordinate vector");
    sub->add_option("--sweep-xi", sweep_xi, "division points for sweep")->delimiter(',');
    sub->add_option("--sweep-n", sweep_n, "vertex counts for sweep")->delimiter(',');
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto command = polygonflow::parse_command(sub->get_name());
  const auto given = [&](const char* opt) { return sub->count(opt) > 0; };

  if (given("--n")) flags["n"] = n;
  if (given("--xi")) flags["xi"] = xi;
  if (given("--xi-list")) flags["xi_list"] = xi_list;
  if (given("--steps")) flags["steps"] = steps;
  if (given("--seed")) flags["seed"] = seed;
  if (given("--half-width")) flags["half_width"] = half_width;
  if (given("--mode")) flags["mode"] = mode;
  if (given("--input")) flags["input"] = input;
  if (given("--out-polygon")) flags["out_polygon"] = out_polygon;
  if (given("--out-trace")) flags["out_trace"] = out_trace;
  if (given("--out-svg")) flags["out_svg"] = out_svg;
  if (given("--out-report")) flags["out_report"] = out_report;
  if (given("--qmax")) flags["qmax"] = qmax;
  if (given("--theta-u")) flags["theta_u"] = theta_u;
  if (given("--theta-v")) flags["theta_v"] = theta_v;
  if (given("--sweep-xi")) flags["sweep_xi"] = sweep_xi;
  if (given("--sweep-n")) flags["sweep_n"] = sweep_n;

  polygonflow::RunConfig config;
  try {
    if (!config_path.empty()) config = polygonflow::parse_config(read_file(config_path));
    config = polygonflow::merge_config(config, flags.dump());
  } catch (const polygonflow::Error& e) {
    std::cerr << "polygonflow " << sub->get_name() << ": " << e.what() << '\n';
    return e.code() == polygonflow::ErrorCode::IoError ? 1 : 2;
  }
  return polygonflow::run(*command, config, std::cout, std::cerr);
}
