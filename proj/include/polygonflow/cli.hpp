#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polygonflow/polygon.hpp"

namespace polygonflow {

enum class Command { Gen, Iterate, Spectrum, Predict, Ellipse, Period, Hetero, Sweep };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

/// Settings for one CLI invocation. Built from a JSON config document and/or
/// command-line flags; every field has the documented default.
struct RunConfig {
  std::optional<std::size_t> n;
  DivisionScheme scheme = DivisionScheme::uniform(0.5);
  std::size_t steps = 100;
  std::optional<std::uint64_t> seed;
  double half_width = 1.0;
  IterationMode mode = IterationMode::Normalized;
  std::optional<std::string> input_path;
  std::optional<std::string> out_polygon;
  std::optional<std::string> out_trace;
  std::optional<std::string> out_svg;
  std::optional<std::string> out_report;
  std::int64_t qmax = 1000;
  double theta_u = 0.3;
  double theta_v = 1.2;
  /// sweep only.
  std::vector<double> sweep_xi{0.2, 0.25, 0.4};
  std::vector<std::size_t> sweep_n;

  std::uint64_t seed_or_default() const { return seed.value_or(kDefaultSeed); }

  static constexpr std::uint64_t kDefaultSeed = 42;
};

/// Parses and validates a JSON config. Unknown keys are rejected. Throws
/// ParseError for malformed JSON and ValidationError naming the offending field.
RunConfig parse_config(std::string_view text);

/// Applies the JSON document's keys on top of base (same validation as parse_config).
RunConfig merge_config(RunConfig base, std::string_view text);

/// Cross-field checks: n/input exclusivity, per-segment length, n >= 3.
void validate_config(const RunConfig& config);

/// Executes a command. Returns 0 on success, 2 on validation errors and 1 on
/// runtime errors; diagnostics go to err, reports without an output path go to out.
int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Worker count for sweep: POLYGONFLOW_THREADS if set and positive, else the hardware count.
std::size_t sweep_threads();

}  // namespace polygonflow
