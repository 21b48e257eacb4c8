#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "impact_game/montecarlo.hpp"
#include "impact_game/params.hpp"

namespace impact_game::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { equilibrium, sweep, limits, continuous, montecarlo, tax, verify };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::equilibrium;
  GameParams params;
  std::optional<std::vector<std::size_t>> n_list;
  std::string output_path = "-";  // "-" is stdout
  Format format = Format::json;
  // command-specific
  std::string grid = "small";      // verify
  bool curves = false;             // limits: emit curves instead of scalars
  std::size_t t_points = 101;      // limits curves
  std::size_t n_grid = 65;         // continuous
  SimConfig sim;                   // montecarlo
};

/// "a:b[:step]" or "n1,n2,...". Throws ParameterError.
std::vector<std::size_t> parse_n_list(const std::string& text);

/// Parses argv (flags override values from --config). Returns nullopt after
/// printing help/version; throws ParameterError on invalid input.
std::optional<RunConfig> parse(int argc, const char* const* argv);

/// Executes the command, writing to config.output_path. Returns the process
/// exit code: 0 success, 1 parameter error, 2 numerical error or failed
/// verification. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& err);

/// parse + run with the same exit-code convention.
int main_entry(int argc, const char* const* argv);

}  // namespace impact_game::cli
