#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "berezin_lab/berezin.hpp"
#include "berezin_lab/errors.hpp"
#include "berezin_lab/io.hpp"
#include "berezin_lab/svg.hpp"

namespace berezin_lab::run {

enum class Command { Range, Convexity, Numrange, Orbit, Verify };
enum class Format { Csv, Json, Svg };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view text);
std::string_view to_string(Format f) noexcept;
Format parse_format(std::string_view text);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitVerify = 3;

/// Config-type errors map to 1, numerical ones to 2.
int exit_code_for(ErrorKind kind) noexcept;

struct RunConfig {
  Command command = Command::Range;
  std::optional<kernels::SpaceId> space;
  std::string symbol;
  std::string preset;

  // grid overrides on top of the per-space default
  std::optional<int> n_r;
  std::optional<int> n_theta;
  std::optional<double> r_max;
  std::optional<berezin::SamplingGrid::Spacing> r_spacing;

  std::string matrix;  // matrix text, rows separated by ';' or newlines
  std::string output;  // file prefix; empty writes nothing
  Format format = Format::Csv;
  std::optional<double> tol;
  std::uint64_t seed = 0;

  std::size_t boundary_points = 360;  // numrange sweep
  std::size_t orbit_n1 = 256;         // 2x2 orbit grid
  std::size_t orbit_n2 = 256;
  std::size_t samples = 10000;        // Haar unitaries for n > 2
  std::vector<int> criteria;          // verify subset, empty = all

  std::string title;
  std::optional<svg::Viewport> svg_range;
  bool timing = false;

  berezin::SamplingGrid grid() const;
  /// Command-specific required fields and ranges; InvalidParameter.
  void validate() const;
};

/// Keys are the long flag names: space, symbol, preset, n-r, n-theta, r-max,
/// r-spacing, matrix, matrix-file, output, format, tol, seed,
/// boundary-points, orbit-n1, orbit-n2, samples, criteria, title,
/// svg-range, timing.
void set_option(RunConfig& config, std::string_view key, std::string_view value);

/// fig1 .. fig5 (fig3 is the a = 1 panel, fig3b the a = 10 panel).
void apply_preset(RunConfig& config, std::string_view name);
std::vector<std::string> preset_names();

/// Flat `key=value` lines; blank lines and `#` comments skipped.
std::vector<std::pair<std::string, std::string>> parse_config_file(std::string_view text);

struct RunOutcome {
  int exit_code = kExitOk;
  io::Report report;
  std::vector<std::filesystem::path> files;
};

/// Executes the command. One-line progress and verdict summaries go to
/// `out`; the JSON report too when no output prefix is set. Library errors
/// are caught and turned into exit codes.
RunOutcome run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace berezin_lab::run
