#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "berezin_lab/types.hpp"

namespace berezin_lab::io {

/// `# key=value` lines for the meta map, then `index,z_re,z_im,b_re,b_im`
/// when the cloud carries its domain, `index,re,im` otherwise.
std::string to_csv(const PointCloud& cloud);
PointCloud parse_csv(std::string_view text);

void write_csv(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

/// Scalar report entry. Non-finite doubles are stored as strings so the
/// JSON stays valid and round-trips.
using ReportValue = std::variant<bool, std::int64_t, double, std::string>;
using ReportSection = std::map<std::string, ReportValue>;

ReportValue real_value(double x);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;

  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct Report {
  std::string version;
  std::string command;
  ReportSection config;
  std::map<std::string, ReportSection> sections;
  std::vector<CriterionResult> criteria;
  std::optional<double> timing_seconds;  // serialized only when set
  bool include_criterion_timing = false;

  /// Pretty JSON with sorted keys.
  std::string to_json() const;
  static Report from_json(std::string_view text);

  friend bool operator==(const Report&, const Report&) = default;
};

std::string_view library_version() noexcept;

}  // namespace berezin_lab::io
