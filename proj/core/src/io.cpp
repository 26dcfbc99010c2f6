#include "berezin_lab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "berezin_lab/errors.hpp"

namespace berezin_lab::io {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kDomainHeader = "index,z_re,z_im,b_re,b_im";
constexpr std::string_view kPlainHeader = "index,re,im";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view s, std::size_t line) {
  s = trim(s);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return out;
}

ordered_json value_to_json(const ReportValue& v) {
  return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

ReportValue value_from_json(const ordered_json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  fail(ErrorKind::ParseError, "unsupported report value " + j.dump());
}

ordered_json section_to_json(const ReportSection& s) {
  ordered_json out = ordered_json::object();
  for (const auto& [k, v] : s) out[k] = value_to_json(v);
  return out;
}

ReportSection section_from_json(const ordered_json& j) {
  if (!j.is_object()) fail(ErrorKind::ParseError, "report section must be an object");
  ReportSection s;
  for (const auto& [k, v] : j.items()) s[k] = value_from_json(v);
  return s;
}

}  // namespace

std::string_view library_version() noexcept { return BEREZIN_LAB_VERSION; }

std::string to_csv(const PointCloud& cloud) {
  if (cloud.has_domain() && cloud.domain.size() != cloud.points.size()) {
    fail(ErrorKind::ShapeError, "cloud domain and points differ in length");
  }
  std::string out;
  out.reserve(64 * cloud.size() + 256);
  for (const auto& [k, v] : cloud.meta) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos) {
      fail(ErrorKind::InvalidParameter, "meta entry '" + k + "' cannot be written as a comment line");
    }
    out += "# " + k + "=" + v + "\n";
  }
  out += cloud.has_domain() ? kDomainHeader : kPlainHeader;
  out += '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out += std::to_string(i);
    if (cloud.has_domain()) {
      out += ',' + format_real(cloud.domain[i].real()) + ',' + format_real(cloud.domain[i].imag());
    }
    out += ',' + format_real(cloud.points[i].real()) + ',' + format_real(cloud.points[i].imag()) + '\n';
  }
  return out;
}

PointCloud parse_csv(std::string_view text) {
  PointCloud cloud;
  bool have_header = false;
  bool with_domain = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header) fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": comment after header");
      line = trim(line.substr(1));
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      cloud.meta[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      if (line == kDomainHeader) {
        with_domain = true;
      } else if (line != kPlainHeader) {
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": unexpected header '" + std::string(line) + "'");
      }
      have_header = true;
      continue;
    }
    const auto fields = split(line, ',');
    const std::size_t expected = with_domain ? 5 : 3;
    if (fields.size() != expected) {
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(expected) + " fields");
    }
    const double index = parse_field(fields[0], line_no);
    if (index != static_cast<double>(cloud.size())) {
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": rows out of order");
    }
    if (with_domain) {
      cloud.domain.emplace_back(parse_field(fields[1], line_no), parse_field(fields[2], line_no));
      cloud.points.emplace_back(parse_field(fields[3], line_no), parse_field(fields[4], line_no));
    } else {
      cloud.points.emplace_back(parse_field(fields[1], line_no), parse_field(fields[2], line_no));
    }
  }
  if (!have_header) fail(ErrorKind::ParseError, "CSV has no header line");
  return cloud;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) fail(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_csv(const PointCloud& cloud, const std::filesystem::path& path) { write_text(path, to_csv(cloud)); }

PointCloud read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

ReportValue real_value(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return std::string("nan");
  return std::string(x > 0 ? "inf" : "-inf");
}

std::string Report::to_json() const {
  ordered_json j = ordered_json::object();
  j["version"] = version;
  j["command"] = command;
  j["config"] = section_to_json(config);
  ordered_json secs = ordered_json::object();
  for (const auto& [name, s] : sections) secs[name] = section_to_json(s);
  j["sections"] = secs;
  ordered_json crit = ordered_json::array();
  for (const auto& c : criteria) {
    ordered_json e = {{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    if (include_criterion_timing) e["seconds"] = c.seconds;
    crit.push_back(std::move(e));
  }
  j["criteria"] = crit;
  if (timing_seconds) j["timing_seconds"] = *timing_seconds;
  return j.dump(2) + "\n";
}

Report Report::from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("report JSON: ") + e.what());
  }
  Report r;
  try {
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.config = section_from_json(j.at("config"));
    for (const auto& [name, s] : j.at("sections").items()) r.sections[name] = section_from_json(s);
    for (const auto& e : j.at("criteria")) {
      CriterionResult c;
      c.id = e.at("id").get<int>();
      c.name = e.at("name").get<std::string>();
      c.pass = e.at("pass").get<bool>();
      c.detail = e.at("detail").get<std::string>();
      if (e.contains("seconds")) {
        c.seconds = e.at("seconds").get<double>();
        r.include_criterion_timing = true;
      }
      r.criteria.push_back(std::move(c));
    }
    if (j.contains("timing_seconds")) r.timing_seconds = j.at("timing_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("report JSON: ") + e.what());
  }
  return r;
}

}  // namespace berezin_lab::io
