#include "berezin_lab/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "berezin_lab/cplane.hpp"
#include "berezin_lab/numrange.hpp"
#include "berezin_lab/unitorbit.hpp"
#include "berezin_lab/verify.hpp"

namespace berezin_lab::run {
namespace {

using berezin::SamplingGrid;
using io::ReportSection;
using io::real_value;
using kernels::SpaceId;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorKind::InvalidParameter, std::string(key) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const long long v = parse_int<long long>(key, text);
  if (v < 1) fail(ErrorKind::InvalidParameter, std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  fail(ErrorKind::InvalidParameter, std::string(key) + ": expected a boolean");
}

double parse_number(std::string_view key, std::string_view text) {
  try {
    return symbols::parse_real(trim(text));
  } catch (const Error&) {
    fail(ErrorKind::InvalidParameter, std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(parse_number(key, tok));
  return out;
}

ReportSection cloud_summary(const PointCloud& cloud) {
  ReportSection s;
  s["n_points"] = static_cast<std::int64_t>(cloud.size());
  if (cloud.empty()) return s;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const CPoint& p : cloud.points) {
    x0 = std::min(x0, p.real());
    x1 = std::max(x1, p.real());
    y0 = std::min(y0, p.imag());
    y1 = std::max(y1, p.imag());
  }
  s["re_min"] = real_value(x0);
  s["re_max"] = real_value(x1);
  s["im_min"] = real_value(y0);
  s["im_max"] = real_value(y1);
  return s;
}

ReportSection convexity_section(const cplane::ConvexityReport& rep) {
  ReportSection s;
  s["verdict"] = std::string(rep.verdict == cplane::Verdict::Convex ? "Convex" : "NonConvex");
  s["max_violation"] = real_value(rep.max_violation);
  s["tolerance"] = real_value(rep.tolerance);
  s["n_samples"] = static_cast<std::int64_t>(rep.n_samples);
  s["degenerate"] = rep.degenerate;
  if (rep.witness) {
    const cplane::Witness& w = *rep.witness;
    s["witness_i"] = static_cast<std::int64_t>(w.i);
    s["witness_j"] = static_cast<std::int64_t>(w.j);
    s["witness_t"] = real_value(w.t);
    s["witness_p"] = format_complex(w.p);
    s["witness_q"] = format_complex(w.q);
    s["witness_probe"] = format_complex(w.probe);
  }
  return s;
}

ReportSection ellipse_section(const numrange::EllipseParams& e) {
  ReportSection s;
  s["shape"] = std::string(numrange::to_string(e.shape));
  s["center"] = format_complex(e.center);
  s["focus1"] = format_complex(e.focus1);
  s["focus2"] = format_complex(e.focus2);
  s["major_axis"] = real_value(e.major_axis);
  s["minor_axis"] = real_value(e.minor_axis);
  s["tilt_mu"] = real_value(e.tilt_mu);
  s["eccentricity"] = real_value(e.eccentricity());
  return s;
}

ReportSection config_echo(const RunConfig& c) {
  ReportSection s;
  s["command"] = std::string(to_string(c.command));
  if (c.space) s["space"] = std::string(kernels::to_string(*c.space));
  if (!c.symbol.empty()) s["symbol"] = c.symbol;
  if (!c.preset.empty()) s["preset"] = c.preset;
  if (c.command == Command::Range || c.command == Command::Convexity) {
    const SamplingGrid g = c.grid();
    s["grid_kind"] = std::string(g.kind == SamplingGrid::Kind::PolarDisc ? "polar_disc" : "polar_plane");
    s["n_r"] = static_cast<std::int64_t>(g.n_r);
    s["n_theta"] = static_cast<std::int64_t>(g.n_theta);
    s["r_max"] = real_value(g.r_max);
    s["r_spacing"] = std::string(g.spacing == SamplingGrid::Spacing::Uniform ? "uniform" : "tanh");
  }
  if (!c.matrix.empty()) s["matrix"] = c.matrix;
  s["format"] = std::string(to_string(c.format));
  if (c.tol) s["tol"] = real_value(*c.tol);
  s["seed"] = static_cast<std::int64_t>(c.seed);
  if (c.command == Command::Numrange) s["boundary_points"] = static_cast<std::int64_t>(c.boundary_points);
  if (c.command == Command::Orbit) {
    s["orbit_n1"] = static_cast<std::int64_t>(c.orbit_n1);
    s["orbit_n2"] = static_cast<std::int64_t>(c.orbit_n2);
    s["samples"] = static_cast<std::int64_t>(c.samples);
  }
  if (c.command == Command::Verify && !c.criteria.empty()) {
    std::string ids;
    for (int id : c.criteria) ids += (ids.empty() ? "" : ",") + std::to_string(id);
    s["criteria"] = ids;
  }
  return s;
}

struct Emitter {
  const RunConfig& config;
  RunOutcome& outcome;

  std::filesystem::path path(const char* ext) const { return config.output + ext; }

  void cloud(const PointCloud& cloud, const svg::PlotOptions& plot) {
    if (config.output.empty()) return;
    if (config.format == Format::Csv) {
      io::write_csv(cloud, path(".csv"));
      outcome.files.push_back(path(".csv"));
    } else if (config.format == Format::Svg) {
      svg::PlotOptions p = plot;
      if (!config.title.empty()) p.title = config.title;
      if (config.svg_range) p.range = config.svg_range;
      svg::write_svg(cloud, p, path(".svg"));
      outcome.files.push_back(path(".svg"));
    }
  }
};

PointCloud berezin_cloud(const RunConfig& c, symbols::SymbolSpec& sym) {
  sym = symbols::parse_symbol(c.symbol);
  return berezin::sample_range(*c.space, sym, c.grid());
}

void fill_theory(io::Report& report, const RunConfig& c, const symbols::SymbolSpec& sym) {
  ReportSection s;
  s["boundedness"] = std::string(symbols::to_string(symbols::boundedness_on(*c.space, sym)));
  const berezin::ConvexityVerdict v = berezin::classify_convexity(*c.space, sym);
  s["verdict"] = std::string(berezin::to_string(v.verdict));
  s["reason"] = v.reason;
  report.sections["theory"] = s;
}

int do_range(const RunConfig& c, RunOutcome& outcome, std::ostream& out) {
  symbols::SymbolSpec sym;
  const PointCloud cloud = berezin_cloud(c, sym);
  outcome.report.sections["cloud"] = cloud_summary(cloud);
  fill_theory(outcome.report, c, sym);
  Emitter{c, outcome}.cloud(cloud, {});
  out << "range: " << cloud.size() << " samples, theory verdict "
      << std::get<std::string>(outcome.report.sections["theory"]["verdict"]) << "\n";
  return kExitOk;
}

int do_convexity(const RunConfig& c, RunOutcome& outcome, std::ostream& out) {
  symbols::SymbolSpec sym;
  PointCloud cloud = berezin_cloud(c, sym);
  cloud.meta["seed"] = std::to_string(c.seed);
  const cplane::ConvexityReport rep =
      c.tol ? cplane::convexity_report(cloud, *c.tol, cplane::kDefaultPairCap, cplane::default_t_grid())
            : cplane::convexity_report(cloud);
  outcome.report.sections["cloud"] = cloud_summary(cloud);
  outcome.report.sections["convexity"] = convexity_section(rep);
  fill_theory(outcome.report, c, sym);
  const std::string theory = std::get<std::string>(outcome.report.sections["theory"]["verdict"]);
  const std::string detected = std::get<std::string>(outcome.report.sections["convexity"]["verdict"]);
  outcome.report.sections["theory"]["agrees"] =
      theory == "OpenQuestion" ? io::ReportValue(std::string("n/a")) : io::ReportValue(theory == detected);

  if (const auto* b = std::get_if<symbols::Blaschke>(&sym); b && std::abs(b->alpha) > 0.0) {
    const berezin::HypothesisProbe probe = berezin::probe_blaschke_hypothesis(b->alpha, c.grid());
    ReportSection s;
    s["rings"] = static_cast<std::int64_t>(probe.rings);
    s["rings_with_extra_zeros"] = static_cast<std::int64_t>(probe.rings_with_extra_zeros);
    s["max_sign_changes"] = static_cast<std::int64_t>(probe.max_sign_changes);
    outcome.report.sections["hypothesis_probe"] = s;
  }

  svg::PlotOptions plot;
  plot.hull = cplane::convex_hull(cloud);
  Emitter{c, outcome}.cloud(cloud, plot);
  out << "convexity: detector " << detected << " (max violation " << format_real(rep.max_violation) << ", tol "
      << format_real(rep.tolerance) << "), theory " << theory << "\n";
  return kExitOk;
}

int do_numrange(const RunConfig& c, RunOutcome& outcome, std::ostream& out) {
  const numrange::CMatrix t = numrange::parse_matrix(c.matrix);
  const PointCloud cloud = numrange::numerical_range_cloud(t, c.boundary_points);
  outcome.report.sections["cloud"] = cloud_summary(cloud);
  ReportSection s;
  s["n"] = static_cast<std::int64_t>(t.size());
  s["numerical_radius"] = real_value(std::abs(*std::max_element(
      cloud.points.begin(), cloud.points.end(), [](CPoint a, CPoint b) { return std::abs(a) < std::abs(b); })));
  outcome.report.sections["numrange"] = s;
  if (t.size() == 2) outcome.report.sections["ellipse"] = ellipse_section(numrange::elliptic_params(t));
  svg::PlotOptions plot;
  plot.connect_points = true;
  Emitter{c, outcome}.cloud(cloud, plot);
  out << "numrange: " << cloud.size() << " boundary points";
  if (t.size() == 2) out << ", shape " << std::get<std::string>(outcome.report.sections["ellipse"]["shape"]);
  out << "\n";
  return kExitOk;
}

int do_orbit(const RunConfig& c, RunOutcome& outcome, std::ostream& out) {
  const numrange::CMatrix t = numrange::parse_matrix(c.matrix);
  PointCloud cloud;
  ReportSection metrics;
  if (t.size() == 2) {
    cloud = unitorbit::orbit_cloud_2x2(t, c.orbit_n1, c.orbit_n2);
    const numrange::EllipseParams e = numrange::elliptic_params(t);
    double coverage = 0.0;
    using Shape = numrange::EllipseParams::Shape;
    if (e.shape == Shape::Segment || e.shape == Shape::Point) {
      const auto seg = cplane::densify_polyline(std::vector<CPoint>{e.focus1, e.focus2}, 1e-3 * (1.0 + e.major_axis), false);
      coverage = cplane::hausdorff(cloud.points, seg);
    } else {
      const double spacing = 1e-3 * e.major_axis;
      const auto hull = cplane::densify_polyline(cplane::convex_hull(cloud), spacing, true);
      coverage = cplane::hausdorff(hull, cplane::densify_polyline(e.boundary_polygon(4096), spacing, true));
    }
    metrics["method"] = std::string("family_sweep");
    metrics["coverage_hausdorff"] = real_value(coverage);
  } else {
    cloud = unitorbit::haar_orbit_cloud(t, c.samples, c.seed);
    metrics["method"] = std::string("haar");
    metrics["coverage_hausdorff"] = real_value(cplane::hausdorff(cloud, numrange::numerical_range_fill(t)));
  }
  const numrange::SupportTable table(t);
  const double tol = c.tol.value_or(numrange::default_contains_tol(t));
  std::int64_t violations = 0;
  double worst = -INFINITY;
  for (const CPoint& p : cloud.points) {
    const double ex = table.excess(p);
    worst = std::max(worst, ex);
    if (ex > tol) ++violations;
  }
  metrics["inclusion_tol"] = real_value(tol);
  metrics["inclusion_violations"] = violations;
  metrics["max_excess"] = real_value(worst);
  outcome.report.sections["cloud"] = cloud_summary(cloud);
  outcome.report.sections["orbit"] = metrics;

  svg::PlotOptions plot;
  plot.hull = numrange::numerical_range_cloud(t, 360).points;
  Emitter{c, outcome}.cloud(cloud, plot);
  out << "orbit: " << cloud.size() << " diagonal entries, " << violations << " outside W(T), coverage "
      << format_real(std::get<double>(metrics["coverage_hausdorff"])) << "\n";
  return violations == 0 ? kExitOk : kExitVerify;
}

int do_verify(const RunConfig& c, RunOutcome& outcome, std::ostream& out) {
  verify::Suite suite(c.seed);
  outcome.report.criteria = suite.run_all(c.criteria, [&](const io::CriterionResult& r) {
    out << verify::format_line(r) << "\n";
    out.flush();
  });
  outcome.report.include_criterion_timing = c.timing;
  const auto failed = std::count_if(outcome.report.criteria.begin(), outcome.report.criteria.end(),
                                    [](const io::CriterionResult& r) { return !r.pass; });
  ReportSection s;
  s["total"] = static_cast<std::int64_t>(outcome.report.criteria.size());
  s["failed"] = static_cast<std::int64_t>(failed);
  outcome.report.sections["summary"] = s;
  out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? kExitOk : kExitVerify;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Range: return "range";
    case Command::Convexity: return "convexity";
    case Command::Numrange: return "numrange";
    case Command::Orbit: return "orbit";
    case Command::Verify: return "verify";
  }
  return "?";
}

Command parse_command(std::string_view text) {
  for (Command c : {Command::Range, Command::Convexity, Command::Numrange, Command::Orbit, Command::Verify}) {
    if (text == to_string(c)) return c;
  }
  fail(ErrorKind::InvalidParameter, "unknown command '" + std::string(text) + "'");
}

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
  }
  return "?";
}

Format parse_format(std::string_view text) {
  for (Format f : {Format::Csv, Format::Json, Format::Svg}) {
    if (text == to_string(f)) return f;
  }
  fail(ErrorKind::InvalidParameter, "unknown format '" + std::string(text) + "' (csv, json, svg)");
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::ParseError:
    case ErrorKind::ShapeError:
    case ErrorKind::UnboundedSymbol:
    case ErrorKind::IoError:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

SamplingGrid RunConfig::grid() const {
  SamplingGrid g = space && *space == SpaceId::Dirichlet ? SamplingGrid::dirichlet_default() : SamplingGrid::fock_default();
  if (n_r) g.n_r = *n_r;
  if (n_theta) g.n_theta = *n_theta;
  if (r_max) g.r_max = *r_max;
  if (r_spacing) g.spacing = *r_spacing;
  return g;
}

void RunConfig::validate() const {
  if (tol && !(*tol > 0.0)) fail(ErrorKind::InvalidParameter, "tol must be positive");
  switch (command) {
    case Command::Range:
    case Command::Convexity:
      if (!space) fail(ErrorKind::InvalidParameter, std::string(to_string(command)) + " needs --space (or --preset)");
      if (symbol.empty()) fail(ErrorKind::InvalidParameter, std::string(to_string(command)) + " needs --symbol (or --preset)");
      grid().validate();
      break;
    case Command::Numrange:
    case Command::Orbit:
      if (matrix.empty()) fail(ErrorKind::InvalidParameter, std::string(to_string(command)) + " needs --matrix or --matrix-file");
      if (command == Command::Numrange && boundary_points < 8) fail(ErrorKind::InvalidParameter, "boundary-points must be >= 8");
      if (command == Command::Orbit && orbit_n1 < 2) fail(ErrorKind::InvalidParameter, "orbit-n1 must be >= 2");
      break;
    case Command::Verify:
      for (int id : criteria) {
        if (id < 1 || id > static_cast<int>(verify::criteria().size())) {
          fail(ErrorKind::InvalidParameter, "no acceptance criterion " + std::to_string(id));
        }
      }
      break;
  }
}

void set_option(RunConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "space") {
    c.space = kernels::parse_space(value);
  } else if (key == "symbol") {
    c.symbol = std::string(value);
  } else if (key == "preset") {
    apply_preset(c, value);
  } else if (key == "n-r") {
    c.n_r = parse_int<int>(key, value);
  } else if (key == "n-theta") {
    c.n_theta = parse_int<int>(key, value);
  } else if (key == "r-max") {
    c.r_max = parse_number(key, value);
  } else if (key == "r-spacing") {
    if (value == "uniform") {
      c.r_spacing = SamplingGrid::Spacing::Uniform;
    } else if (value == "tanh") {
      c.r_spacing = SamplingGrid::Spacing::TanhClustered;
    } else {
      fail(ErrorKind::InvalidParameter, "r-spacing must be uniform or tanh");
    }
  } else if (key == "matrix") {
    c.matrix = std::string(value);
  } else if (key == "matrix-file") {
    c.matrix = io::read_text(std::filesystem::path(std::string(value)));
  } else if (key == "output") {
    c.output = std::string(value);
  } else if (key == "format") {
    c.format = parse_format(value);
  } else if (key == "tol") {
    c.tol = parse_number(key, value);
  } else if (key == "seed") {
    const long long s = parse_int<long long>(key, value);
    if (s < 0) fail(ErrorKind::InvalidParameter, "seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "boundary-points") {
    c.boundary_points = parse_count(key, value);
  } else if (key == "orbit-n1") {
    c.orbit_n1 = parse_count(key, value);
  } else if (key == "orbit-n2") {
    c.orbit_n2 = parse_count(key, value);
  } else if (key == "samples") {
    c.samples = parse_count(key, value);
  } else if (key == "criteria") {
    c.criteria.clear();
    for (double x : parse_list(key, value)) {
      if (x != std::floor(x)) fail(ErrorKind::InvalidParameter, "criteria must be integers");
      c.criteria.push_back(static_cast<int>(x));
    }
  } else if (key == "title") {
    c.title = std::string(value);
  } else if (key == "svg-range") {
    const std::vector<double> v = parse_list(key, value);
    if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2])) {
      fail(ErrorKind::InvalidParameter, "svg-range needs xmin,xmax,ymin,ymax with min < max");
    }
    c.svg_range = svg::Viewport{v[0], v[1], v[2], v[3]};
  } else if (key == "timing") {
    c.timing = parse_bool(key, value);
  } else {
    fail(ErrorKind::InvalidParameter, "unknown option '" + std::string(key) + "'");
  }
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig3b", "fig4", "fig5"}; }

void apply_preset(RunConfig& c, std::string_view name) {
  struct Preset {
    std::string_view name;
    SpaceId space;
    std::string_view symbol;
    std::optional<svg::Viewport> range;
  };
  static const Preset presets[] = {
      {"fig1", SpaceId::Fock, "elliptic:zeta=0.5@pi/3", svg::Viewport{-0.1, 1.1, -0.5, 0.7}},
      {"fig2", SpaceId::Fock, "autF:a=1@pi/12,b=0", svg::Viewport{-0.55, 1.1, -0.45, 0.85}},
      {"fig3", SpaceId::Fock, "affine:zeta=0.5,a=1", std::nullopt},
      {"fig3b", SpaceId::Fock, "affine:zeta=0.5,a=10", std::nullopt},
      {"fig4", SpaceId::Dirichlet, "elliptic:zeta=-i", svg::Viewport{-0.05, 1.1, -0.4, 0.2}},
      {"fig5", SpaceId::Dirichlet, "blaschke:alpha=0.5@pi/3", std::nullopt},
  };
  for (const Preset& p : presets) {
    if (p.name != name) continue;
    c.preset = std::string(name);
    c.space = p.space;
    c.symbol = std::string(p.symbol);
    c.svg_range = p.range;
    c.format = Format::Svg;
    return;
  }
  fail(ErrorKind::InvalidParameter, "unknown preset '" + std::string(name) + "' (fig1, fig2, fig3, fig3b, fig4, fig5)");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const std::size_t eq = l.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::ParseError, "config line " + std::to_string(line_no) + ": expected key=value");
    }
    out.emplace_back(std::string(trim(l.substr(0, eq))), std::string(trim(l.substr(eq + 1))));
  }
  return out;
}

RunOutcome run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutcome outcome;
  outcome.report.version = std::string(io::library_version());
  outcome.report.command = std::string(to_string(config.command));
  const auto start = std::chrono::steady_clock::now();
  try {
    config.validate();
    outcome.report.config = config_echo(config);
    switch (config.command) {
      case Command::Range: outcome.exit_code = do_range(config, outcome, out); break;
      case Command::Convexity: outcome.exit_code = do_convexity(config, outcome, out); break;
      case Command::Numrange: outcome.exit_code = do_numrange(config, outcome, out); break;
      case Command::Orbit: outcome.exit_code = do_orbit(config, outcome, out); break;
      case Command::Verify: outcome.exit_code = do_verify(config, outcome, out); break;
    }
    if (config.timing) {
      outcome.report.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    const std::string json = outcome.report.to_json();
    if (config.output.empty()) {
      out << json;
    } else {
      const std::filesystem::path p = config.output + ".json";
      io::write_text(p, json);
      outcome.files.push_back(p);
    }
  } catch (const Error& e) {
    outcome.exit_code = exit_code_for(e.kind());
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    outcome.exit_code = kExitNumeric;
    err << "error: " << e.what() << "\n";
  }
  return outcome;
}

}  // namespace berezin_lab::run
