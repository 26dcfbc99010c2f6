#include "berezin_lab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/io.hpp"

namespace berezin_lab::svg {
namespace {

constexpr double kPlotLeft = 80.0;
constexpr double kPlotTop = 50.0;
constexpr double kPlotSize = 680.0;

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string px(double x) { return fmt("%.2f", x); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

Viewport square_up(Viewport v) {
  const double cx = 0.5 * (v.x_min + v.x_max);
  const double cy = 0.5 * (v.y_min + v.y_max);
  const double half = 0.5 * std::max(v.x_max - v.x_min, v.y_max - v.y_min);
  return {cx - half, cx + half, cy - half, cy + half};
}

double tick_step(double span) {
  const double raw = span / 6.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * base >= raw) return m * base;
  }
  return 10.0 * base;
}

std::string default_title(const PointCloud& cloud) {
  const auto get = [&](const char* k) {
    const auto it = cloud.meta.find(k);
    return it == cloud.meta.end() ? std::string() : it->second;
  };
  if (!get("symbol_text").empty()) return "Ber(C_phi) on " + get("space") + ", " + get("symbol_text");
  if (!get("kind").empty()) return get("kind");
  return "point cloud";
}

}  // namespace

Viewport auto_fit(const std::vector<CPoint>& points) {
  if (points.empty()) return {-1.0, 1.0, -1.0, 1.0};
  Viewport v{points[0].real(), points[0].real(), points[0].imag(), points[0].imag()};
  for (const CPoint& p : points) {
    v.x_min = std::min(v.x_min, p.real());
    v.x_max = std::max(v.x_max, p.real());
    v.y_min = std::min(v.y_min, p.imag());
    v.y_max = std::max(v.y_max, p.imag());
  }
  v = square_up(v);
  double half = 0.5 * (v.x_max - v.x_min);
  if (half <= 0.0) half = std::max(1e-3, 1e-3 * std::abs(v.x_min));
  half *= 1.05;
  const double cx = 0.5 * (v.x_min + v.x_max);
  const double cy = 0.5 * (v.y_min + v.y_max);
  return {cx - half, cx + half, cy - half, cy + half};
}

std::string render(const PointCloud& cloud, const PlotOptions& options) {
  const Viewport v = options.range ? square_up(*options.range) : auto_fit(cloud.points);
  if (!(v.x_max > v.x_min) || !std::isfinite(v.x_min) || !std::isfinite(v.x_max)) {
    fail(ErrorKind::InvalidParameter, "SVG range must be finite and nonempty");
  }
  const double scale = kPlotSize / (v.x_max - v.x_min);
  const auto sx = [&](double x) { return kPlotLeft + (x - v.x_min) * scale; };
  const auto sy = [&](double y) { return kPlotTop + (v.y_max - y) * scale; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(options.title.empty() ? default_title(cloud) : options.title) + "</text>\n";
  out += "<rect x=\"" + px(kPlotLeft) + "\" y=\"" + px(kPlotTop) + "\" width=\"" + px(kPlotSize) + "\" height=\"" +
         px(kPlotSize) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const double step = tick_step(v.x_max - v.x_min);
  out += "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"black\">\n";
  for (double t = std::ceil(v.x_min / step) * step; t <= v.x_max + 1e-9 * step; t += step) {
    const double x = sx(t);
    const double label = std::abs(t) < 1e-9 * step ? 0.0 : t;
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(kPlotTop + kPlotSize) + "\" x2=\"" + px(x) + "\" y2=\"" +
           px(kPlotTop + kPlotSize + 6) + "\"/>";
    out += "<text x=\"" + px(x) + "\" y=\"" + px(kPlotTop + kPlotSize + 20) + "\" text-anchor=\"middle\" stroke=\"none\">" +
           fmt("%g", label) + "</text>\n";
  }
  for (double t = std::ceil(v.y_min / step) * step; t <= v.y_max + 1e-9 * step; t += step) {
    const double y = sy(t);
    const double label = std::abs(t) < 1e-9 * step ? 0.0 : t;
    out += "<line x1=\"" + px(kPlotLeft - 6) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kPlotLeft) + "\" y2=\"" + px(y) + "\"/>";
    out += "<text x=\"" + px(kPlotLeft - 10) + "\" y=\"" + px(y + 4) + "\" text-anchor=\"end\" stroke=\"none\">" +
           fmt("%g", label) + "</text>\n";
  }
  out += "</g>\n";

  const auto polyline = [&](const std::vector<CPoint>& pts, const char* colour) {
    if (pts.empty()) return;
    out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i <= pts.size(); ++i) {
      const CPoint& p = pts[i % pts.size()];
      if (i) out += ' ';
      out += px(sx(p.real())) + "," + px(sy(p.imag()));
    }
    out += "\"/>\n";
  };

  if (options.connect_points) polyline(cloud.points, "steelblue");
  out += "<g fill=\"steelblue\">\n";
  for (const CPoint& p : cloud.points) {
    out += "<circle cx=\"" + px(sx(p.real())) + "\" cy=\"" + px(sy(p.imag())) + "\" r=\"1\"/>\n";
  }
  out += "</g>\n";
  if (options.hull) polyline(*options.hull, "firebrick");
  out += "</svg>\n";
  return out;
}

void write_svg(const PointCloud& cloud, const PlotOptions& options, const std::filesystem::path& path) {
  io::write_text(path, render(cloud, options));
}

}  // namespace berezin_lab::svg
