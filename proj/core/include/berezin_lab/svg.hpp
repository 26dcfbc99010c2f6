#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "berezin_lab/types.hpp"

namespace berezin_lab::svg {

struct Viewport {
  double x_min, x_max, y_min, y_max;
};

struct PlotOptions {
  std::string title;  // empty: built from cloud meta
  std::optional<std::vector<CPoint>> hull;
  bool connect_points = false;  // draw the cloud itself as a closed polyline
  std::optional<Viewport> range;  // empty: auto-fit with a 5% margin
};

inline constexpr int kCanvasSize = 800;

/// Equal-aspect range that contains every point plus a 5% margin.
Viewport auto_fit(const std::vector<CPoint>& points);

std::string render(const PointCloud& cloud, const PlotOptions& options);
void write_svg(const PointCloud& cloud, const PlotOptions& options, const std::filesystem::path& path);

}  // namespace berezin_lab::svg
