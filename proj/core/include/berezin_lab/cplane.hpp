#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "berezin_lab/types.hpp"

namespace berezin_lab::cplane {

/// z-component of (a - o) x (b - o); positive for a counterclockwise turn.
inline double cross(CPoint o, CPoint a, CPoint b) noexcept {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

/// Convex hull by monotone chain, counterclockwise, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped;
/// degenerate input yields a 1- or 2-vertex hull.
std::vector<CPoint> convex_hull(std::span<const CPoint> points);
std::vector<CPoint> convex_hull(const PointCloud& cloud);

/// Farthest pair of points (rotating calipers over the hull).
std::pair<CPoint, CPoint> diameter_pair(std::span<const CPoint> points);
double diameter(std::span<const CPoint> points);

bool collinear(CPoint p, CPoint q, CPoint r, double tol);

/// Uniform bucket grid for nearest-point queries.
class NearestIndex {
 public:
  explicit NearestIndex(std::span<const CPoint> points);

  struct Hit {
    std::size_t index;
    double distance;
  };
  Hit nearest(CPoint q) const;

 private:
  void build(std::size_t lo, std::size_t hi, int axis);
  void search(CPoint q, std::size_t lo, std::size_t hi, int axis, Hit& best, double& best_sq) const;

  std::vector<CPoint> points_;
  std::vector<std::uint32_t> order_;  // implicit k-d tree, median at the middle of each range
};

double hausdorff(std::span<const CPoint> a, std::span<const CPoint> b);
double hausdorff(const PointCloud& a, const PointCloud& b);

/// Resamples a polyline so that consecutive points are at most `spacing`
/// apart. A closed polyline also gets its last-to-first edge.
std::vector<CPoint> densify_polyline(std::span<const CPoint> vertices, double spacing, bool closed);

enum class Verdict { Convex, NonConvex };

struct Witness {
  std::size_t i = 0;  // cloud indices of the pair
  std::size_t j = 0;
  CPoint p;
  CPoint q;
  double t = 0.5;
  CPoint probe;  // t*p + (1-t)*q
};

struct ConvexityReport {
  Verdict verdict = Verdict::Convex;
  double max_violation = 0.0;
  std::optional<Witness> witness;
  double tolerance = 0.0;
  std::size_t n_samples = 0;  // convex combinations evaluated
  bool degenerate = false;    // point or segment shortcut taken
};

inline constexpr std::size_t kDefaultPairCap = 200000;
inline constexpr double kDefaultRelativeTolerance = 1e-3;

/// 1e-3 times the cloud diameter; 1e-3 max(1, |p|) for a single point.
double default_tolerance(const PointCloud& cloud);
std::vector<double> default_t_grid();

/// Sampled convexity test: for each sampled pair (p, q) and each t, the
/// distance from t*p + (1-t)*q to the nearest cloud point. Pairs are all
/// pairs when there are at most n_pairs of them, otherwise a seeded draw
/// (seed taken from meta["seed"], default 0).
ConvexityReport convexity_report(const PointCloud& cloud, double tol, std::size_t n_pairs,
                                 std::span<const double> t_grid);
ConvexityReport convexity_report(const PointCloud& cloud);

}  // namespace berezin_lab::cplane
