#include "berezin_lab/cplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/parallel.hpp"

namespace berezin_lab::cplane {
namespace {

bool lex_less(CPoint a, CPoint b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

void require_finite(std::span<const CPoint> points) {
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(points[k].real()) || !std::isfinite(points[k].imag())) {
      fail(ErrorKind::NonFinitePoint, "cloud point " + std::to_string(k) + " is not finite");
    }
  }
}

std::uint64_t meta_seed(const PointCloud& cloud) {
  const auto it = cloud.meta.find("seed");
  if (it == cloud.meta.end()) return 0;
  try {
    return std::stoull(it->second);
  } catch (...) {
    fail(ErrorKind::ParseError, "meta seed '" + it->second + "' is not an unsigned integer");
  }
}

}  // namespace

std::vector<CPoint> convex_hull(std::span<const CPoint> points) {
  if (points.empty()) fail(ErrorKind::EmptyCloud, "convex_hull of an empty cloud");

  std::vector<CPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), lex_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() <= 2) return sorted;

  std::vector<CPoint> hull(2 * sorted.size());
  std::size_t k = 0;
  for (const CPoint& p : sorted) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = sorted.size() - 1; i-- > 0;) {
    const CPoint& p = sorted[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<CPoint> convex_hull(const PointCloud& cloud) { return convex_hull(std::span<const CPoint>(cloud.points)); }

std::pair<CPoint, CPoint> diameter_pair(std::span<const CPoint> points) {
  const auto hull = convex_hull(points);
  const std::size_t h = hull.size();
  if (h == 1) return {hull[0], hull[0]};
  if (h == 2) return {hull[0], hull[1]};

  std::pair<CPoint, CPoint> best{hull[0], hull[1]};
  double best_d = std::abs(hull[0] - hull[1]);
  auto consider = [&](CPoint a, CPoint b) {
    const double d = std::abs(a - b);
    if (d > best_d) {
      best_d = d;
      best = {a, b};
    }
  };
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t ni = (i + 1) % h;
    while (std::abs(cross(hull[i], hull[ni], hull[(j + 1) % h])) > std::abs(cross(hull[i], hull[ni], hull[j]))) {
      j = (j + 1) % h;
    }
    consider(hull[i], hull[j]);
    consider(hull[ni], hull[j]);
  }
  return best;
}

double diameter(std::span<const CPoint> points) {
  const auto [a, b] = diameter_pair(points);
  return std::abs(a - b);
}

bool collinear(CPoint p, CPoint q, CPoint r, double tol) {
  const double scale = std::max({std::norm(q - p), std::norm(r - p), std::norm(r - q)});
  return std::abs(cross(p, q, r)) <= tol * scale;
}

namespace {

constexpr std::size_t kLeafSize = 8;

double coord(CPoint p, int axis) { return axis == 0 ? p.real() : p.imag(); }

}  // namespace

// A k-d tree rather than a grid: Berezin clouds can span many orders of
// magnitude with most points near one spot, which defeats uniform cells.
NearestIndex::NearestIndex(std::span<const CPoint> points) : points_(points.begin(), points.end()) {
  if (points_.empty()) fail(ErrorKind::EmptyCloud, "nearest-point index over an empty cloud");
  require_finite(points_);
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0U);
  build(0, order_.size(), 0);
}

void NearestIndex::build(std::size_t lo, std::size_t hi, int axis) {
  if (hi - lo <= kLeafSize) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = coord(points_[a], axis), cb = coord(points_[b], axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  build(lo, mid, 1 - axis);
  build(mid + 1, hi, 1 - axis);
}

void NearestIndex::search(CPoint q, std::size_t lo, std::size_t hi, int axis, Hit& best, double& best_sq) const {
  const auto consider = [&](std::uint32_t k) {
    const double d = std::norm(points_[k] - q);
    if (d < best_sq || (d == best_sq && k < best.index)) {
      best_sq = d;
      best.index = k;
    }
  };
  if (hi - lo <= kLeafSize) {
    for (std::size_t s = lo; s < hi; ++s) consider(order_[s]);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  consider(order_[mid]);
  const double diff = coord(q, axis) - coord(points_[order_[mid]], axis);
  if (diff < 0.0) {
    search(q, lo, mid, 1 - axis, best, best_sq);
    if (diff * diff <= best_sq) search(q, mid + 1, hi, 1 - axis, best, best_sq);
  } else {
    search(q, mid + 1, hi, 1 - axis, best, best_sq);
    if (diff * diff <= best_sq) search(q, lo, mid, 1 - axis, best, best_sq);
  }
}

NearestIndex::Hit NearestIndex::nearest(CPoint q) const {
  Hit best{0, std::numeric_limits<double>::infinity()};
  double best_sq = std::numeric_limits<double>::infinity();
  search(q, 0, order_.size(), 0, best, best_sq);
  best.distance = std::sqrt(best_sq);
  return best;
}

double hausdorff(std::span<const CPoint> a, std::span<const CPoint> b) {
  if (a.empty() || b.empty()) fail(ErrorKind::EmptyCloud, "hausdorff distance needs two nonempty clouds");
  const auto directed = [](std::span<const CPoint> from, std::span<const CPoint> to) {
    const NearestIndex index(to);
    std::vector<double> d(from.size());
    parallel_for(from.size(), [&](std::size_t k) { d[k] = index.nearest(from[k]).distance; });
    return *std::max_element(d.begin(), d.end());
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  return hausdorff(std::span<const CPoint>(a.points), std::span<const CPoint>(b.points));
}

std::vector<CPoint> densify_polyline(std::span<const CPoint> vertices, double spacing, bool closed) {
  if (vertices.empty()) fail(ErrorKind::EmptyCloud, "densify_polyline of an empty polyline");
  if (!(spacing > 0.0)) fail(ErrorKind::InvalidParameter, "densify spacing must be positive");
  std::vector<CPoint> out;
  const std::size_t n = vertices.size();
  const std::size_t edges = closed ? n : n - 1;
  for (std::size_t e = 0; e < edges; ++e) {
    const CPoint a = vertices[e];
    const CPoint b = vertices[(e + 1) % n];
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(b - a) / spacing)));
    for (std::size_t s = 0; s < steps; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / static_cast<double>(steps)));
  }
  if (!closed || n == 1) out.push_back(vertices[n - 1]);
  return out;
}

double default_tolerance(const PointCloud& cloud) {
  if (cloud.empty()) fail(ErrorKind::EmptyCloud, "default tolerance of an empty cloud");
  const double d = diameter(std::span<const CPoint>(cloud.points));
  if (d > 0.0) return kDefaultRelativeTolerance * d;
  // a single repeated point: any positive tolerance, scaled to its size
  return kDefaultRelativeTolerance * std::max(1.0, std::abs(cloud.points.front()));
}

std::vector<double> default_t_grid() { return {0.25, 0.5, 0.75}; }

ConvexityReport convexity_report(const PointCloud& cloud, double tol, std::size_t n_pairs,
                                 std::span<const double> t_grid) {
  const std::span<const CPoint> pts(cloud.points);
  if (pts.empty()) fail(ErrorKind::EmptyCloud, "convexity_report of an empty cloud");
  require_finite(pts);
  if (!(tol > 0.0)) fail(ErrorKind::InvalidParameter, "convexity tolerance must be positive");
  if (t_grid.empty()) fail(ErrorKind::InvalidParameter, "t_grid must not be empty");
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::InvalidParameter, "t_grid values must lie in (0,1)");
  }

  ConvexityReport report;
  report.tolerance = tol;

  // points and segments are convex; samples only need to lie within tol of one
  const auto [a, b] = diameter_pair(pts);
  double off_line = 0.0;
  const double len = std::abs(b - a);
  if (len > 0.0) {
    for (const CPoint& p : pts) off_line = std::max(off_line, std::abs(cross(a, b, p)) / len);
  }
  if (len <= tol || off_line <= tol) {
    report.degenerate = true;
    report.max_violation = len <= tol ? len : off_line;
    report.verdict = Verdict::Convex;
    return report;
  }

  const std::size_t n = pts.size();
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  if (total <= n_pairs) {
    pairs.reserve(total);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
  } else {
    std::mt19937_64 rng(meta_seed(cloud));
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    pairs.reserve(n_pairs);
    while (pairs.size() < n_pairs) {
      const std::uint32_t i = pick(rng);
      const std::uint32_t j = pick(rng);
      if (i != j) pairs.emplace_back(i, j);
    }
  }

  const NearestIndex index(pts);
  struct PairResult {
    double d = 0.0;
    std::size_t t_index = 0;
  };
  std::vector<PairResult> results(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const CPoint p = pts[pairs[k].first];
    const CPoint q = pts[pairs[k].second];
    PairResult r;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const double d = index.nearest(t * p + (1.0 - t) * q).distance;
      if (d > r.d) r = {d, ti};
    }
    results[k] = r;
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k) {
    if (results[k].d > results[best].d) best = k;
  }
  report.n_samples = pairs.size() * t_grid.size();
  report.max_violation = results.empty() ? 0.0 : results[best].d;
  if (report.max_violation > tol) {
    report.verdict = Verdict::NonConvex;
    Witness w;
    w.i = pairs[best].first;
    w.j = pairs[best].second;
    w.p = pts[w.i];
    w.q = pts[w.j];
    w.t = t_grid[results[best].t_index];
    w.probe = w.t * w.p + (1.0 - w.t) * w.q;
    report.witness = w;
  } else {
    report.verdict = Verdict::Convex;
  }
  return report;
}

ConvexityReport convexity_report(const PointCloud& cloud) {
  const auto t_grid = default_t_grid();
  return convexity_report(cloud, default_tolerance(cloud), kDefaultPairCap, t_grid);
}

}  // namespace berezin_lab::cplane
