#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "berezin_lab/cplane.hpp"
#include "berezin_lab/errors.hpp"
#include "berezin_lab/parallel.hpp"

using namespace berezin_lab;
using cplane::Verdict;

namespace {

PointCloud cloud_of(std::vector<CPoint> pts) {
  PointCloud c;
  c.points = std::move(pts);
  return c;
}

std::vector<CPoint> random_points(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<CPoint> out(n);
  for (auto& p : out) p = {g(gen), g(gen)};
  return out;
}

bool same_set(std::vector<CPoint> a, std::vector<CPoint> b) {
  const auto lex = [](CPoint x, CPoint y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  return a == b;
}

double brute_hausdorff(const std::vector<CPoint>& a, const std::vector<CPoint>& b) {
  const auto directed = [](const std::vector<CPoint>& x, const std::vector<CPoint>& y) {
    double worst = 0.0;
    for (CPoint p : x) {
      double best = INFINITY;
      for (CPoint q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

TEST_CASE("hull drops interior points") {
  const auto hull = cplane::convex_hull(cloud_of({{0, 0}, {1, 0}, {0, 1}, {0.25, 0.25}}));
  REQUIRE(hull.size() == 3);
  CHECK(hull[0] == CPoint(0, 0));
  CHECK(hull[1] == CPoint(1, 0));
  CHECK(hull[2] == CPoint(0, 1));
}

TEST_CASE("hull of degenerate clouds") {
  CHECK(cplane::convex_hull(cloud_of({{0, 0}})) == std::vector<CPoint>{{0, 0}});
  CHECK(cplane::convex_hull(cloud_of({{2, 1}, {2, 1}, {2, 1}})).size() == 1);
  const auto seg = cplane::convex_hull(cloud_of({{0, 0}, {1, 1}, {3, 3}, {2, 2}}));
  REQUIRE(seg.size() == 2);
  CHECK(same_set(seg, {{0, 0}, {3, 3}}));
  CHECK_THROWS_AS(cplane::convex_hull(cloud_of({})), Error);
}

TEST_CASE("hull drops collinear boundary points") {
  const auto hull = cplane::convex_hull(cloud_of({{0, 0}, {0.5, 0}, {1, 0}, {1, 0.5}, {1, 1}, {0.5, 1}, {0, 1}, {0, 0.5}}));
  CHECK(same_set(hull, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("every point of a circle sample is a hull vertex") {
  std::vector<CPoint> pts;
  for (int k = 0; k < 100; ++k) pts.push_back(std::polar(1.0, kTwoPi * k / 100));
  const auto hull = cplane::convex_hull(cloud_of(pts));
  CHECK(hull.size() == 100);
  // brute force: every edge has the whole cloud on its left
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const CPoint a = hull[i], b = hull[(i + 1) % hull.size()];
    for (CPoint p : pts) CHECK(cplane::cross(a, b, p) >= -1e-12);
  }
}

TEST_CASE("hull idempotence and containment on random clouds") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const auto pts = random_points(500, seed);
    const auto hull = cplane::convex_hull(cloud_of(pts));
    CHECK(same_set(cplane::convex_hull(hull), hull));
    double scale = 0.0;
    for (CPoint p : pts) scale = std::max(scale, std::norm(p));
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const CPoint a = hull[i], b = hull[(i + 1) % hull.size()];
      for (CPoint p : pts) REQUIRE(cplane::cross(a, b, p) >= -1e-12 * scale);
    }
  }
}

TEST_CASE("diameter matches brute force") {
  const auto pts = random_points(300, 7);
  double best = 0.0;
  for (CPoint p : pts) {
    for (CPoint q : pts) best = std::max(best, std::abs(p - q));
  }
  CHECK(cplane::diameter(pts) == doctest::Approx(best).epsilon(1e-15));
  CHECK(cplane::diameter(std::vector<CPoint>{{1, 1}}) == 0.0);
}

TEST_CASE("collinear") {
  CHECK(cplane::collinear({0, 0}, {1, 0}, {2, 0}, 0.0));
  CHECK(cplane::collinear({0, 0}, {0, 0}, {5, 5}, 0.0));
  const double a = 0.3, b = 1.0, rho2 = kPi;
  const CPoint p{1, 0};
  const CPoint q = std::exp(a) * CPoint(std::cos(b), std::sin(b));
  const CPoint r = std::exp(a * rho2) * CPoint(std::cos(b * rho2), std::sin(b * rho2));
  CHECK_FALSE(cplane::collinear(p, q, r, 1e-9));
  CHECK(cplane::collinear({0, 0}, {1, 0}, {2, 1e-10}, 1e-9));
}

TEST_CASE("hausdorff examples") {
  const auto pts = random_points(50, 3);
  CHECK(cplane::hausdorff(pts, pts) == 0.0);
  CHECK(cplane::hausdorff(std::vector<CPoint>{{0, 0}}, std::vector<CPoint>{{3, 4}}) == doctest::Approx(5.0));
  std::vector<CPoint> seg;
  for (int i = 0; i <= 1000; ++i) seg.emplace_back(i / 1000.0, 0.0);
  CHECK(cplane::hausdorff(seg, std::vector<CPoint>{{0, 0}, {1, 0}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(cplane::hausdorff(std::vector<CPoint>{}, pts), Error);
}

TEST_CASE("hausdorff is symmetric, obeys the triangle inequality and matches brute force") {
  for (unsigned seed = 10; seed < 20; ++seed) {
    const auto a = random_points(120, seed);
    const auto b = random_points(80, seed + 100);
    auto c = random_points(60, seed + 200);
    for (auto& p : c) p *= 3.0;
    const double ab = cplane::hausdorff(a, b), ba = cplane::hausdorff(b, a);
    CHECK(ab == ba);
    CHECK(ab == doctest::Approx(brute_hausdorff(a, b)).epsilon(1e-14));
    CHECK(cplane::hausdorff(a, c) <= ab + cplane::hausdorff(b, c) + 1e-12);
  }
}

TEST_CASE("nearest index agrees with brute force, including far queries") {
  const auto pts = random_points(2000, 5);
  const cplane::NearestIndex index(pts);
  const auto queries = random_points(300, 6);
  for (CPoint q0 : queries) {
    for (double s : {0.5, 1.0, 20.0}) {
      const CPoint q = s * q0;
      double best = INFINITY;
      for (CPoint p : pts) best = std::min(best, std::abs(p - q));
      CHECK(index.nearest(q).distance == doctest::Approx(best).epsilon(1e-14));
    }
  }
}

TEST_CASE("densify_polyline keeps vertices and bounds spacing") {
  const std::vector<CPoint> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto dense = cplane::densify_polyline(square, 0.01, true);
  for (std::size_t i = 0; i < dense.size(); ++i) {
    CHECK(std::abs(dense[(i + 1) % dense.size()] - dense[i]) <= 0.01 + 1e-15);
  }
  for (CPoint v : square) CHECK(std::find(dense.begin(), dense.end(), v) != dense.end());
  const auto open = cplane::densify_polyline(std::vector<CPoint>{{0, 0}, {1, 0}}, 0.1, false);
  CHECK(open.front() == CPoint(0, 0));
  CHECK(open.back() == CPoint(1, 0));
  CHECK_THROWS_AS(cplane::densify_polyline(square, 0.0, true), Error);
}

TEST_CASE("convexity: segment is convex, circle is not") {
  std::vector<CPoint> seg;
  for (int i = 0; i < 1000; ++i) seg.emplace_back(i / 999.0, 0.0);
  const auto r1 = cplane::convexity_report(cloud_of(seg), 1e-3, cplane::kDefaultPairCap, cplane::default_t_grid());
  CHECK(r1.verdict == Verdict::Convex);
  CHECK_FALSE(r1.witness);

  std::vector<CPoint> circ;
  for (int i = 0; i < 1000; ++i) circ.push_back(std::polar(1.0, kTwoPi * i / 1000));
  const auto r2 = cplane::convexity_report(cloud_of(circ), 1e-3, cplane::kDefaultPairCap, cplane::default_t_grid());
  CHECK(r2.verdict == Verdict::NonConvex);
  CHECK(r2.max_violation == doctest::Approx(1.0).epsilon(0.02));
  REQUIRE(r2.witness);
  CHECK(std::abs(r2.witness->probe) < 0.02);
  CHECK(std::abs(r2.witness->t * r2.witness->p + (1 - r2.witness->t) * r2.witness->q - r2.witness->probe) < 1e-15);
}

TEST_CASE("convexity verdict, violation and witness are consistent") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    const PointCloud c = cloud_of(random_points(400, seed));
    for (double tol : {1e-3, 0.05, 0.3, 5.0}) {
      const auto r = cplane::convexity_report(c, tol, 5000, cplane::default_t_grid());
      CHECK((r.verdict == Verdict::NonConvex) == (r.max_violation > tol));
      CHECK(r.witness.has_value() == (r.verdict == Verdict::NonConvex));
      CHECK(r.tolerance == tol);
    }
  }
}

TEST_CASE("convexity is deterministic for a seed and varies with it") {
  PointCloud c = cloud_of(random_points(1000, 2));
  c.meta["seed"] = "17";
  const auto a = cplane::convexity_report(c, 1e-3, 3000, cplane::default_t_grid());
  const auto b = cplane::convexity_report(c, 1e-3, 3000, cplane::default_t_grid());
  CHECK(a.max_violation == b.max_violation);
  CHECK(a.witness->i == b.witness->i);
  c.meta["seed"] = "18";
  const auto d = cplane::convexity_report(c, 1e-3, 3000, cplane::default_t_grid());
  CHECK(d.n_samples == a.n_samples);
  c.meta["seed"] = "x";
  CHECK_THROWS_AS(cplane::convexity_report(c, 1e-3, 3000, cplane::default_t_grid()), Error);
}

TEST_CASE("hull, midpoints and dense fill of a segment are convex at 1e-6 diameter") {
  std::vector<CPoint> pts{{-1, -2}, {3, 6}};
  const CPoint a = pts[0], b = pts[1];
  for (int i = 1; i < 4096; ++i) pts.push_back(a + (b - a) * (i / 4096.0));
  const PointCloud c = cloud_of(pts);
  const double diam = cplane::diameter(pts);
  const auto r = cplane::convexity_report(c, 1e-6 * diam, cplane::kDefaultPairCap, cplane::default_t_grid());
  CHECK(r.verdict == Verdict::Convex);
}

TEST_CASE("lattice fill of a convex polygon is convex at the fill spacing") {
  // a square lattice of spacing h is within h / sqrt(2) of every point it spans
  const double h = 0.01;
  std::vector<CPoint> pts;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const CPoint p(i * h, j * h);
      if (p.real() + p.imag() <= 1.0 + 1e-12) pts.push_back(p);
    }
  }
  // hypotenuse midpoints sit exactly h / sqrt(2) away, so allow for rounding
  const double tol = h / std::sqrt(2.0) * (1.0 + 1e-9);
  const auto r = cplane::convexity_report(cloud_of(pts), tol, cplane::kDefaultPairCap, cplane::default_t_grid());
  CHECK(r.verdict == Verdict::Convex);
  CHECK_FALSE(r.degenerate);
}

TEST_CASE("degenerate clouds report convex") {
  const auto point = cplane::convexity_report(cloud_of({{2, 2}, {2, 2}, {2, 2}}));
  CHECK(point.verdict == Verdict::Convex);
  CHECK(point.degenerate);
  const auto line = cplane::convexity_report(cloud_of({{0, 0}, {1, 1}, {3, 3}, {10, 10}}));
  CHECK(line.verdict == Verdict::Convex);
  CHECK(line.degenerate);
}

TEST_CASE("convexity error paths") {
  CHECK_THROWS_AS(cplane::convexity_report(cloud_of({})), Error);
  try {
    cplane::convexity_report(cloud_of({{0, 0}, {1, 0}, {NAN, 0}}));
    FAIL("expected NonFinitePoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinitePoint);
  }
  const PointCloud c = cloud_of(random_points(10, 1));
  const std::vector<double> bad_t{0.0, 0.5};
  CHECK_THROWS_AS(cplane::convexity_report(c, 0.0, 10, cplane::default_t_grid()), Error);
  CHECK_THROWS_AS(cplane::convexity_report(c, 1e-3, 10, bad_t), Error);
}

TEST_CASE("parallel_for result and error order do not depend on worker count") {
  std::vector<double> ref(1000);
  parallel_for(1000, [&](std::size_t i) { ref[i] = std::sin(static_cast<double>(i)); }, 1);
  for (std::size_t w : {2u, 3u, 8u}) {
    std::vector<double> out(1000);
    parallel_for(1000, [&](std::size_t i) { out[i] = std::sin(static_cast<double>(i)); }, w);
    CHECK(out == ref);
    try {
      parallel_for(1000, [](std::size_t i) {
        if (i == 700 || i == 250 || i == 999) throw std::runtime_error(std::to_string(i));
      }, w);
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "250");
    }
  }
}
