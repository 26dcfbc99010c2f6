#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "berezin_lab/cplane.hpp"
#include "berezin_lab/unitorbit.hpp"
#include "test_util.hpp"

using namespace berezin_lab;
using namespace berezin_lab::unitorbit;
using Shape = EllipseParams::Shape;
using test_util::kind_of;

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) { return CMatrix::from_rows({{a, b}, {c, d}}); }

CMatrix random_matrix(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = {g(gen), g(gen)};
  }
  return t;
}

}  // namespace

TEST_CASE("segment case realizes convex combinations of the eigenvalues") {
  const Complex l1(1, 0), l2(0, 1);
  const CMatrix t = m2(l1, 0, 0, l2);
  for (double k : {0.0, 0.25, 0.5, 1.0}) {
    const auto [d1, d2] = orbit_diagonal(t, SegmentCase{k});
    CHECK(std::abs(d1 - (k * l1 + (1 - k) * l2)) < 1e-15);
    CHECK(std::abs(d2 - ((1 - k) * l1 + k * l2)) < 1e-15);
    CHECK(std::abs(d1 + d2 - (l1 + l2)) < 1e-15);
  }
}

TEST_CASE("disc case realizes points at distance r_target from the eigenvalue") {
  const Complex lambda(0.5, -0.25), m = std::polar(2.0, 0.7);
  const CMatrix t = m2(lambda, m, 0, lambda);
  for (double r : {0.0, 0.3, 1.0}) {
    for (double th : {0.0, 1.0, 4.0}) {
      const auto [d1, d2] = orbit_diagonal(t, DiscCase::make(th, r, m));
      CHECK(std::abs(d1 - (lambda + std::polar(r, th))) < 1e-14);
      CHECK(std::abs(d2 - (lambda - std::polar(r, th))) < 1e-14);
    }
  }
  // r_target may overshoot |m|/2 by rounding only
  CHECK(DiscCase::make(0.0, 1.0 + 1e-13, m).alpha_half == doctest::Approx(kPi / 4));
  CHECK(kind_of([&] { DiscCase::make(0.0, 1.1, m); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([&] { DiscCase::make(0.0, 0.0, 0.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("closed forms agree with the numerical diagonal") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex l1(u(gen), u(gen)), l2(u(gen), u(gen));
    const CMatrix seg = m2(l1, 0, 0, l2);
    const SegmentCase s{u(gen)};
    const auto [a1, a2] = orbit_diagonal(seg, s);
    const auto [b1, b2] = orbit_diagonal_closed_form(seg, s);
    CHECK(std::abs(a1 - b1) + std::abs(a2 - b2) < 1e-14);

    const Complex m = std::polar(0.1 + u(gen), kTwoPi * u(gen));
    const CMatrix disc = m2(l1, m, 0, l1);
    const DiscCase d = DiscCase::make(kTwoPi * u(gen), 0.5 * std::abs(m) * u(gen), m);
    const auto [c1, c2] = orbit_diagonal(disc, d);
    const auto [e1, e2] = orbit_diagonal_closed_form(disc, d);
    CHECK(std::abs(c1 - e1) + std::abs(c2 - e2) < 1e-13);

    const double r = u(gen);
    const CMatrix gen_t = m2(r, m, 0, -r);
    const GeneralCase g = GeneralCase::make(0.5 * kPi * u(gen), kTwoPi * u(gen));
    const auto [f1, f2] = orbit_diagonal(gen_t, g);
    const auto [h1, h2] = orbit_diagonal_closed_form(gen_t, g);
    CHECK(std::abs(f1 - h1) + std::abs(f2 - h2) < 1e-13);
    // trace is preserved
    CHECK(std::abs(f1 + f2) < 1e-14);
  }
}

TEST_CASE("family unitaries are unitary") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    CHECK(numrange::unitarity_residual(build_unitary(SegmentCase{u(gen)})) < 1e-15);
    CHECK(numrange::unitarity_residual(build_unitary(DiscCase::make(u(gen) * 6, u(gen), 2.0))) < 1e-15);
    CHECK(numrange::unitarity_residual(build_unitary(GeneralCase::make(u(gen) * 2, u(gen) * 6))) < 1e-15);
  }
}

TEST_CASE("family validation") {
  CHECK(kind_of([] { validate(SegmentCase{1.5}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { validate(SegmentCase{NAN}); }) == ErrorKind::InvalidParameter);
  DiscCase d = DiscCase::make(0.0, 0.5, 2.0);
  d.alpha_half += 0.1;
  CHECK(kind_of([&] { validate(d); }) == ErrorKind::InvalidParameter);
  GeneralCase g = GeneralCase::make(0.3, 0.2);
  g.phase_delta = 0.0;
  CHECK(kind_of([&] { validate(g); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("orbit_diagonal shape errors") {
  CHECK(kind_of([] { orbit_diagonal(m2(1, 0, 1, 2), SegmentCase{0.5}); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(m2(1, 1, 0, 2), SegmentCase{0.5}); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(m2(1, 2, 0, 2), DiscCase::make(0, 0.5, 2.0)); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(m2(1, 3, 0, 1), DiscCase::make(0, 0.5, 2.0)); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(m2(1, 1, 0, 1), GeneralCase::make(0.1, 0)); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(m2(-1, 1, 0, 1), GeneralCase::make(0.1, 0)); }) == ErrorKind::ShapeError);
  CHECK(kind_of([] { orbit_diagonal(CMatrix::identity(3), SegmentCase{0.5}); }) == ErrorKind::ShapeError);
}

TEST_CASE("2x2 orbit cloud fills the elliptic range") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 5; ++i) {
    const CMatrix t = random_matrix(2, gen);
    const PointCloud c = orbit_cloud_2x2(t, 64, 64);
    CHECK(c.size() == 2 * 64 * 64);
    CHECK(c.meta.at("shape") == "ellipse");
    const auto e = numrange::elliptic_params(t);
    double worst = 0.0;
    for (CPoint p : c.points) worst = std::max(worst, e.quadratic_form(p));
    CHECK(worst <= 1.0 + 1e-9);
    // the sweep reaches the boundary
    CHECK(cplane::hausdorff(cplane::convex_hull(c), e.boundary_polygon(256)) < 0.05 * e.major_axis);
  }
}

TEST_CASE("orbit cloud of degenerate shapes") {
  const PointCloud seg = orbit_cloud_2x2(m2(1, 0, 0, Complex(0, 1)), 8, 4);
  CHECK(seg.meta.at("shape") == "segment");
  CHECK(seg.size() == 2 * 32);
  for (CPoint p : seg.points) CHECK(std::abs(p.real() + p.imag() - 1.0) < 1e-15);

  const PointCloud pt = orbit_cloud_2x2(m2(2, 0, 0, 2), 4, 4);
  for (CPoint p : pt.points) CHECK(std::abs(p - 2.0) < 1e-15);

  const PointCloud disc = orbit_cloud_2x2(m2(0, 1, 0, 0), 32, 32);
  CHECK(disc.meta.at("shape") == "circle");
  for (CPoint p : disc.points) CHECK(std::abs(p) <= 0.5 + 1e-14);

  CHECK(kind_of([] { orbit_cloud_2x2(CMatrix::identity(2), 1, 4); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { orbit_cloud_2x2(CMatrix::identity(3), 4, 4); }) == ErrorKind::ShapeError);
}

TEST_CASE("circle family and its envelope") {
  const CircleFamily f{1.0, 2.0, kPi / 2};
  CHECK(std::abs(f.center()) < 1e-15);
  CHECK(f.radius() == doctest::Approx(1.0));
  const CircleFamily g{1.0, 2.0, 0.0};
  CHECK(g.center() == Complex(1.0));
  CHECK(g.radius() == 0.0);

  const auto env = envelope_of_circle_family(1.0, 2.0);
  CHECK(env.semi_major() == doctest::Approx(std::sqrt(2.0)));
  CHECK(env.semi_minor() == doctest::Approx(1.0));
  CHECK(env.shape == Shape::Ellipse);
  CHECK(envelope_of_circle_family(0.0, 2.0).shape == Shape::Circle);
  CHECK(envelope_of_circle_family(1.0, 0.0).shape == Shape::Segment);
  CHECK(envelope_of_circle_family(0.0, 0.0).shape == Shape::Point);
  CHECK(kind_of([] { envelope_of_circle_family(-1.0, 1.0); }) == ErrorKind::InvalidParameter);

  const PointCloud pts = circle_family_points(1.0, 2.0, 90, 90);
  double worst = 0.0;
  for (CPoint p : pts.points) worst = std::max(worst, env.quadratic_form(p));
  CHECK(worst <= 1.0 + 1e-12);
  CHECK(worst >= 0.99);
  CHECK(kind_of([] { circle_family_points(1.0, 2.0, 1, 4); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("haar unitaries are unitary and reproducible") {
  for (std::size_t n : {1u, 2u, 5u, 16u}) {
    const CMatrix u = haar_unitary(n, 42, 7);
    CHECK(numrange::unitarity_residual(u) < 1e-13);
    CHECK(haar_unitary(n, 42, 7).eigen() == u.eigen());
    CHECK(haar_unitary(n, 42, 8).eigen() != u.eigen());
    CHECK(haar_unitary(n, 43, 7).eigen() != u.eigen());
  }
  CHECK(kind_of([] { haar_unitary(0, 1, 0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("haar first-column moments") {
  // |U_00|^2 of a Haar unitary in U(n) has mean 1/n
  const std::size_t n = 4, draws = 4000;
  double sum = 0.0;
  for (std::size_t k = 0; k < draws; ++k) sum += std::norm(haar_unitary(n, 9, k)(0, 0));
  CHECK(sum / draws == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("haar orbit of a scalar matrix is a point") {
  const CMatrix t(Complex(1.5, -0.5) * Eigen::MatrixXcd::Identity(3, 3));
  const PointCloud c = haar_orbit_cloud(t, 100, 1);
  CHECK(c.size() == 300);
  for (CPoint p : c.points) CHECK(std::abs(p - Complex(1.5, -0.5)) < 1e-13);
  CHECK(c.meta.at("kind") == "haar_orbit");
  CHECK(c.meta.at("seed") == "1");
}

TEST_CASE("haar orbit of diag(0, 1) covers [0, 1]") {
  const PointCloud c = haar_orbit_cloud(m2(0, 0, 0, 1), 2000, 3);
  double lo = 1.0, hi = 0.0;
  for (CPoint p : c.points) {
    CHECK(std::abs(p.imag()) < 1e-14);
    lo = std::min(lo, p.real());
    hi = std::max(hi, p.real());
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("haar orbit points lie in the numerical range and are deterministic") {
  std::mt19937_64 gen(4);
  for (std::size_t n : {2u, 3u, 5u}) {
    const CMatrix t = random_matrix(n, gen);
    const PointCloud c = haar_orbit_cloud(t, 500, 11);
    const numrange::SupportTable table(t);
    for (CPoint p : c.points) CHECK(table.excess(p) <= numrange::default_contains_tol(t));
    CHECK(haar_orbit_cloud(t, 500, 11).points == c.points);
  }
  CHECK(kind_of([] { haar_orbit_cloud(CMatrix::identity(1), 10, 0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { haar_orbit_cloud(CMatrix::identity(17), 10, 0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { haar_orbit_cloud(CMatrix::identity(2), 0, 0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("orbit is invariant under unitary similarity") {
  std::mt19937_64 gen(5);
  const CMatrix t = random_matrix(2, gen);
  const CMatrix v = haar_unitary(2, 100, 0);
  const CMatrix s = v.adjoint() * t * v;
  const double d = cplane::hausdorff(orbit_cloud_2x2(t, 128, 128).points, orbit_cloud_2x2(s, 128, 128).points);
  CHECK(d < 0.05 * (1.0 + t.frobenius_norm()));
}
