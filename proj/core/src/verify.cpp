#include "berezin_lab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>

#include "berezin_lab/berezin.hpp"
#include "berezin_lab/cplane.hpp"
#include "berezin_lab/errors.hpp"
#include "berezin_lab/numrange.hpp"
#include "berezin_lab/unitorbit.hpp"

namespace berezin_lab::verify {

using berezin::ConvexityClass;
using berezin::SamplingGrid;
using kernels::SpaceId;
using numrange::CMatrix;

namespace {

constexpr Criterion kCriteria[] = {
    {1, "Fock closed forms"},
    {2, "Dirichlet elliptic closed form"},
    {3, "Blaschke decomposition reconstruction"},
    {4, "Blaschke conjugate symmetry"},
    {5, "Fock elliptic convexity concordance"},
    {6, "Dirichlet elliptic convexity concordance"},
    {7, "Blaschke range convexity"},
    {8, "Blaschke radial restriction limit"},
    {9, "Blaschke boundary decay"},
    {10, "Elliptic range of 2x2 matrices"},
    {11, "Orbit sweep covers the elliptic disc"},
    {12, "Unitary family unitarity"},
    {13, "Circle family envelope"},
    {14, "Orbit points lie in the numerical range"},
    {15, "Haar orbit fills the numerical range"},
    {16, "Spiral non-collinearity"},
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

class Draws {
 public:
  Draws(std::uint64_t seed, int id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(id)};
    gen_.seed(seq);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return normal_(gen_); }
  Complex gaussian(double variance) { return std::sqrt(0.5 * variance) * Complex(normal(), normal()); }
  /// Uniform in the annulus lo <= |z| <= hi.
  Complex in_annulus(double lo, double hi) {
    const double r = std::sqrt(uniform(lo * lo, hi * hi));
    return std::polar(r, uniform(0.0, kTwoPi));
  }
  Complex on_circle() { return std::polar(1.0, uniform(0.0, kTwoPi)); }

  CMatrix gaussian_matrix(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = gaussian(1.0 / static_cast<double>(n));
    }
    return CMatrix(std::move(m));
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

io::CriterionResult result(int id, bool pass, std::string detail) {
  io::CriterionResult r;
  r.id = id;
  for (const Criterion& c : kCriteria) {
    if (c.id == id) r.name = std::string(c.name);
  }
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

ConvexityClass as_class(cplane::Verdict v) {
  return v == cplane::Verdict::Convex ? ConvexityClass::Convex : ConvexityClass::NonConvex;
}

/// Detector and classification verdicts for one symbol; empty string when both
/// match `expected`.
std::string concordance(SpaceId space, const symbols::SymbolSpec& sym, const SamplingGrid& grid, ConvexityClass expected,
                        std::size_t& min_points) {
  const PointCloud cloud = berezin::sample_range(space, sym, grid);
  min_points = std::min(min_points, cloud.size());
  const cplane::ConvexityReport rep = cplane::convexity_report(cloud);
  const berezin::ConvexityVerdict theory = berezin::classify_convexity(space, sym);
  const ConvexityClass detected = as_class(rep.verdict);
  if (detected == expected && theory.verdict == expected) return {};
  return symbols::format_symbol(sym) + " detector=" + std::string(berezin::to_string(detected)) +
         " theory=" + std::string(berezin::to_string(theory.verdict)) + " violation/diam=" +
         sci(rep.max_violation / std::max(1e-300, rep.tolerance / cplane::kDefaultRelativeTolerance));
}

std::vector<CPoint> densified_hull(const PointCloud& cloud, double spacing) {
  const std::vector<CPoint> hull = cplane::convex_hull(cloud);
  return cplane::densify_polyline(hull, spacing, true);
}

}  // namespace

struct Suite::Cache {
  struct Orbit {
    std::string label;
    CMatrix t;
    PointCloud cloud;
  };
  std::optional<std::vector<Orbit>> orbits;  // criterion 11 sweeps
  std::optional<std::vector<Orbit>> haar;    // criterion 15 clouds
};

Suite::Suite(std::uint64_t seed) : seed_(seed), cache_(std::make_unique<Cache>()) {}
Suite::~Suite() = default;

std::span<const Criterion> criteria() { return kCriteria; }

namespace {

io::CriterionResult c01(std::uint64_t seed) {
  Draws d(seed, 1);
  double worst_elliptic = 0.0;
  double worst_affine = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex zeta = d.in_annulus(0.0, 1.0);
    const Complex z = d.in_annulus(0.0, 4.0);
    const Complex direct = berezin::berezin_transform(SpaceId::Fock, symbols::DiscRotation{zeta}, z);
    worst_elliptic = std::max(worst_elliptic, std::abs(direct - berezin::closed_form_fock_elliptic(zeta, z)));

    // bounded affine parameters: |zeta| <= 0.99, |a| <= 2
    const Complex zeta_a = d.in_annulus(0.0, 0.99);
    const Complex a = d.in_annulus(0.0, 2.0);
    const Complex b = berezin::berezin_transform(SpaceId::Fock, symbols::FockAffine{zeta_a, a}, z);
    const Complex closed = berezin::closed_form_fock_affine(zeta_a, a, z);
    worst_affine = std::max(worst_affine, std::abs(b - closed) / std::max(1.0, std::abs(closed)));
  }
  const bool pass = worst_elliptic < 1e-12 && worst_affine < 1e-12;
  return result(1, pass, "elliptic max abs err " + sci(worst_elliptic) + ", affine max rel err " + sci(worst_affine));
}

io::CriterionResult c02(std::uint64_t seed) {
  Draws d(seed, 2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex zeta = d.on_circle();
    const Complex z = d.in_annulus(0.0, 0.999);
    const Complex direct = berezin::berezin_transform(SpaceId::Dirichlet, symbols::DiscRotation{zeta}, z);
    const Complex closed = berezin::closed_form_dirichlet_elliptic(zeta, z);
    worst = std::max(worst, std::abs(direct - closed) / std::abs(closed));
  }
  return result(2, worst < 1e-10, "max rel err " + sci(worst));
}

io::CriterionResult c03(std::uint64_t seed) {
  Draws d(seed, 3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex alpha = d.in_annulus(0.0, 0.9);
    const Complex z = d.in_annulus(0.01, 0.999);
    const Complex direct = berezin::berezin_transform(SpaceId::Dirichlet, symbols::Blaschke{alpha}, z);
    const Complex assembled = berezin::blaschke_decomposition(alpha, z).assemble();
    worst = std::max(worst, std::abs(direct - assembled) / std::max(1.0, std::abs(direct)));
  }
  return result(3, worst < 1e-10, "max err " + sci(worst));
}

io::CriterionResult c04(std::uint64_t seed) {
  Draws d(seed, 4);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex alpha = d.in_annulus(0.01, 0.9);
    const double r = d.uniform(0.01, 0.999);
    const double theta = d.uniform(0.0, kTwoPi);
    worst = std::max(worst, berezin::conjugate_symmetry_residual(alpha, r, theta));
  }
  return result(4, worst < 1e-12, "max residual " + sci(worst));
}

io::CriterionResult c05() {
  const SamplingGrid grid = SamplingGrid::fock_default();
  std::size_t min_points = SIZE_MAX;
  std::vector<std::string> misses;
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    auto m = concordance(SpaceId::Fock, symbols::DiscRotation{x}, grid, ConvexityClass::Convex, min_points);
    if (!m.empty()) misses.push_back(m);
  }
  for (Complex zeta : {Complex(0, 1), Complex(0, -1), std::polar(0.5, kPi / 3), std::polar(1.0, 0.75 * kPi)}) {
    auto m = concordance(SpaceId::Fock, symbols::DiscRotation{zeta}, grid, ConvexityClass::NonConvex, min_points);
    if (!m.empty()) misses.push_back(m);
  }
  const bool pass = misses.empty() && min_points >= 20000;
  std::string detail = "9 symbols, min cloud " + std::to_string(min_points) + " points";
  for (const auto& m : misses) detail += "; mismatch " + m;
  return result(5, pass, detail);
}

io::CriterionResult c06() {
  const SamplingGrid grid = SamplingGrid::dirichlet_default();
  std::size_t min_points = SIZE_MAX;
  std::vector<std::string> misses;
  for (double x : {-1.0, 1.0}) {
    auto m = concordance(SpaceId::Dirichlet, symbols::DiscRotation{x}, grid, ConvexityClass::Convex, min_points);
    if (!m.empty()) misses.push_back(m);
  }
  for (Complex zeta : {Complex(0, -1), std::polar(1.0, kPi / 3), std::polar(1.0, 0.4)}) {
    auto m = concordance(SpaceId::Dirichlet, symbols::DiscRotation{zeta}, grid, ConvexityClass::NonConvex, min_points);
    if (!m.empty()) misses.push_back(m);
  }
  std::string detail = "5 symbols, min cloud " + std::to_string(min_points) + " points";
  for (const auto& m : misses) detail += "; mismatch " + m;
  return result(6, misses.empty(), detail);
}

io::CriterionResult c07() {
  const SamplingGrid grid = SamplingGrid::dirichlet_default();
  const PointCloud identity = berezin::sample_range(SpaceId::Dirichlet, symbols::Blaschke{0.0}, grid);
  double spread = 0.0;
  for (const CPoint& p : identity.points) spread = std::max(spread, std::abs(p - 1.0));
  std::size_t min_points = SIZE_MAX;
  std::vector<std::string> misses;
  for (Complex alpha : {std::polar(0.5, kPi / 3), Complex(0.3, 0.0), Complex(0.0, 0.7)}) {
    auto m = concordance(SpaceId::Dirichlet, symbols::Blaschke{alpha}, grid, ConvexityClass::NonConvex, min_points);
    if (!m.empty()) misses.push_back(m);
  }
  std::string detail = "alpha=0 max |B-1| " + sci(spread);
  for (const auto& m : misses) detail += "; mismatch " + m;
  return result(7, spread < 1e-12 && misses.empty(), detail);
}

io::CriterionResult c08() {
  const Complex alpha = 0.5;
  const double a2 = std::norm(alpha);
  std::vector<double> values;
  double imag = 0.0;
  for (int k = 1; k <= 6; ++k) {
    const double r = std::sqrt((1.0 - std::pow(10.0, -k)) / a2);
    const Complex v = berezin::blaschke_radial_restriction(alpha, r);
    values.push_back(v.real());
    imag = std::max(imag, std::abs(v.imag()));
  }
  bool increasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) increasing = increasing && values[i] > values[i - 1];
  const double gap = std::abs(values.back() - 1.0);
  std::string detail = "values";
  for (double v : values) detail += " " + sci(v);
  detail += ", |last-1| " + sci(gap) + (increasing ? ", increasing" : ", not increasing");
  return result(8, gap < 0.06 && increasing && imag == 0.0, detail);
}

io::CriterionResult c09() {
  const Complex alpha = std::polar(0.5, kPi / 3);
  const double psi = std::arg(alpha);
  bool decreasing = true;
  double last_max = 0.0;
  for (double offset : {0.25 * kPi, 0.5 * kPi, 0.75 * kPi}) {
    double prev = INFINITY;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
      const Complex z = std::polar(1.0 - eps, psi + offset);
      const double mag = std::abs(berezin::berezin_transform(SpaceId::Dirichlet, symbols::Blaschke{alpha}, z));
      decreasing = decreasing && mag < prev;
      prev = mag;
    }
    last_max = std::max(last_max, prev);
  }
  return result(9, decreasing && last_max < 0.25,
                "max |B| at rho=1-1e-8: " + sci(last_max) + (decreasing ? ", decreasing" : ", not decreasing"));
}

io::CriterionResult c10(std::uint64_t seed) {
  Draws d(seed, 10);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CMatrix t = d.gaussian_matrix(2);
    const numrange::EllipseParams e = numrange::elliptic_params(t);
    for (int k = 0; k < 64; ++k) {
      const Complex p = numrange::support_boundary_point(t, kTwoPi * k / 64.0);
      worst = std::max(worst, std::abs(e.quadratic_form(p) - 1.0));
    }
  }
  int degenerate_ok = 0;
  int degenerate_total = 0;
  for (int i = 0; i < 20; ++i) {
    const CMatrix u = unitorbit::haar_unitary(2, seed, 1000 + i);
    const CMatrix g = d.gaussian_matrix(2);
    const CMatrix herm(0.5 * (g.eigen() + g.eigen().adjoint()));
    ++degenerate_total;
    if (numrange::elliptic_params(herm).shape == numrange::EllipseParams::Shape::Segment) ++degenerate_ok;

    Eigen::MatrixXcd tri = Eigen::MatrixXcd::Zero(2, 2);
    tri(0, 0) = tri(1, 1) = d.gaussian(1.0);
    tri(0, 1) = d.gaussian(1.0);
    const CMatrix circle(u.eigen() * tri * u.eigen().adjoint());
    ++degenerate_total;
    if (numrange::elliptic_params(circle).shape == numrange::EllipseParams::Shape::Circle) ++degenerate_ok;
  }
  return result(10, worst < 1e-9 && degenerate_ok == degenerate_total,
                "max |q-1| " + sci(worst) + " over 6400 points, degenerate " + std::to_string(degenerate_ok) + "/" +
                    std::to_string(degenerate_total));
}

}  // namespace

io::CriterionResult Suite::run(int id) {
  const auto start = std::chrono::steady_clock::now();
  io::CriterionResult r;
  try {
    switch (id) {
      case 1: r = c01(seed_); break;
      case 2: r = c02(seed_); break;
      case 3: r = c03(seed_); break;
      case 4: r = c04(seed_); break;
      case 5: r = c05(); break;
      case 6: r = c06(); break;
      case 7: r = c07(); break;
      case 8: r = c08(); break;
      case 9: r = c09(); break;
      case 10: r = c10(seed_); break;
      case 11: {
        if (!cache_->orbits) {
          std::vector<Cache::Orbit> orbits;
          const CMatrix ellipse = CMatrix::from_rows({{1.0, 1.0}, {0.0, -1.0}});
          const CMatrix segment = CMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
          const CMatrix disc = CMatrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
          orbits.push_back({"ellipse", ellipse, unitorbit::orbit_cloud_2x2(ellipse, 256, 256)});
          orbits.push_back({"segment", segment, unitorbit::orbit_cloud_2x2(segment, 1000, 1)});
          orbits.push_back({"disc", disc, unitorbit::orbit_cloud_2x2(disc, 256, 256)});
          cache_->orbits = std::move(orbits);
        }
        const auto& o = *cache_->orbits;
        constexpr double kSpacing = 1e-3;
        const auto boundary_gap = [&](const Cache::Orbit& orbit) {
          const numrange::EllipseParams e = numrange::elliptic_params(orbit.t);
          const auto polygon = cplane::densify_polyline(e.boundary_polygon(4096), kSpacing, true);
          return cplane::hausdorff(densified_hull(orbit.cloud, kSpacing), polygon);
        };
        const double h_ellipse = boundary_gap(o[0]);
        const double h_disc = boundary_gap(o[2]);
        std::vector<CPoint> seg(10000);
        for (std::size_t i = 0; i < seg.size(); ++i) seg[i] = static_cast<double>(i) / (seg.size() - 1);
        const double h_segment = cplane::hausdorff(o[1].cloud.points, seg);
        r = result(11, h_ellipse < 1e-2 && h_disc < 1e-2 && h_segment < 1e-3,
                   "ellipse " + sci(h_ellipse) + ", disc " + sci(h_disc) + ", segment " + sci(h_segment));
        break;
      }
      case 12: {
        Draws d(seed_, 12);
        double worst[3] = {0.0, 0.0, 0.0};
        for (int i = 0; i < 1000; ++i) {
          worst[0] = std::max(worst[0], numrange::unitarity_residual(unitorbit::build_unitary(unitorbit::SegmentCase{d.uniform(0.0, 1.0)})));
          const Complex m = d.gaussian(4.0);
          const auto disc = unitorbit::DiscCase::make(d.uniform(0.0, kTwoPi), d.uniform(0.0, 0.5 * std::abs(m)), m);
          worst[1] = std::max(worst[1], numrange::unitarity_residual(unitorbit::build_unitary(disc)));
          unitorbit::GeneralCase g;
          g.theta_mix = d.uniform(0.0, kTwoPi);
          g.phase_alpha = d.uniform(0.0, kTwoPi);
          g.phase_beta = d.uniform(0.0, kTwoPi);
          g.phase_gamma = d.uniform(0.0, kTwoPi);
          g.phase_delta = g.phase_gamma + kPi + (g.phase_beta - g.phase_alpha);
          worst[2] = std::max(worst[2], numrange::unitarity_residual(unitorbit::build_unitary(g)));
        }
        const double w = std::max({worst[0], worst[1], worst[2]});
        r = result(12, w < 1e-14,
                   "segment " + sci(worst[0]) + ", disc " + sci(worst[1]) + ", general " + sci(worst[2]));
        break;
      }
      case 13: {
        const PointCloud cloud = unitorbit::circle_family_points(1.0, 2.0, 512, 512);
        const numrange::EllipseParams e = unitorbit::envelope_of_circle_family(1.0, 2.0);
        double hi = -INFINITY;
        for (const CPoint& p : cloud.points) hi = std::max(hi, e.quadratic_form(p));
        r = result(13, hi <= 1.0 + 1e-12 && hi >= 1.0 - 1e-6, "max quadratic form 1 - " + sci(1.0 - hi));
        break;
      }
      case 14: {
        if (!cache_->orbits) run(11);
        if (!cache_->haar) run(15);
        std::size_t violations = 0;
        std::size_t checked = 0;
        double worst = -INFINITY;
        const auto scan = [&](const std::vector<Cache::Orbit>& set) {
          for (const auto& o : set) {
            const numrange::SupportTable table(o.t);
            const double tol = numrange::default_contains_tol(o.t);
            for (const CPoint& p : o.cloud.points) {
              const double ex = table.excess(p);
              worst = std::max(worst, ex);
              if (ex > tol) ++violations;
            }
            checked += o.cloud.size();
          }
        };
        scan(*cache_->orbits);
        scan(*cache_->haar);
        r = result(14, violations == 0,
                   std::to_string(violations) + " violations in " + std::to_string(checked) + " points, max excess " + sci(worst));
        break;
      }
      case 15: {
        const auto t0 = std::chrono::steady_clock::now();
        if (!cache_->haar) {
          Draws d(seed_, 15);
          std::vector<Cache::Orbit> haar;
          for (std::size_t n : {3u, 4u}) {
            const CMatrix t = d.gaussian_matrix(n);
            haar.push_back({std::to_string(n) + "x" + std::to_string(n), t, unitorbit::haar_orbit_cloud(t, 100000, seed_)});
          }
          cache_->haar = std::move(haar);
        }
        std::string detail;
        bool pass = true;
        for (const auto& o : *cache_->haar) {
          const double h = cplane::hausdorff(o.cloud, numrange::numerical_range_fill(o.t));
          pass = pass && h < 5e-2;
          detail += (detail.empty() ? "" : ", ") + o.label + " hausdorff " + sci(h);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pass = pass && secs < 60.0;
        // wall time stays out of the detail so reports are reproducible
        detail += secs < 60.0 ? ", under 60 s" : ", over 60 s";
        r = result(15, pass, detail);
        break;
      }
      case 16: {
        bool all_false = true;
        std::string detail;
        for (auto [a, b] : {std::pair{0.3, 1.0}, std::pair{-0.5, 2.0}, std::pair{1.0, 0.5}}) {
          const Complex w(a, b);
          const auto at = [&](double r) { return std::exp(w * r * r); };
          const bool col = cplane::collinear(at(0.0), at(1.0), at(std::sqrt(kPi / b)), 1e-9);
          all_false = all_false && !col;
        }
        double off_circle = 0.0;
        for (double b : {1.0, 2.0, 0.5}) {
          for (int k = 0; k <= 1000; ++k) {
            const double r = 4.0 * k / 1000.0;
            off_circle = std::max(off_circle, std::abs(std::abs(std::exp(Complex(0.0, b) * r * r)) - 1.0));
          }
        }
        detail = std::string(all_false ? "3 triples non-collinear" : "a triple is collinear") + ", a=0 max ||B|-1| " + sci(off_circle);
        r = result(16, all_false && off_circle <= 1e-13, detail);
        break;
      }
      default:
        fail(ErrorKind::InvalidParameter, "no acceptance criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidParameter && (id < 1 || id > 16)) throw;
    r = result(id, false, std::string("error: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<io::CriterionResult> Suite::run_all(std::span<const int> ids,
                                                const std::function<void(const io::CriterionResult&)>& on_result) {
  std::vector<int> order;
  if (ids.empty()) {
    for (const Criterion& c : kCriteria) order.push_back(c.id);
  } else {
    order.assign(ids.begin(), ids.end());
  }
  std::vector<io::CriterionResult> out;
  for (int id : order) {
    out.push_back(run(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const io::CriterionResult& r) {
  char id[8];
  std::snprintf(id, sizeof id, "%02d", r.id);
  return std::string(r.pass ? "PASS" : "FAIL") + "  #" + id + " " + r.name + ": " + r.detail;
}

}  // namespace berezin_lab::verify
