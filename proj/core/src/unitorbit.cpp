#include "berezin_lab/unitorbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/parallel.hpp"

namespace berezin_lab::unitorbit {
namespace {

Complex cis(double a) { return std::polar(1.0, a); }

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(name) + " must be finite");
}

double shape_scale(const CMatrix& t) { return kFamilyTol * (1.0 + t.frobenius_norm()); }

void require_shape(const CMatrix& t, const UnitaryFamily& fam) {
  if (t.size() != 2) fail(ErrorKind::ShapeError, "orbit_diagonal needs a 2x2 matrix");
  const double tol = shape_scale(t);
  if (std::abs(t(1, 0)) > tol) fail(ErrorKind::ShapeError, "matrix is not upper triangular");
  if (std::holds_alternative<SegmentCase>(fam)) {
    if (std::abs(t(0, 1)) > tol) fail(ErrorKind::ShapeError, "segment case needs a diagonal matrix");
  } else if (const auto* d = std::get_if<DiscCase>(&fam)) {
    if (std::abs(t(0, 0) - t(1, 1)) > tol) fail(ErrorKind::ShapeError, "disc case needs equal eigenvalues");
    if (std::abs(t(0, 1) - std::polar(d->m_abs, d->delta)) > tol) {
      fail(ErrorKind::ShapeError, "disc case parameters do not match m = T(0,1)");
    }
  } else {
    const Complex r = t(0, 0);
    if (std::abs(r + t(1, 1)) > tol || std::abs(r.imag()) > tol || r.real() < -tol) {
      fail(ErrorKind::ShapeError, "general case needs [[r, n], [0, -r]] with r >= 0");
    }
  }
}

std::vector<double> uniform_nodes(std::size_t n, double lo, double hi) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

}  // namespace

DiscCase DiscCase::make(double theta, double r_target, Complex m) {
  DiscCase d;
  d.theta = theta;
  d.r_target = r_target;
  d.m_abs = std::abs(m);
  d.delta = std::arg(m);
  if (!(d.m_abs > 0.0)) fail(ErrorKind::InvalidParameter, "disc case needs m != 0");
  double s = 2.0 * r_target / d.m_abs;
  if (s < -kFamilyTol || s > 1.0 + kFamilyTol || !std::isfinite(s)) {
    fail(ErrorKind::InvalidParameter, "r_target must lie in [0, |m|/2]");
  }
  s = std::clamp(s, 0.0, 1.0);
  d.alpha_half = 0.5 * std::asin(s);
  return d;
}

GeneralCase GeneralCase::make(double theta_mix, double phase_gamma) {
  GeneralCase g;
  g.theta_mix = theta_mix;
  g.phase_gamma = phase_gamma;
  g.phase_delta = kPi + phase_gamma;
  return g;
}

void validate(const UnitaryFamily& fam) {
  if (const auto* s = std::get_if<SegmentCase>(&fam)) {
    if (!(s->k >= 0.0 && s->k <= 1.0)) fail(ErrorKind::InvalidParameter, "segment case needs k in [0, 1]");
  } else if (const auto* d = std::get_if<DiscCase>(&fam)) {
    require_finite(d->theta, "theta");
    require_finite(d->delta, "delta");
    if (!(d->m_abs > 0.0) || !std::isfinite(d->m_abs)) fail(ErrorKind::InvalidParameter, "disc case needs |m| > 0");
    const double s = 2.0 * d->r_target / d->m_abs;
    if (!(s >= -kFamilyTol && s <= 1.0 + kFamilyTol)) fail(ErrorKind::InvalidParameter, "r_target must lie in [0, |m|/2]");
    if (std::abs(std::sin(2.0 * d->alpha_half) - std::clamp(s, 0.0, 1.0)) > kFamilyTol || d->alpha_half < 0.0 ||
        d->alpha_half > 0.25 * kPi + kFamilyTol) {
      fail(ErrorKind::InvalidParameter, "alpha_half must equal asin(2 r_target / |m|) / 2");
    }
  } else {
    const auto& g = std::get<GeneralCase>(fam);
    for (double a : {g.theta_mix, g.phase_alpha, g.phase_beta, g.phase_gamma, g.phase_delta}) require_finite(a, "phase");
    const double miss = wrap_angle(g.phase_delta - g.phase_gamma - kPi - (g.phase_beta - g.phase_alpha));
    if (std::abs(miss) > kFamilyTol) fail(ErrorKind::InvalidParameter, "general case needs delta - gamma = pi + (beta - alpha)");
  }
}

CMatrix build_unitary(const UnitaryFamily& fam) {
  validate(fam);
  Eigen::Matrix2cd u;
  if (const auto* s = std::get_if<SegmentCase>(&fam)) {
    const double a = std::sqrt(s->k);
    const double b = std::sqrt(1.0 - s->k);
    u << a, b, b, -a;
  } else if (const auto* d = std::get_if<DiscCase>(&fam)) {
    const double sa = std::sin(d->alpha_half);
    const double ca = std::cos(d->alpha_half);
    const Complex ph = cis(d->theta - d->delta);
    u << std::conj(ph) * sa, ca, ca, -ph * sa;
  } else {
    const auto& g = std::get<GeneralCase>(fam);
    const double c = std::cos(g.theta_mix);
    const double s = std::sin(g.theta_mix);
    u << cis(g.phase_alpha) * c, cis(g.phase_beta) * s, cis(g.phase_gamma) * s, cis(g.phase_delta) * c;
  }
  return CMatrix(Eigen::MatrixXcd(u));
}

std::pair<Complex, Complex> orbit_diagonal(const CMatrix& t, const UnitaryFamily& fam) {
  require_shape(t, fam);
  const CMatrix u = build_unitary(fam);
  const Eigen::MatrixXcd d = u.eigen().adjoint() * t.eigen() * u.eigen();
  return {d(0, 0), d(1, 1)};
}

std::pair<Complex, Complex> orbit_diagonal_closed_form(const CMatrix& t, const UnitaryFamily& fam) {
  require_shape(t, fam);
  validate(fam);
  if (const auto* s = std::get_if<SegmentCase>(&fam)) {
    const Complex l1 = t(0, 0), l2 = t(1, 1);
    return {s->k * l1 + (1.0 - s->k) * l2, (1.0 - s->k) * l1 + s->k * l2};
  }
  if (const auto* d = std::get_if<DiscCase>(&fam)) {
    const Complex lambda = 0.5 * (t(0, 0) + t(1, 1));
    const Complex shift = std::polar(d->m_abs, d->delta) * cis(d->theta - d->delta) * std::sin(d->alpha_half) *
                          std::cos(d->alpha_half);
    return {lambda + shift, lambda - shift};
  }
  const auto& g = std::get<GeneralCase>(fam);
  const double r = t(0, 0).real();
  const Complex n = t(0, 1);  // |m| e^{i(zeta - mu)}
  const Complex first = r * std::cos(2.0 * g.theta_mix) +
                        0.5 * std::abs(n) * std::sin(2.0 * g.theta_mix) * cis(g.phase_gamma - g.phase_alpha + std::arg(n));
  return {first, -first};
}

PointCloud orbit_cloud_2x2(const CMatrix& t, std::size_t n1, std::size_t n2) {
  if (t.size() != 2) fail(ErrorKind::ShapeError, "orbit_cloud_2x2 needs a 2x2 matrix");
  if (n1 < 2 || n2 < 1) fail(ErrorKind::InvalidParameter, "orbit grid needs n1 >= 2 and n2 >= 1");
  const numrange::SchurForm2 schur = numrange::schur_2x2(t);
  const EllipseParams e = numrange::elliptic_params(t);

  PointCloud cloud;
  cloud.meta["kind"] = "orbit";
  cloud.meta["shape"] = std::string(numrange::to_string(e.shape));
  cloud.meta["n1"] = std::to_string(n1);
  cloud.meta["n2"] = std::to_string(n2);

  using Shape = EllipseParams::Shape;
  if (e.shape == Shape::Segment || e.shape == Shape::Point) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = schur.lambda1;
    d(1, 1) = e.shape == Shape::Point ? schur.lambda1 : schur.lambda2;
    const CMatrix dm(d);
    const std::vector<double> ks = uniform_nodes(n1 * n2, 0.0, 1.0);
    cloud.points.resize(2 * ks.size());
    parallel_for(ks.size(), [&](std::size_t i) {
      const auto [a, b] = orbit_diagonal(dm, SegmentCase{ks[i]});
      cloud.points[2 * i] = a;
      cloud.points[2 * i + 1] = b;
    });
    return cloud;
  }

  if (e.shape == Shape::Circle) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 1) = schur.m;
    const CMatrix dm(d);  // centred at the origin; lambda is added back below
    const std::vector<double> radii = uniform_nodes(n2, 0.0, 0.5 * std::abs(schur.m));
    cloud.points.resize(2 * n1 * n2);
    parallel_for(n1 * n2, [&](std::size_t idx) {
      const double theta = kTwoPi * static_cast<double>(idx / n2) / static_cast<double>(n1);
      const auto [a, b] = orbit_diagonal(dm, DiscCase::make(theta, radii[idx % n2], schur.m));
      cloud.points[2 * idx] = e.center + a;
      cloud.points[2 * idx + 1] = e.center + b;
    });
    return cloud;
  }

  // A = e^{-i mu}(T - c) = [[r, m e^{-i mu}], [0, -r]]
  const Complex half = 0.5 * (schur.lambda1 - schur.lambda2);
  const double r = std::abs(half);
  const double mu = std::arg(half);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = r;
  a(1, 1) = -r;
  a(0, 1) = schur.m * cis(-mu);
  const CMatrix am(a);
  const double net_offset = std::arg(a(0, 1));
  const Complex rotor = cis(mu);
  const std::vector<double> thetas = uniform_nodes(n1, 0.0, 0.5 * kPi);
  cloud.points.resize(2 * n1 * n2);
  parallel_for(n1 * n2, [&](std::size_t idx) {
    // sweep the net phase gamma - mu - alpha + zeta directly
    const double psi = kTwoPi * static_cast<double>(idx % n2) / static_cast<double>(n2);
    const auto [p, q] = orbit_diagonal(am, GeneralCase::make(thetas[idx / n2], psi - net_offset));
    cloud.points[2 * idx] = e.center + rotor * p;
    cloud.points[2 * idx + 1] = e.center + rotor * q;
  });
  return cloud;
}

Complex CircleFamily::center() const { return {r * std::cos(phi), 0.0}; }

double CircleFamily::radius() const { return 0.5 * m_abs * std::sin(phi); }

EllipseParams envelope_of_circle_family(double r, double m_abs) {
  if (!(r >= 0.0) || !(m_abs >= 0.0) || !std::isfinite(r) || !std::isfinite(m_abs)) {
    fail(ErrorKind::InvalidParameter, "envelope needs finite r >= 0 and |m| >= 0");
  }
  EllipseParams e;
  e.center = 0.0;
  e.focus1 = r;
  e.focus2 = -r;
  e.tilt_mu = 0.0;
  e.minor_axis = m_abs;
  e.major_axis = 2.0 * std::sqrt(r * r + 0.25 * m_abs * m_abs);
  using Shape = EllipseParams::Shape;
  if (m_abs == 0.0) {
    e.shape = r == 0.0 ? Shape::Point : Shape::Segment;
  } else {
    e.shape = r == 0.0 ? Shape::Circle : Shape::Ellipse;
  }
  return e;
}

PointCloud circle_family_points(double r, double m_abs, std::size_t n_phi, std::size_t n_psi) {
  if (n_phi < 2 || n_psi < 2) fail(ErrorKind::InvalidParameter, "circle family needs n_phi, n_psi >= 2");
  PointCloud cloud;
  cloud.points.resize(n_phi * n_psi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    const CircleFamily c{r, m_abs, kPi * static_cast<double>(j) / static_cast<double>(n_phi - 1)};
    const Complex centre = c.center();
    const double rad = c.radius();
    for (std::size_t k = 0; k < n_psi; ++k) {
      const double psi = kTwoPi * static_cast<double>(k) / static_cast<double>(n_psi);
      cloud.points[j * n_psi + k] = centre + Complex(rad * std::cos(psi), rad * std::sin(psi));
    }
  }
  cloud.meta["kind"] = "circle_family";
  cloud.meta["r"] = format_real(r);
  cloud.meta["m_abs"] = format_real(m_abs);
  return cloud;
}

CMatrix haar_unitary(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  if (n < 1) fail(ErrorKind::InvalidParameter, "Haar dimension must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im) / std::numbers::sqrt2;
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= mag > 0.0 ? rkk / mag : Complex(1.0);
  }
  return CMatrix(std::move(q));
}

PointCloud haar_orbit_cloud(const CMatrix& t, std::size_t n_samples, std::uint64_t seed) {
  const std::size_t n = t.size();
  if (n < 2 || n > kMaxHaarDimension) fail(ErrorKind::InvalidParameter, "Haar orbit needs 2 <= n <= 16");
  if (n_samples < 1) fail(ErrorKind::InvalidParameter, "Haar orbit needs n_samples >= 1");
  PointCloud cloud;
  cloud.points.resize(n * n_samples);
  parallel_for(n_samples, [&](std::size_t s) {
    const CMatrix u = haar_unitary(n, seed, s);
    const Eigen::MatrixXcd tu = t.eigen() * u.eigen();
    for (std::size_t k = 0; k < n; ++k) {
      const auto col = static_cast<Eigen::Index>(k);
      cloud.points[s * n + k] = u.eigen().col(col).dot(tu.col(col));
    }
  });
  cloud.meta["kind"] = "haar_orbit";
  cloud.meta["n"] = std::to_string(n);
  cloud.meta["n_samples"] = std::to_string(n_samples);
  cloud.meta["seed"] = std::to_string(seed);
  return cloud;
}

}  // namespace berezin_lab::unitorbit
