#include "berezin_lab/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/parallel.hpp"
#include "berezin_lab/symbols.hpp"

namespace berezin_lab::numrange {
namespace {

void require_valid(const Eigen::MatrixXcd& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) fail(ErrorKind::ShapeError, "matrix must be square with n >= 1");
  if (!m.allFinite()) fail(ErrorKind::InvalidParameter, "matrix entries must be finite");
}

void require_2x2(const CMatrix& t) {
  if (t.size() != 2) fail(ErrorKind::ShapeError, "expected a 2x2 matrix, got " + std::to_string(t.size()) + "x" + std::to_string(t.size()));
}

struct Eigenpair2 {
  double value;
  Eigen::Vector2cd vector;
};

// Top eigenpair of the Hermitian [[a, b], [conj(b), d]].
Eigenpair2 top_hermitian_2x2(double a, Complex b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  const double mu = mean + radius;
  Eigen::Vector2cd v1(b, mu - a);
  Eigen::Vector2cd v2(mu - d, std::conj(b));
  Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
  if (v.norm() == 0.0) v = Eigen::Vector2cd(1.0, 0.0);
  return {mu, v.normalized()};
}

Eigen::MatrixXcd rotated(const Eigen::MatrixXcd& t, double theta) { return std::polar(1.0, -theta) * t; }

// Hermitian and skew parts of e^{-i theta} T: H = (S + S*)/2, K = (S - S*)/(2i).
void hermitian_split(const Eigen::MatrixXcd& s, Eigen::MatrixXcd& h, Eigen::MatrixXcd& k) {
  h = 0.5 * (s + s.adjoint());
  k = Complex(0.0, -0.5) * (s - s.adjoint());
}

Eigen::VectorXcd top_eigenvector(const Eigen::MatrixXcd& t, double theta, double* top_value) {
  const Eigen::MatrixXcd s = rotated(t, theta);
  Eigen::MatrixXcd h, k;
  hermitian_split(s, h, k);
  const double scale = 1.0 + t.norm();
  const double tie = 1e-13 * scale;
  const auto n = t.rows();

  if (n == 1) {
    if (top_value) *top_value = h(0, 0).real();
    return Eigen::VectorXcd::Ones(1);
  }
  if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = h(0, 1);
    const double gap = 2.0 * std::hypot(0.5 * (a - d), std::abs(b));
    const Eigenpair2 top = top_hermitian_2x2(a, b, d);
    if (top_value) *top_value = top.value;
    if (gap > tie) return top.vector;
    // flat face: H is scalar, pick the endpoint with the largest Im part
    const Eigenpair2 face = top_hermitian_2x2(k(0, 0).real(), k(0, 1), k(1, 1).real());
    return face.vector;
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) fail(ErrorKind::EigenFailure, "Hermitian eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();
  const double mu = values(n - 1);
  if (top_value) *top_value = mu;

  const double residual = (h * vectors.col(n - 1) - mu * vectors.col(n - 1)).norm();
  if (residual > 1e-13 * (1.0 + h.norm())) {
    fail(ErrorKind::EigenFailure, "top eigenpair residual " + format_real(residual) + " exceeds 1e-13");
  }

  Eigen::Index first = n - 1;
  while (first > 0 && values(first - 1) >= mu - tie) --first;
  if (first == n - 1) return vectors.col(n - 1);

  const Eigen::MatrixXcd basis = vectors.rightCols(n - first);
  const Eigen::MatrixXcd compressed = basis.adjoint() * k * basis;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> face(compressed);
  if (face.info() != Eigen::Success) fail(ErrorKind::EigenFailure, "face eigensolver did not converge");
  return (basis * face.eigenvectors().col(compressed.rows() - 1)).normalized();
}

void require_support_dimension(const CMatrix& t) {
  if (t.size() > kMaxSupportDimension) fail(ErrorKind::InvalidParameter, "support sweep is capped at n <= 64");
}

}  // namespace

CMatrix::CMatrix(std::size_t n) : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {
  require_valid(m_);
}

CMatrix::CMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) { require_valid(m_); }

CMatrix CMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) fail(ErrorKind::ShapeError, "matrix has no rows");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      fail(ErrorKind::ShapeError, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return CMatrix(std::move(m));
}

CMatrix CMatrix::identity(std::size_t n) {
  return CMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

CMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t stop = text.find_first_of(";\n", start);
    const std::string_view line = text.substr(start, stop == std::string_view::npos ? std::string_view::npos : stop - start);
    start = stop == std::string_view::npos ? text.size() + 1 : stop + 1;

    std::string cleaned(line);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::replace(cleaned.begin(), cleaned.end(), '\t', ' ');
    std::istringstream in(cleaned);
    std::string token;
    std::vector<Complex> row;
    bool comment = false;
    while (in >> token) {
      if (row.empty() && token.front() == '#') {
        comment = true;
        break;
      }
      row.push_back(symbols::parse_complex(token));
    }
    if (!comment && !row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::ParseError, "matrix text has no rows");
  try {
    return CMatrix::from_rows(rows);
  } catch (const Error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

std::string format_matrix(const CMatrix& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j) out += ' ';
      out += format_complex(t(i, j));
    }
    out += '\n';
  }
  return out;
}

double unitarity_residual(const CMatrix& u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  const Eigen::MatrixXcd e = u.eigen().adjoint() * u.eigen() - Eigen::MatrixXcd::Identity(n, n);
  return e.cwiseAbs().maxCoeff();
}

SchurForm2 schur_2x2(const CMatrix& t) {
  require_2x2(t);
  const Complex a = t(0, 0), b = t(0, 1), c = t(1, 0), d = t(1, 1);
  const Complex mean = 0.5 * (a + d);
  const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);

  SchurForm2 s;
  s.lambda1 = mean + disc;
  s.lambda2 = mean - disc;

  // (T - lambda1) v = 0: take the better-conditioned of the two row kernels
  Eigen::Vector2cd v1(b, s.lambda1 - a);
  Eigen::Vector2cd v2(s.lambda1 - d, c);
  Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
  if (v.norm() <= 1e-300) v = Eigen::Vector2cd(1.0, 0.0);
  v.normalize();
  Eigen::Matrix2cd u;
  u.col(0) = v;
  u.col(1) = Eigen::Vector2cd(-std::conj(v(1)), std::conj(v(0)));

  s.unitary = CMatrix(Eigen::MatrixXcd(u));
  const Eigen::Matrix2cd tri = u.adjoint() * t.eigen() * u;
  s.m = tri(0, 1);
  return s;
}

std::string_view to_string(EllipseParams::Shape s) noexcept {
  switch (s) {
    case EllipseParams::Shape::Ellipse: return "ellipse";
    case EllipseParams::Shape::Circle: return "circle";
    case EllipseParams::Shape::Segment: return "segment";
    case EllipseParams::Shape::Point: return "point";
  }
  return "?";
}

double EllipseParams::eccentricity() const noexcept {
  if (major_axis == 0.0) return 0.0;
  const double ratio = minor_axis / major_axis;
  return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

double EllipseParams::quadratic_form(CPoint p) const {
  const Complex w = std::polar(1.0, -tilt_mu) * (p - center);
  const double a = semi_major();
  const double b = semi_minor();
  return w.real() * w.real() / (a * a) + w.imag() * w.imag() / (b * b);
}

CPoint EllipseParams::boundary_point(double t) const {
  return center + std::polar(1.0, tilt_mu) * Complex(semi_major() * std::cos(t), semi_minor() * std::sin(t));
}

std::vector<CPoint> EllipseParams::boundary_polygon(std::size_t n) const {
  std::vector<CPoint> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = boundary_point(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

EllipseParams elliptic_params(const CMatrix& t) {
  const SchurForm2 s = schur_2x2(t);
  const double scale = 1.0 + t.frobenius_norm();
  const bool equal = std::abs(s.lambda1 - s.lambda2) <= kEqualEigenTol * scale;
  const bool uncoupled = std::abs(s.m) <= kZeroCouplingTol * scale;

  EllipseParams e;
  e.center = 0.5 * (s.lambda1 + s.lambda2);
  e.minor_axis = std::abs(s.m);
  if (equal) {
    e.focus1 = e.focus2 = e.center;
    e.tilt_mu = 0.0;
    e.major_axis = e.minor_axis;
    e.shape = uncoupled ? EllipseParams::Shape::Point : EllipseParams::Shape::Circle;
    return e;
  }
  const Complex half = 0.5 * (s.lambda1 - s.lambda2);
  const double r = std::abs(half);
  e.focus1 = s.lambda1;
  e.focus2 = s.lambda2;
  e.tilt_mu = std::arg(half);
  e.major_axis = std::sqrt(4.0 * r * r + e.minor_axis * e.minor_axis);
  e.shape = uncoupled ? EllipseParams::Shape::Segment : EllipseParams::Shape::Ellipse;
  if (uncoupled) e.minor_axis = 0.0;
  return e;
}

double support_value(const CMatrix& t, double theta) {
  require_support_dimension(t);
  double mu = 0.0;
  top_eigenvector(t.eigen(), theta, &mu);
  return mu;
}

Complex support_boundary_point(const CMatrix& t, double theta) {
  require_support_dimension(t);
  const Eigen::VectorXcd v = top_eigenvector(t.eigen(), theta, nullptr);
  return v.dot(t.eigen() * v);  // dot conjugates its left argument
}

PointCloud numerical_range_cloud(const CMatrix& t, std::size_t n_theta) {
  if (n_theta < 8) fail(ErrorKind::InvalidParameter, "numerical_range_cloud needs n_theta >= 8");
  require_support_dimension(t);
  PointCloud cloud;
  cloud.points.resize(n_theta);
  parallel_for(n_theta, [&](std::size_t k) {
    cloud.points[k] = support_boundary_point(t, kTwoPi * static_cast<double>(k) / static_cast<double>(n_theta));
  });
  cloud.meta["kind"] = "numerical_range";
  cloud.meta["n"] = std::to_string(t.size());
  cloud.meta["n_theta"] = std::to_string(n_theta);
  return cloud;
}

PointCloud numerical_range_fill(const CMatrix& t, std::size_t n_directions, std::size_t rings) {
  if (rings < 1) fail(ErrorKind::InvalidParameter, "numerical_range_fill needs rings >= 1");
  const PointCloud boundary = numerical_range_cloud(t, n_directions);
  Complex centroid = 0.0;
  for (const CPoint& p : boundary.points) centroid += p;
  centroid /= static_cast<double>(boundary.size());
  PointCloud out;
  out.points.reserve(boundary.size() * (rings + 1));
  for (std::size_t k = 0; k <= rings; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(rings);
    for (const CPoint& p : boundary.points) out.points.push_back(centroid + s * (p - centroid));
  }
  out.meta["kind"] = "numerical_range_fill";
  out.meta["n"] = std::to_string(t.size());
  return out;
}

double default_contains_tol(const CMatrix& t) { return 1e-10 * (1.0 + t.frobenius_norm()); }

SupportTable::SupportTable(const CMatrix& t, std::size_t n_directions) : rotors_(n_directions), support_(n_directions) {
  if (n_directions < 3) fail(ErrorKind::InvalidParameter, "support table needs at least 3 directions");
  require_support_dimension(t);
  parallel_for(n_directions, [&](std::size_t k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n_directions);
    rotors_[k] = std::polar(1.0, -theta);
    support_[k] = support_value(t, theta);
  });
}

double SupportTable::excess(Complex p) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rotors_.size(); ++k) worst = std::max(worst, (rotors_[k] * p).real() - support_[k]);
  return worst;
}

bool contains(const CMatrix& t, Complex p, double tol) {
  if (tol < 0.0) fail(ErrorKind::InvalidParameter, "contains tolerance must be nonnegative");
  return SupportTable(t).contains(p, tol);
}

}  // namespace berezin_lab::numrange
