#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "berezin_lab/types.hpp"

namespace berezin_lab::numrange {

/// Square complex matrix with finite entries.
class CMatrix {
 public:
  explicit CMatrix(std::size_t n);
  explicit CMatrix(Eigen::MatrixXcd m);
  static CMatrix from_rows(const std::vector<std::vector<Complex>>& rows);
  static CMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  Complex& operator()(std::size_t i, std::size_t j) { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }

  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }
  CMatrix adjoint() const { return CMatrix(m_.adjoint()); }
  double frobenius_norm() const { return m_.norm(); }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) { return CMatrix(a.m_ * b.m_); }

 private:
  Eigen::MatrixXcd m_;
};

/// Rows separated by newlines or ';', entries by whitespace or ','.
/// Lines starting with '#' are comments.
CMatrix parse_matrix(std::string_view text);
std::string format_matrix(const CMatrix& t);

/// max |U*U - I| entrywise.
double unitarity_residual(const CMatrix& u);

struct SchurForm2 {
  Complex lambda1;
  Complex lambda2;
  Complex m;
  CMatrix unitary{2};
};

/// Unitary triangularization U* T U = [[lambda1, m], [0, lambda2]].
SchurForm2 schur_2x2(const CMatrix& t);

struct EllipseParams {
  enum class Shape { Ellipse, Circle, Segment, Point };

  Complex center;
  Complex focus1;
  Complex focus2;
  double major_axis = 0.0;  // full lengths, not semi-axes
  double minor_axis = 0.0;
  double tilt_mu = 0.0;     // (focus1 - focus2)/2 = r e^{i mu}
  Shape shape = Shape::Point;

  double semi_major() const noexcept { return 0.5 * major_axis; }
  double semi_minor() const noexcept { return 0.5 * minor_axis; }
  double eccentricity() const noexcept;
  /// x^2/a^2 + y^2/b^2 in the centred frame rotated by -mu.
  double quadratic_form(CPoint p) const;
  CPoint boundary_point(double t) const;
  std::vector<CPoint> boundary_polygon(std::size_t n) const;
};

std::string_view to_string(EllipseParams::Shape s) noexcept;

/// Eigenvalues closer than this (relative to 1 + ||T||_F) are treated as
/// equal; the splitting of a double eigenvalue is only sqrt(eps)-accurate.
inline constexpr double kEqualEigenTol = 1e-7;
/// |m| below this (relative to 1 + ||T||_F) is a segment.
inline constexpr double kZeroCouplingTol = 1e-12;

/// Elliptic disc W(T) of a 2x2 matrix: foci at the eigenvalues, minor axis
/// |m|, major axis sqrt(4r^2 + |m|^2).
EllipseParams elliptic_params(const CMatrix& t);

inline constexpr std::size_t kMaxSupportDimension = 64;

/// Largest eigenvalue of H(theta) = (e^{-i theta} T + (e^{-i theta} T)*)/2.
double support_value(const CMatrix& t, double theta);
/// <T v, v> for a top eigenvector v of H(theta): the boundary point of W(T)
/// in direction theta. Flat faces resolve to the endpoint maximizing
/// Im(e^{-i theta} <T v, v>).
Complex support_boundary_point(const CMatrix& t, double theta);

/// Boundary points for theta = 2 pi k / n_theta.
PointCloud numerical_range_cloud(const CMatrix& t, std::size_t n_theta);

inline constexpr std::size_t kContainsDirections = 720;

/// Boundary cloud on n_directions plus `rings` copies shrunk toward the
/// boundary centroid; a sampling of the filled set W(T).
PointCloud numerical_range_fill(const CMatrix& t, std::size_t n_directions = kContainsDirections, std::size_t rings = 60);

/// 1e-10 (1 + ||T||_F).
double default_contains_tol(const CMatrix& t);

/// Support function of W(T) tabulated on a direction sweep; membership is
/// tested against every supporting half-plane.
class SupportTable {
 public:
  SupportTable(const CMatrix& t, std::size_t n_directions = kContainsDirections);

  /// max over directions of Re(e^{-i theta} p) - h(theta); <= 0 inside.
  double excess(Complex p) const;
  bool contains(Complex p, double tol) const { return excess(p) <= tol; }

 private:
  std::vector<Complex> rotors_;
  std::vector<double> support_;
};

bool contains(const CMatrix& t, Complex p, double tol);

}  // namespace berezin_lab::numrange
