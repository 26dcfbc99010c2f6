#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>

#include "berezin_lab/numrange.hpp"
#include "berezin_lab/types.hpp"

namespace berezin_lab::unitorbit {

using numrange::CMatrix;
using numrange::EllipseParams;

/// [[sqrt k, sqrt(1-k)], [sqrt(1-k), -sqrt k]] on diag(l1, l2).
struct SegmentCase {
  double k = 0.0;
};

/// Realizes lambda +- r_target e^{i theta} on [[lambda, m], [0, lambda]].
struct DiscCase {
  double theta = 0.0;
  double r_target = 0.0;
  double delta = 0.0;  // arg m
  double m_abs = 0.0;
  double alpha_half = 0.0;  // asin(2 r_target / |m|) / 2

  /// Clamps 2 r_target / |m| into [0, 1] when it overshoots by at most 1e-12.
  static DiscCase make(double theta, double r_target, Complex m);
};

/// [[e^{ia} cos t, e^{ib} sin t], [e^{ig} sin t, e^{id} cos t]] with
/// d - g = pi + (b - a).
struct GeneralCase {
  double theta_mix = 0.0;
  double phase_alpha = 0.0;
  double phase_beta = 0.0;
  double phase_gamma = 0.0;
  double phase_delta = kPi;

  /// alpha = beta = 0, delta = pi + gamma.
  static GeneralCase make(double theta_mix, double phase_gamma);
};

using UnitaryFamily = std::variant<SegmentCase, DiscCase, GeneralCase>;

inline constexpr double kFamilyTol = 1e-12;

void validate(const UnitaryFamily& fam);
CMatrix build_unitary(const UnitaryFamily& fam);

/// Diagonal of U* T U computed numerically. T must be upper triangular and
/// shaped for the case: diagonal for SegmentCase, equal diagonal entries
/// with T(0,1) = |m| e^{i delta} for DiscCase, [[r, n], [0, -r]] with r >= 0
/// for GeneralCase.
std::pair<Complex, Complex> orbit_diagonal(const CMatrix& t, const UnitaryFamily& fam);
/// The same diagonal from the closed forms.
std::pair<Complex, Complex> orbit_diagonal_closed_form(const CMatrix& t, const UnitaryFamily& fam);

/// Schur-reduces T, centres and rotates it, sweeps the applicable family on
/// an n1 x n2 grid and maps both diagonal entries back. The segment case
/// uses n1 * n2 values of k.
PointCloud orbit_cloud_2x2(const CMatrix& t, std::size_t n1, std::size_t n2);

/// Circle (x - r cos phi)^2 + y^2 = (|m|^2 / 4) sin^2 phi.
struct CircleFamily {
  double r = 0.0;
  double m_abs = 0.0;
  double phi = 0.0;

  Complex center() const;
  double radius() const;
};

/// Centred axis-aligned ellipse with semi-axes sqrt(r^2 + |m|^2/4), |m|/2.
EllipseParams envelope_of_circle_family(double r, double m_abs);

/// phi = pi j / (n_phi - 1), psi = 2 pi k / n_psi, phi-major.
PointCloud circle_family_points(double r, double m_abs, std::size_t n_phi, std::size_t n_psi);

inline constexpr std::size_t kMaxHaarDimension = 16;

/// Haar unitary number `index` of the stream `seed`.
CMatrix haar_unitary(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// All diagonal entries of U* T U for n_samples Haar unitaries, sample-major.
PointCloud haar_orbit_cloud(const CMatrix& t, std::size_t n_samples, std::uint64_t seed);

}  // namespace berezin_lab::unitorbit
