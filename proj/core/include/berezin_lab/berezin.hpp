#pragma once

#include <string>
#include <vector>

#include "berezin_lab/kernels.hpp"
#include "berezin_lab/symbols.hpp"
#include "berezin_lab/types.hpp"

namespace berezin_lab::berezin {

using kernels::SpaceId;
using symbols::SymbolSpec;

struct BerezinSample {
  Complex z;
  Complex value;
};

/// Polar sampling grid, r-major then theta. Radii run from 0 to r_max
/// inclusive; angles are 2*pi*k/n_theta.
struct SamplingGrid {
  enum class Kind { PolarDisc, PolarPlane };
  enum class Spacing { Uniform, TanhClustered };

  Kind kind = Kind::PolarPlane;
  int n_r = 200;
  int n_theta = 128;
  double r_max = 4.0;
  Spacing spacing = Spacing::Uniform;

  static SamplingGrid fock_default();       // plane, 200 x 128, r <= 4, uniform
  static SamplingGrid dirichlet_default();  // disc, 200 x 128, r <= 1 - 1e-6, tanh-clustered

  void validate() const;
  std::vector<double> radii() const;
  std::vector<double> angles() const;
};

/// Largest |z| admitted on the Dirichlet space.
inline constexpr double kDiscRadiusCap = 1.0 - 1e-12;

/// k_z(phi(z)) / ||k_z||^2 through the kernel evaluators.
Complex berezin_transform(SpaceId space, const SymbolSpec& sym, Complex z);

/// exp((zeta - 1)|z|^2).
Complex closed_form_fock_elliptic(Complex zeta, Complex z);
/// exp((zeta - 1)|z|^2 + a conj(z)).
Complex closed_form_fock_affine(Complex zeta, Complex a, Complex z);
/// log(1 - zeta|z|^2) / (zeta log(1 - |z|^2)), and 1 at z = 0.
Complex closed_form_dirichlet_elliptic(Complex zeta, Complex z);

/// Real/imaginary decomposition of the Blaschke-factor transform:
/// value = first_factor * log(log_argument), where first_factor already
/// carries c_coeff = a_coeff / ||k_z||^2.
struct BlaschkeDecomposition {
  double a_coeff = 0.0;
  double b_coeff = 0.0;
  double c_coeff = 0.0;
  Complex first_factor;
  Complex log_argument;

  Complex assemble() const;
};

BlaschkeDecomposition blaschke_decomposition(Complex alpha, Complex z);

/// The transform restricted to the line w = r*alpha through the origin,
/// in its real closed form; r in (-1/|alpha|, 1/|alpha|).
Complex blaschke_radial_restriction(Complex alpha, double r);

/// |B(r e^{i theta}) - conj(B(r e^{i(2 psi - theta)}))| with psi = arg(alpha).
double conjugate_symmetry_residual(Complex alpha, double r, double theta);

PointCloud sample_range(SpaceId space, const SymbolSpec& sym, const SamplingGrid& grid);

enum class ConvexityClass { Convex, NonConvex, OpenQuestion };

std::string_view to_string(ConvexityClass c) noexcept;

struct ConvexityVerdict {
  ConvexityClass verdict = ConvexityClass::OpenQuestion;
  std::string reason;
};

/// Exact verdicts where a characterization is known; OpenQuestion otherwise.
ConvexityVerdict classify_convexity(SpaceId space, const SymbolSpec& sym);

/// Evidence on whether Im B vanishes only on the alpha-line: on every ring
/// of the grid counts the sign changes of Im B around the circle. The line
/// itself accounts for two; more than two on a ring points at another zero
/// curve. Descriptive only.
struct HypothesisProbe {
  int rings = 0;
  int rings_with_extra_zeros = 0;
  int max_sign_changes = 0;
};

HypothesisProbe probe_blaschke_hypothesis(Complex alpha, const SamplingGrid& grid);

}  // namespace berezin_lab::berezin
