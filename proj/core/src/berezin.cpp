#include "berezin_lab/berezin.hpp"

#include <cmath>
#include <string>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/parallel.hpp"

namespace berezin_lab::berezin {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using symbols::Boundedness;

constexpr double kTanhStretch = 3.0;

void require_applicable(SpaceId space, const SymbolSpec& sym) {
  const Boundedness b = symbols::boundedness_on(space, sym);
  if (b == Boundedness::Unbounded || b == Boundedness::NotApplicable) {
    fail(ErrorKind::UnboundedSymbol, std::string(symbols::variant_name(sym)) + " symbol " + symbols::format_symbol(sym) +
                                         " does not give a bounded composition operator on the " +
                                         std::string(kernels::to_string(space)) + " space");
  }
}

Complex checked(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::Overflow, "non-finite transform value");
  return v;
}

void add_symbol_meta(PointCloud& cloud, const SymbolSpec& sym) {
  cloud.meta["symbol"] = std::string(symbols::variant_name(sym));
  cloud.meta["symbol_text"] = symbols::format_symbol(sym);
  std::visit(overloaded{
                 [&](const symbols::FockAffine& s) {
                   cloud.meta["zeta"] = format_complex(s.zeta);
                   cloud.meta["a"] = format_complex(s.a);
                 },
                 [&](const symbols::DiscRotation& s) { cloud.meta["zeta"] = format_complex(s.zeta); },
                 [&](const symbols::Blaschke& s) { cloud.meta["alpha"] = format_complex(s.alpha); },
                 [&](const symbols::DiscAutomorphism& s) {
                   cloud.meta["theta"] = format_real(s.theta);
                   cloud.meta["alpha"] = format_complex(s.alpha);
                 },
                 [&](const symbols::FockSpecialAutomorphism& s) {
                   cloud.meta["a"] = format_complex(s.a);
                   cloud.meta["b"] = format_complex(s.b);
                 },
             },
             sym);
}

bool is_real(Complex z) { return std::abs(z.imag()) <= symbols::kParamTol; }

ConvexityVerdict rotation_verdict(SpaceId space, Complex zeta) {
  if (space == SpaceId::Fock) {
    if (is_real(zeta)) return {ConvexityClass::Convex, "Fock elliptic symbol: range is convex iff zeta is real (zeta in [-1,1])"};
    return {ConvexityClass::NonConvex, "Fock elliptic symbol: zeta is not real, the range is a non-degenerate spiral path"};
  }
  const bool plus_one = std::abs(zeta - 1.0) <= symbols::kParamTol;
  const bool minus_one = std::abs(zeta + 1.0) <= symbols::kParamTol;
  if (plus_one || minus_one) return {ConvexityClass::Convex, "Dirichlet elliptic symbol: range is convex iff zeta is 1 or -1"};
  return {ConvexityClass::NonConvex, "Dirichlet elliptic symbol: zeta is not +-1, the range is a curved path from 1 to 0"};
}

ConvexityVerdict blaschke_verdict(Complex alpha) {
  const std::string hypothesis = " (assumes Im B vanishes only where Im(conj(alpha) z) = 0)";
  if (std::abs(alpha) <= symbols::kParamTol) {
    return {ConvexityClass::Convex, "Dirichlet Blaschke factor: alpha = 0 gives the identity, range {1}"};
  }
  return {ConvexityClass::NonConvex, "Dirichlet Blaschke factor: range is convex iff alpha = 0" + hypothesis};
}

}  // namespace

SamplingGrid SamplingGrid::fock_default() { return {Kind::PolarPlane, 200, 128, 4.0, Spacing::Uniform}; }

SamplingGrid SamplingGrid::dirichlet_default() { return {Kind::PolarDisc, 200, 128, 1.0 - 1e-6, Spacing::TanhClustered}; }

void SamplingGrid::validate() const {
  if (n_r < 1 || n_theta < 1) fail(ErrorKind::InvalidParameter, "grid needs n_r >= 1 and n_theta >= 1");
  if (!std::isfinite(r_max) || !(r_max > 0.0)) fail(ErrorKind::InvalidParameter, "grid r_max must be positive and finite");
  if (kind == Kind::PolarDisc && r_max > kDiscRadiusCap) {
    fail(ErrorKind::InvalidParameter, "disc grid needs r_max <= 1 - 1e-12, got " + format_real(r_max));
  }
}

std::vector<double> SamplingGrid::radii() const {
  std::vector<double> r(static_cast<std::size_t>(n_r));
  for (int i = 0; i < n_r; ++i) {
    const double s = n_r == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n_r - 1);
    r[static_cast<std::size_t>(i)] =
        spacing == Spacing::Uniform ? r_max * s : r_max * std::tanh(kTanhStretch * s) / std::tanh(kTanhStretch);
  }
  r.back() = r_max;
  return r;
}

std::vector<double> SamplingGrid::angles() const {
  std::vector<double> t(static_cast<std::size_t>(n_theta));
  for (int k = 0; k < n_theta; ++k) t[static_cast<std::size_t>(k)] = kTwoPi * static_cast<double>(k) / static_cast<double>(n_theta);
  return t;
}

Complex berezin_transform(SpaceId space, const SymbolSpec& sym, Complex z) {
  require_applicable(space, sym);
  if (space == SpaceId::Fock) {
    const Complex w = symbols::apply(sym, z);
    return checked(kernels::fock_kernel(w, z) / kernels::fock_norm_sq(z));
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > kDiscRadiusCap) {
    fail(ErrorKind::DomainError, "Dirichlet transform needs |z| <= 1 - 1e-12, got z = " + format_complex(z));
  }
  if (z == Complex(0.0, 0.0)) return 1.0;
  const Complex w = symbols::apply(sym, z);
  return checked(kernels::dirichlet_kernel(w, z) / kernels::dirichlet_norm_sq(z));
}

Complex closed_form_fock_elliptic(Complex zeta, Complex z) {
  if (std::abs(zeta) > 1.0 + symbols::kParamTol) fail(ErrorKind::InvalidParameter, "elliptic closed form needs |zeta| <= 1");
  const Complex e = (zeta - 1.0) * std::norm(z);
  if (e.real() > 709.0) fail(ErrorKind::Overflow, "exponent overflow");
  return checked(std::exp(e));
}

Complex closed_form_fock_affine(Complex zeta, Complex a, Complex z) {
  if (symbols::classify_fock_boundedness(zeta, a) == Boundedness::Unbounded) {
    fail(ErrorKind::UnboundedSymbol, "affine symbol with zeta = " + format_complex(zeta) + ", a = " + format_complex(a) + " is unbounded on Fock");
  }
  const Complex e = (zeta - 1.0) * std::norm(z) + a * std::conj(z);
  if (e.real() > 709.0) fail(ErrorKind::Overflow, "exponent overflow");
  return checked(std::exp(e));
}

Complex closed_form_dirichlet_elliptic(Complex zeta, Complex z) {
  if (std::abs(std::abs(zeta) - 1.0) > symbols::kParamTol) fail(ErrorKind::DomainError, "Dirichlet elliptic closed form needs |zeta| = 1");
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::DomainError, "z must lie in the open unit disc");
  const double s = std::norm(z);
  if (s == 0.0) return 1.0;
  return kernels::log1p(-zeta * s) / (zeta * std::log1p(-s));
}

Complex BlaschkeDecomposition::assemble() const { return first_factor * std::log(log_argument); }

BlaschkeDecomposition blaschke_decomposition(Complex alpha, Complex z) {
  if (!(std::abs(alpha) < 1.0)) fail(ErrorKind::DomainError, "Blaschke factor needs |alpha| < 1");
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::DomainError, "z must lie in the open unit disc");
  const double s = std::norm(z);
  const Complex u = std::conj(alpha) * z;  // conj(alpha) z; conj(z) alpha = conj(u)
  const double p = u.real();
  const double q = u.imag();
  if (s == 0.0 || Complex(s - p, q) == Complex(0.0, 0.0)) {
    fail(ErrorKind::DegenerateError, "conj(z) phi_alpha(z) vanishes at z = " + format_complex(z) + "; use the kernel series path");
  }

  BlaschkeDecomposition d;
  // | |z|^2 - Re(conj(z) alpha) - i Im(conj(z) alpha) |^2 with Im(conj(z) alpha) = -q
  d.a_coeff = 1.0 / std::norm(Complex(s - p, q));
  // |1 - |z|^2 + 2i Im(conj(z) alpha)|^2
  d.b_coeff = 1.0 / std::norm(Complex(1.0 - s, -2.0 * q));
  d.c_coeff = d.a_coeff / kernels::dirichlet_norm_sq(z);
  d.first_factor = d.c_coeff * Complex((s - p) * (1.0 - p) - q * q, q * (2.0 * p - s - 1.0));
  d.log_argument = d.b_coeff * Complex((1.0 - s) * (1.0 - p) + 2.0 * q * q, q * (1.0 + s - 2.0 * p));
  return d;
}

Complex blaschke_radial_restriction(Complex alpha, double r) {
  const double A = std::norm(alpha);
  if (A == 0.0) fail(ErrorKind::DomainError, "radial restriction needs alpha != 0");
  if (!std::isfinite(r) || !(std::abs(r) * std::sqrt(A) < 1.0)) {
    fail(ErrorKind::DomainError, "w = r alpha must lie in the open unit disc");
  }
  const double y = r * r * A;  // |r alpha|^2
  const double x1 = r * A;     // r |alpha|^2
  if (std::abs(r) >= 1e-4 && std::abs(r - 1.0) >= 1e-4) {
    return y * (1.0 - x1) / (y - x1) * (1.0 - std::log1p(-x1) / std::log1p(-y));
  }
  // same expression with the removable singularities at r = 0 and r = 1 cancelled
  if (y == 0.0) return 1.0;
  const double x = x1 * (1.0 - r) / (1.0 - x1);
  const double h = x == 0.0 ? 1.0 : std::log1p(x) / x;
  return -y * h / std::log1p(-y);
}

double conjugate_symmetry_residual(Complex alpha, double r, double theta) {
  if (std::abs(alpha) == 0.0) fail(ErrorKind::DomainError, "symmetry residual needs alpha != 0");
  if (!(r > 0.0 && r < 1.0)) fail(ErrorKind::DomainError, "symmetry residual needs r in (0,1)");
  const double psi = std::arg(alpha);
  const symbols::SymbolSpec sym = symbols::Blaschke{alpha};
  const Complex b1 = berezin_transform(SpaceId::Dirichlet, sym, std::polar(r, theta));
  const Complex b2 = berezin_transform(SpaceId::Dirichlet, sym, std::polar(r, 2.0 * psi - theta));
  return std::abs(b1 - std::conj(b2));
}

PointCloud sample_range(SpaceId space, const SymbolSpec& sym, const SamplingGrid& grid) {
  grid.validate();
  if (space == SpaceId::Dirichlet && grid.kind != SamplingGrid::Kind::PolarDisc) {
    fail(ErrorKind::InvalidParameter, "Dirichlet sampling needs a PolarDisc grid");
  }
  require_applicable(space, sym);

  const auto radii = grid.radii();
  const auto angles = grid.angles();
  const std::size_t n_theta = angles.size();
  const std::size_t total = radii.size() * n_theta;

  PointCloud cloud;
  cloud.points.resize(total);
  cloud.domain.resize(total);
  parallel_for(total, [&](std::size_t k) {
    const std::size_t i = k / n_theta;
    const std::size_t j = k % n_theta;
    const Complex z = std::polar(radii[i], angles[j]);
    cloud.domain[k] = z;
    try {
      cloud.points[k] = berezin_transform(space, sym, z);
    } catch (const Error& e) {
      throw Error(e.kind(), "at grid point (r index " + std::to_string(i) + ", theta index " + std::to_string(j) +
                                ", z = " + format_complex(z) + "): " + e.what());
    }
  });

  cloud.meta["space"] = std::string(kernels::to_string(space));
  add_symbol_meta(cloud, sym);
  cloud.meta["grid_kind"] = grid.kind == SamplingGrid::Kind::PolarDisc ? "polar_disc" : "polar_plane";
  cloud.meta["n_r"] = std::to_string(grid.n_r);
  cloud.meta["n_theta"] = std::to_string(grid.n_theta);
  cloud.meta["r_max"] = format_real(grid.r_max);
  cloud.meta["r_spacing"] = grid.spacing == SamplingGrid::Spacing::Uniform ? "uniform" : "tanh";
  cloud.meta["seed"] = "0";
  return cloud;
}

std::string_view to_string(ConvexityClass c) noexcept {
  switch (c) {
    case ConvexityClass::Convex: return "Convex";
    case ConvexityClass::NonConvex: return "NonConvex";
    case ConvexityClass::OpenQuestion: return "OpenQuestion";
  }
  return "?";
}

ConvexityVerdict classify_convexity(SpaceId space, const SymbolSpec& sym) {
  require_applicable(space, sym);
  if (space == SpaceId::Fock) {
    return std::visit(overloaded{
                          [](const symbols::FockAffine& s) -> ConvexityVerdict {
                            if (std::abs(s.a) <= symbols::kParamTol) return rotation_verdict(SpaceId::Fock, s.zeta);
                            return {ConvexityClass::OpenQuestion,
                                    "Fock affine symbol with a != 0 and |zeta| < 1: convexity is an open question"};
                          },
                          [](const symbols::DiscRotation& s) { return rotation_verdict(SpaceId::Fock, s.zeta); },
                          [](const symbols::FockSpecialAutomorphism& s) {
                            ConvexityVerdict v = rotation_verdict(SpaceId::Fock, s.a / std::conj(s.a));
                            v.reason = "Fock automorphism with b = 0 is the rotation by a/conj(a); convex iff a in {1,-1,i,-i}";
                            return v;
                          },
                          [](const auto&) -> ConvexityVerdict { fail(ErrorKind::UnboundedSymbol, "disc symbol on Fock"); },
                      },
                      sym);
  }
  return std::visit(overloaded{
                        [](const symbols::DiscRotation& s) { return rotation_verdict(SpaceId::Dirichlet, s.zeta); },
                        [](const symbols::Blaschke& s) { return blaschke_verdict(s.alpha); },
                        [](const symbols::DiscAutomorphism& s) -> ConvexityVerdict {
                          const Complex rotor = std::polar(1.0, s.theta);
                          if (std::abs(s.alpha) <= symbols::kParamTol) {
                            ConvexityVerdict v = rotation_verdict(SpaceId::Dirichlet, -rotor);
                            v.reason += " (automorphism with alpha = 0 is the rotation by -e^{i theta})";
                            return v;
                          }
                          if (std::abs(rotor + 1.0) <= symbols::kParamTol) {
                            ConvexityVerdict v = blaschke_verdict(s.alpha);
                            v.reason += " (theta = pi gives the Blaschke factor)";
                            return v;
                          }
                          return {ConvexityClass::OpenQuestion, "general disc automorphism: no characterization known"};
                        },
                        [](const auto&) -> ConvexityVerdict { fail(ErrorKind::UnboundedSymbol, "Fock symbol on the Dirichlet space"); },
                    },
                    sym);
}

HypothesisProbe probe_blaschke_hypothesis(Complex alpha, const SamplingGrid& grid) {
  grid.validate();
  if (grid.kind != SamplingGrid::Kind::PolarDisc) fail(ErrorKind::InvalidParameter, "hypothesis probe needs a disc grid");
  const symbols::SymbolSpec sym = symbols::Blaschke{alpha};
  const auto radii = grid.radii();
  const auto angles = grid.angles();

  HypothesisProbe probe;
  for (double r : radii) {
    if (r == 0.0) continue;
    int previous = 0;
    int first = 0;
    int changes = 0;
    for (double t : angles) {
      const double im = berezin_transform(SpaceId::Dirichlet, sym, std::polar(r, t)).imag();
      if (std::abs(im) <= 1e-12) continue;
      const int sign = im > 0.0 ? 1 : -1;
      if (first == 0) first = sign;
      if (previous != 0 && sign != previous) ++changes;
      previous = sign;
    }
    if (previous != 0 && first != previous) ++changes;  // wrap around
    ++probe.rings;
    probe.max_sign_changes = std::max(probe.max_sign_changes, changes);
    if (changes > 2) ++probe.rings_with_extra_zeros;
  }
  return probe;
}

}  // namespace berezin_lab::berezin
