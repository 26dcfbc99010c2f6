#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "berezin_lab/kernels.hpp"
#include "berezin_lab/types.hpp"

namespace berezin_lab::symbols {

/// phi(z) = zeta z + a on C.
struct FockAffine {
  Complex zeta;
  Complex a;
};

/// phi(z) = zeta z. Unimodular zeta on the disc; |zeta| <= 1 on Fock.
struct DiscRotation {
  Complex zeta;
};

/// phi(z) = (z - alpha) / (1 - conj(alpha) z), |alpha| < 1.
struct Blaschke {
  Complex alpha;
};

/// phi(z) = e^{i theta} (alpha - z) / (1 - conj(alpha) z), |alpha| < 1.
struct DiscAutomorphism {
  double theta = 0.0;
  Complex alpha;
};

/// phi(z) = (a z + b) / (conj(b) z + conj(a)), |a|^2 - |b|^2 = 1.
struct FockSpecialAutomorphism {
  Complex a;
  Complex b;
};

using SymbolSpec = std::variant<FockAffine, DiscRotation, Blaschke, DiscAutomorphism, FockSpecialAutomorphism>;

enum class Boundedness { BoundedCompact, BoundedNonCompact, Unbounded, NotApplicable };

std::string_view to_string(Boundedness b) noexcept;

inline constexpr double kParamTol = 1e-12;

bool is_disc_variant(const SymbolSpec& sym) noexcept;
std::string_view variant_name(const SymbolSpec& sym) noexcept;

/// phi(z). Disc variants require |z| < 1.
Complex apply(const SymbolSpec& sym, Complex z);

/// Bounded composition operators on the Fock space are exactly the affine
/// maps with |zeta| <= 1, and for |zeta| = 1 only the rotations.
Boundedness classify_fock_boundedness(Complex zeta, Complex a);

/// Checks the variant invariants; throws InvalidParameter with a reason.
void validate(const SymbolSpec& sym);

/// Boundedness of C_phi when the symbol is used on the given space.
/// Disc automorphisms are bounded on the Dirichlet space; the only
/// special automorphisms admitted on Fock are those with b = 0.
Boundedness boundedness_on(kernels::SpaceId space, const SymbolSpec& sym);

/// Text syntax: `elliptic:zeta=0.5+0.866i`, `blaschke:alpha=0.25-0.43i`,
/// `affine:zeta=0.5,a=10`, `autF:a=...,b=0`, `autD:theta=pi/3,alpha=...`.
SymbolSpec parse_symbol(std::string_view text);
std::string format_symbol(const SymbolSpec& sym);

/// Complex literals: `re`, `imi`, `re+imi`, `re-imi`, `i`, `-i`, or the
/// polar form `modulus@angle` (angle as for parse_angle).
Complex parse_complex(std::string_view text);
/// Radians (`1.25`) or pi-fractions (`pi`, `-pi/3`, `2pi/3`, `0.5pi`).
double parse_angle(std::string_view text);
double parse_real(std::string_view text);

}  // namespace berezin_lab::symbols
