#pragma once

#include <string_view>

#include "berezin_lab/types.hpp"

namespace berezin_lab::kernels {

enum class SpaceId { Fock, Dirichlet };

std::string_view to_string(SpaceId space) noexcept;
SpaceId parse_space(std::string_view text);

/// Below this |conj(w) z| the Dirichlet kernel is summed as a power series.
inline constexpr double kSeriesSwitch = 1e-4;

/// exp(z * conj(w)). Throws Overflow instead of returning Inf.
Complex fock_kernel(Complex z, Complex w);
/// exp(|z|^2).
double fock_norm_sq(Complex z);

/// (1/(conj(w) z)) log(1/(1 - conj(w) z)), with k_0 = 1. Both arguments must
/// lie in the open unit disc.
Complex dirichlet_kernel(Complex z, Complex w);
/// (1/|z|^2) log(1/(1-|z|^2)), and 1 at z = 0.
double dirichlet_norm_sq(Complex z);

/// The two evaluation paths of the Dirichlet kernel as functions of
/// u = conj(w) z, exposed for agreement checks.
Complex dirichlet_series(Complex u);
Complex dirichlet_closed(Complex u);

/// log(1 + w) on the principal branch without the cancellation of forming
/// 1 + w first.
Complex log1p(Complex w);

}  // namespace berezin_lab::kernels
