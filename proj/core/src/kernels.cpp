#include "berezin_lab/kernels.hpp"

#include <cmath>
#include <string>

#include "berezin_lab/errors.hpp"

namespace berezin_lab::kernels {
namespace {

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorKind::DomainError, std::string(what) + " is not finite");
  }
}

void require_disc(Complex z, const char* what) {
  require_finite(z, what);
  if (!(std::abs(z) < 1.0)) fail(ErrorKind::DomainError, std::string(what) + " = " + format_complex(z) + " is not in the open unit disc");
}

Complex checked_exp(Complex e) {
  if (e.real() > 709.0) fail(ErrorKind::Overflow, "exponent real part " + format_real(e.real()) + " exceeds the double range");
  const Complex v = std::exp(e);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorKind::Overflow, "non-finite exponential");
  return v;
}

}  // namespace

std::string_view to_string(SpaceId space) noexcept { return space == SpaceId::Fock ? "fock" : "dirichlet"; }

SpaceId parse_space(std::string_view text) {
  if (text == "fock" || text == "Fock") return SpaceId::Fock;
  if (text == "dirichlet" || text == "Dirichlet") return SpaceId::Dirichlet;
  fail(ErrorKind::ParseError, "unknown space '" + std::string(text) + "' (expected fock or dirichlet)");
}

Complex fock_kernel(Complex z, Complex w) {
  require_finite(z, "z");
  require_finite(w, "w");
  return checked_exp(z * std::conj(w));
}

double fock_norm_sq(Complex z) {
  require_finite(z, "z");
  return checked_exp(Complex(std::norm(z), 0.0)).real();
}

Complex log1p(Complex w) {
  const double x = w.real();
  const double y = w.imag();
  const double im = std::atan2(y, 1.0 + x);
  // near the origin |1+w|^2 - 1 = 2x + x^2 + y^2 keeps the small terms;
  // farther out 1 + x is exact enough and the difference would cancel
  if (std::abs(w) < 0.5) return {0.5 * std::log1p(2.0 * x + x * x + y * y), im};
  const double re = std::log(std::hypot(1.0 + x, y));
  return {re, im};
}

Complex dirichlet_series(Complex u) {
  // 1 + u/2 + u^2/3 + ...
  Complex sum = 1.0;
  Complex power = 1.0;
  for (int k = 1; k < 200; ++k) {
    power *= u;
    const Complex term = power / static_cast<double>(k + 1);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

Complex dirichlet_closed(Complex u) { return -log1p(-u) / u; }

Complex dirichlet_kernel(Complex z, Complex w) {
  require_disc(z, "z");
  require_disc(w, "w");
  const Complex u = std::conj(w) * z;
  return std::abs(u) < kSeriesSwitch ? dirichlet_series(u) : dirichlet_closed(u);
}

double dirichlet_norm_sq(Complex z) {
  require_disc(z, "z");
  const double s = std::norm(z);
  if (s < kSeriesSwitch) return dirichlet_series(Complex(s, 0.0)).real();
  return -std::log1p(-s) / s;
}

}  // namespace berezin_lab::kernels
