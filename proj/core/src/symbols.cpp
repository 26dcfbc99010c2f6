#include "berezin_lab/symbols.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "berezin_lab/errors.hpp"

namespace berezin_lab::symbols {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_disc_point(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !(std::abs(z) < 1.0)) {
    fail(ErrorKind::DomainError, "z = " + format_complex(z) + " is outside the open unit disc");
  }
}

void require_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorKind::DomainError, "z is not finite");
}

// The point stays strictly inside after rounding.
Complex keep_inside(Complex w) {
  const double m = std::abs(w);
  if (m >= 1.0) return w / m * std::nextafter(1.0, 0.0);
  return w;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Parses a complete real literal with from_chars (exact round-to-nearest).
bool to_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

std::string_view to_string(Boundedness b) noexcept {
  switch (b) {
    case Boundedness::BoundedCompact: return "BoundedCompact";
    case Boundedness::BoundedNonCompact: return "BoundedNonCompact";
    case Boundedness::Unbounded: return "Unbounded";
    case Boundedness::NotApplicable: return "NotApplicable";
  }
  return "?";
}

bool is_disc_variant(const SymbolSpec& sym) noexcept {
  return std::holds_alternative<Blaschke>(sym) || std::holds_alternative<DiscAutomorphism>(sym);
}

std::string_view variant_name(const SymbolSpec& sym) noexcept {
  return std::visit(overloaded{
                        [](const FockAffine&) { return std::string_view("affine"); },
                        [](const DiscRotation&) { return std::string_view("elliptic"); },
                        [](const Blaschke&) { return std::string_view("blaschke"); },
                        [](const DiscAutomorphism&) { return std::string_view("autD"); },
                        [](const FockSpecialAutomorphism&) { return std::string_view("autF"); },
                    },
                    sym);
}

Complex apply(const SymbolSpec& sym, Complex z) {
  return std::visit(overloaded{
                        [&](const FockAffine& s) {
                          require_finite(z);
                          return s.zeta * z + s.a;
                        },
                        [&](const DiscRotation& s) {
                          require_finite(z);
                          return s.zeta * z;
                        },
                        [&](const Blaschke& s) {
                          require_disc_point(z);
                          return keep_inside((z - s.alpha) / (1.0 - std::conj(s.alpha) * z));
                        },
                        [&](const DiscAutomorphism& s) {
                          require_disc_point(z);
                          return keep_inside(std::polar(1.0, s.theta) * (s.alpha - z) / (1.0 - std::conj(s.alpha) * z));
                        },
                        [&](const FockSpecialAutomorphism& s) {
                          require_finite(z);
                          const Complex den = std::conj(s.b) * z + std::conj(s.a);
                          if (std::abs(den) == 0.0) fail(ErrorKind::PoleError, "conj(b) z + conj(a) vanishes at z = " + format_complex(z));
                          return (s.a * z + s.b) / den;
                        },
                    },
                    sym);
}

Boundedness classify_fock_boundedness(Complex zeta, Complex a) {
  const double modulus = std::abs(zeta);
  if (modulus < 1.0 - kParamTol) return Boundedness::BoundedCompact;
  if (std::abs(modulus - 1.0) <= kParamTol) {
    return std::abs(a) <= kParamTol ? Boundedness::BoundedNonCompact : Boundedness::Unbounded;
  }
  return Boundedness::Unbounded;
}

void validate(const SymbolSpec& sym) {
  const auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  std::visit(overloaded{
                 [&](const FockAffine& s) {
                   if (!finite(s.zeta) || !finite(s.a)) fail(ErrorKind::InvalidParameter, "affine parameters must be finite");
                 },
                 [&](const DiscRotation& s) {
                   if (!finite(s.zeta)) fail(ErrorKind::InvalidParameter, "zeta must be finite");
                   if (std::abs(s.zeta) > 1.0 + kParamTol) fail(ErrorKind::InvalidParameter, "elliptic symbol needs |zeta| <= 1");
                 },
                 [&](const Blaschke& s) {
                   if (!finite(s.alpha) || !(std::abs(s.alpha) < 1.0)) fail(ErrorKind::InvalidParameter, "Blaschke factor needs |alpha| < 1");
                 },
                 [&](const DiscAutomorphism& s) {
                   if (!std::isfinite(s.theta)) fail(ErrorKind::InvalidParameter, "theta must be finite");
                   if (!finite(s.alpha) || !(std::abs(s.alpha) < 1.0)) fail(ErrorKind::InvalidParameter, "disc automorphism needs |alpha| < 1");
                 },
                 [&](const FockSpecialAutomorphism& s) {
                   if (!finite(s.a) || !finite(s.b)) fail(ErrorKind::InvalidParameter, "automorphism parameters must be finite");
                   if (std::abs(std::norm(s.a) - std::norm(s.b) - 1.0) > kParamTol) {
                     fail(ErrorKind::InvalidParameter, "automorphism needs |a|^2 - |b|^2 = 1");
                   }
                 },
             },
             sym);
}

Boundedness boundedness_on(kernels::SpaceId space, const SymbolSpec& sym) {
  validate(sym);
  if (space == kernels::SpaceId::Fock) {
    return std::visit(overloaded{
                          [](const FockAffine& s) { return classify_fock_boundedness(s.zeta, s.a); },
                          [](const DiscRotation& s) { return classify_fock_boundedness(s.zeta, 0.0); },
                          [](const Blaschke&) { return Boundedness::NotApplicable; },
                          [](const DiscAutomorphism&) { return Boundedness::NotApplicable; },
                          [](const FockSpecialAutomorphism& s) {
                            // b = 0 gives the rotation by a / conj(a); otherwise phi has a pole
                            if (std::abs(s.b) > kParamTol) return Boundedness::NotApplicable;
                            return classify_fock_boundedness(s.a / std::conj(s.a), 0.0);
                          },
                      },
                      sym);
  }
  return std::visit(overloaded{
                        [](const FockAffine&) { return Boundedness::NotApplicable; },
                        [](const DiscRotation& s) {
                          return std::abs(std::abs(s.zeta) - 1.0) <= kParamTol ? Boundedness::BoundedNonCompact
                                                                              : Boundedness::NotApplicable;
                        },
                        [](const Blaschke&) { return Boundedness::BoundedNonCompact; },
                        [](const DiscAutomorphism&) { return Boundedness::BoundedNonCompact; },
                        [](const FockSpecialAutomorphism&) { return Boundedness::NotApplicable; },
                    },
                    sym);
}

double parse_real(std::string_view text) {
  double v = 0.0;
  if (!to_double(trim(text), v)) fail(ErrorKind::ParseError, "not a real number: '" + std::string(text) + "'");
  return v;
}

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return parse_real(s);

  // [coef]pi[/den]
  std::string_view coef = s.substr(0, pi_pos);
  std::string_view rest = s.substr(pi_pos + 2);
  double c = 1.0;
  if (!coef.empty()) {
    if (coef.back() == '*') coef.remove_suffix(1);
    if (coef == "-") {
      c = -1.0;
    } else if (coef == "+") {
      c = 1.0;
    } else if (!to_double(coef, c)) {
      fail(ErrorKind::ParseError, "bad angle coefficient in '" + std::string(text) + "'");
    }
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/' || !to_double(rest.substr(1), den) || den == 0.0) {
      fail(ErrorKind::ParseError, "bad angle literal '" + std::string(text) + "'");
    }
  }
  return c * kPi / den;
}

Complex parse_complex(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty complex literal");

  if (const auto at = s.find('@'); at != std::string_view::npos) {
    return std::polar(parse_real(s.substr(0, at)), parse_angle(s.substr(at + 1)));
  }

  if (s.back() != 'i') return {parse_real(s), 0.0};

  // split at the last sign that is not part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size() - 1; k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && k > 0 && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  im_part.remove_suffix(1);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else if (!to_double(im_part, im)) {
    fail(ErrorKind::ParseError, "bad imaginary part in '" + std::string(text) + "'");
  }
  const double re = re_part.empty() ? 0.0 : parse_real(re_part);
  return {re, im};
}

SymbolSpec parse_symbol(std::string_view text) {
  const std::string_view s = trim(text);
  const auto colon = s.find(':');
  const std::string_view kind = colon == std::string_view::npos ? s : s.substr(0, colon);
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = s.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) fail(ErrorKind::ParseError, "symbol parameter '" + std::string(item) + "' lacks '='");
      params[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
    }
  }
  const auto take = [&](const char* key, const char* fallback = nullptr) -> std::string {
    const auto it = params.find(key);
    if (it == params.end()) {
      if (fallback) return fallback;
      fail(ErrorKind::ParseError, "symbol '" + std::string(kind) + "' needs parameter " + key);
    }
    std::string v = it->second;
    params.erase(it);
    return v;
  };

  SymbolSpec sym;
  if (kind == "elliptic" || kind == "rotation") {
    sym = DiscRotation{parse_complex(take("zeta"))};
  } else if (kind == "blaschke") {
    sym = Blaschke{parse_complex(take("alpha"))};
  } else if (kind == "affine") {
    sym = FockAffine{parse_complex(take("zeta")), parse_complex(take("a", "0"))};
  } else if (kind == "autF") {
    sym = FockSpecialAutomorphism{parse_complex(take("a")), parse_complex(take("b", "0"))};
  } else if (kind == "autD") {
    sym = DiscAutomorphism{parse_angle(take("theta", "0")), parse_complex(take("alpha"))};
  } else {
    fail(ErrorKind::ParseError, "unknown symbol kind '" + std::string(kind) + "'");
  }
  if (!params.empty()) fail(ErrorKind::ParseError, "unexpected symbol parameter '" + params.begin()->first + "'");
  validate(sym);
  return sym;
}

std::string format_symbol(const SymbolSpec& sym) {
  return std::visit(overloaded{
                        [](const FockAffine& s) { return "affine:zeta=" + format_complex(s.zeta) + ",a=" + format_complex(s.a); },
                        [](const DiscRotation& s) { return "elliptic:zeta=" + format_complex(s.zeta); },
                        [](const Blaschke& s) { return "blaschke:alpha=" + format_complex(s.alpha); },
                        [](const DiscAutomorphism& s) {
                          return "autD:theta=" + format_real(s.theta) + ",alpha=" + format_complex(s.alpha);
                        },
                        [](const FockSpecialAutomorphism& s) {
                          return "autF:a=" + format_complex(s.a) + ",b=" + format_complex(s.b);
                        },
                    },
                    sym);
}

}  // namespace berezin_lab::symbols
