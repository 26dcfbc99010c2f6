#include <cmath>
#include <cstdio>
#include <string>

#include "berezin_lab/errors.hpp"
#include "berezin_lab/types.hpp"

namespace berezin_lab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::NonFinitePoint: return "NonFinitePoint";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnboundedSymbol: return "UnboundedSymbol";
    case ErrorKind::DegenerateError: return "DegenerateError";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  const double im = z.imag();
  // signbit keeps -0.0 distinguishable so parsing round-trips bit-exactly
  if (std::signbit(im)) {
    out += '-';
    out += format_real(-im);
  } else {
    out += '+';
    out += format_real(im);
  }
  out += 'i';
  return out;
}

}  // namespace berezin_lab
