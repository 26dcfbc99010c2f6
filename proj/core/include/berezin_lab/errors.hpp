#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berezin_lab {

enum class ErrorKind {
  EmptyCloud,
  NonFinitePoint,
  Overflow,
  DomainError,
  PoleError,
  InvalidParameter,
  UnboundedSymbol,
  DegenerateError,
  EigenFailure,
  ShapeError,
  IoError,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Every failure carries a kind so callers
/// (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace berezin_lab
