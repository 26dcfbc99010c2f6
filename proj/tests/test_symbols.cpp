#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "berezin_lab/symbols.hpp"
#include "test_util.hpp"

using namespace berezin_lab;
using namespace berezin_lab::symbols;
using test_util::kind_of;

TEST_CASE("apply oracles") {
  CHECK(symbols::apply(DiscRotation{Complex(0, 1)}, Complex(0.5, 0)) == Complex(0, 0.5));
  CHECK(symbols::apply(FockAffine{0.5, 10.0}, Complex(2, 2)) == Complex(11, 1));
  CHECK(symbols::apply(Blaschke{0.0}, Complex(0.3, 0.1)) == Complex(0.3, 0.1));
  CHECK(std::abs(symbols::apply(Blaschke{0.5}, 0.5)) == 0.0);
  // theta = pi turns the automorphism into the Blaschke factor
  const Complex alpha(0.2, -0.4), z(-0.1, 0.6);
  CHECK(std::abs(symbols::apply(DiscAutomorphism{kPi, alpha}, z) - symbols::apply(Blaschke{alpha}, z)) < 1e-15);
  CHECK(symbols::apply(FockSpecialAutomorphism{Complex(0, 1), 0.0}, Complex(1, 0)) == Complex(-1, 0));
}

TEST_CASE("disc maps are self-maps of the disc and automorphisms are involutive") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Complex alpha = std::polar(0.99 * std::sqrt(u(gen)), kTwoPi * u(gen));
    const Complex z = std::polar(0.999 * std::sqrt(u(gen)), kTwoPi * u(gen));
    const Complex w = symbols::apply(Blaschke{alpha}, z);
    CHECK(std::abs(w) < 1.0);
    const Complex back = symbols::apply(DiscAutomorphism{0.0, alpha}, symbols::apply(DiscAutomorphism{0.0, alpha}, z));
    CHECK(std::abs(back - z) < 1e-9);
  }
  // boundary rounding is pulled back inside
  CHECK(std::abs(symbols::apply(Blaschke{Complex(0.9, 0)}, Complex(-std::nextafter(1.0, 0.0), 0))) < 1.0);
}

TEST_CASE("apply domain errors") {
  CHECK(kind_of([] { symbols::apply(Blaschke{0.5}, 1.0); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { symbols::apply(DiscAutomorphism{0.0, 0.5}, Complex(0, 2)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { symbols::apply(FockAffine{0.5, 0.0}, Complex(INFINITY, 0)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { symbols::apply(FockSpecialAutomorphism{std::sqrt(2.0), 1.0}, -std::sqrt(2.0)); }) == ErrorKind::PoleError);
}

TEST_CASE("fock boundedness") {
  CHECK(classify_fock_boundedness(0.5, 10.0) == Boundedness::BoundedCompact);
  CHECK(classify_fock_boundedness(std::polar(1.0, 1.0), 0.0) == Boundedness::BoundedNonCompact);
  CHECK(classify_fock_boundedness(1.0, 0.1) == Boundedness::Unbounded);
  CHECK(classify_fock_boundedness(1.5, 0.0) == Boundedness::Unbounded);
  CHECK(classify_fock_boundedness(1.0 + 1e-13, 0.0) == Boundedness::BoundedNonCompact);
}

TEST_CASE("boundedness by space") {
  using kernels::SpaceId;
  CHECK(boundedness_on(SpaceId::Fock, Blaschke{0.5}) == Boundedness::NotApplicable);
  CHECK(boundedness_on(SpaceId::Dirichlet, Blaschke{0.5}) == Boundedness::BoundedNonCompact);
  CHECK(boundedness_on(SpaceId::Dirichlet, DiscRotation{0.5}) == Boundedness::NotApplicable);
  CHECK(boundedness_on(SpaceId::Dirichlet, FockAffine{0.5, 0.0}) == Boundedness::NotApplicable);
  CHECK(boundedness_on(SpaceId::Fock, FockSpecialAutomorphism{Complex(0, 1), 0.0}) == Boundedness::BoundedNonCompact);
  CHECK(boundedness_on(SpaceId::Fock, FockSpecialAutomorphism{std::sqrt(2.0), 1.0}) == Boundedness::NotApplicable);
}

TEST_CASE("validate rejects bad parameters") {
  CHECK(kind_of([] { validate(Blaschke{1.0}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { validate(DiscRotation{1.5}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { validate(FockAffine{NAN, 0.0}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { validate(FockSpecialAutomorphism{2.0, 1.0}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { validate(DiscAutomorphism{INFINITY, 0.1}); }) == ErrorKind::InvalidParameter);
  validate(FockSpecialAutomorphism{std::sqrt(2.0), 1.0});
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("0.5") == Complex(0.5, 0));
  CHECK(parse_complex("2i") == Complex(0, 2));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("0.25-0.43i") == Complex(0.25, -0.43));
  CHECK(parse_complex("1e-3+2e+1i") == Complex(1e-3, 20));
  const Complex p = parse_complex("0.5@pi/3");
  CHECK(std::abs(p - std::polar(0.5, kPi / 3)) < 1e-16);
  CHECK(kind_of([] { parse_complex(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_complex("1+xi"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_complex("abc"); }) == ErrorKind::ParseError);
}

TEST_CASE("angles") {
  CHECK(parse_angle("1.25") == 1.25);
  CHECK(parse_angle("pi") == kPi);
  CHECK(parse_angle("-pi/3") == doctest::Approx(-kPi / 3));
  CHECK(parse_angle("2pi/3") == doctest::Approx(2 * kPi / 3));
  CHECK(parse_angle("0.5pi") == doctest::Approx(kPi / 2));
  CHECK(kind_of([] { parse_angle("pi/"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_angle("tau"); }) == ErrorKind::ParseError);
}

TEST_CASE("symbol parsing") {
  const auto e = parse_symbol("elliptic:zeta=0.5+0.866i");
  REQUIRE(std::holds_alternative<DiscRotation>(e));
  CHECK(std::get<DiscRotation>(e).zeta == Complex(0.5, 0.866));
  const auto a = parse_symbol("affine:zeta=0.5,a=10");
  CHECK(std::get<FockAffine>(a).a == Complex(10, 0));
  CHECK(std::get<FockAffine>(parse_symbol("affine:zeta=0.5")).a == Complex(0, 0));
  const auto d = parse_symbol(" autD:theta=pi/3, alpha=0.2 ");
  CHECK(std::get<DiscAutomorphism>(d).theta == doctest::Approx(kPi / 3));
  CHECK(variant_name(parse_symbol("autF:a=i")) == "autF");
  CHECK(is_disc_variant(parse_symbol("blaschke:alpha=0.5@pi/3")));
  CHECK_FALSE(is_disc_variant(e));
}

TEST_CASE("symbol parse errors") {
  CHECK(kind_of([] { parse_symbol("parabolic:zeta=1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_symbol("elliptic"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_symbol("elliptic:zeta"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_symbol("elliptic:zeta=1,beta=2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_symbol("blaschke:alpha=1.2"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("format and parse round-trip exactly") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 200; ++i) {
    const Complex c(u(gen), u(gen));
    const SymbolSpec syms[] = {Blaschke{c}, DiscAutomorphism{u(gen), c}, FockAffine{c, Complex(u(gen) * 10, u(gen))},
                               DiscRotation{c}};
    for (const SymbolSpec& s : syms) {
      const std::string text = format_symbol(s);
      CHECK(format_symbol(parse_symbol(text)) == text);
    }
  }
}
