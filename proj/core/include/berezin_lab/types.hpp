#pragma once

#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace berezin_lab {

using Complex = std::complex<double>;

/// A point of the complex plane, read as (re, im) in R^2.
using CPoint = Complex;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sampled planar set. `domain` is either empty or parallel to `points`
/// (for Berezin clouds it holds the z that produced each value).
struct PointCloud {
  std::vector<CPoint> points;
  std::vector<CPoint> domain;
  std::map<std::string, std::string> meta;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  bool has_domain() const noexcept { return !domain.empty(); }
};

/// 17 significant digits, enough to round-trip a double.
std::string format_real(double x);
std::string format_complex(Complex z);

}  // namespace berezin_lab
