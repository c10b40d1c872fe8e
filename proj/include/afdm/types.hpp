// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace afdm {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when a grid, layout or channel parameter combination is rejected.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a frame does not have the length or prefix state an operation needs.
class FrameError : public std::logic_error {
 public:
  explicit FrameError(const std::string& what) : std::logic_error(what) {}
};

/// exp(i*2*pi*cycles); the argument is reduced to [-0.5, 0.5) first.
inline Complex phasor(double cycles) {
  const double r = cycles - std::nearbyint(cycles);
  return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

/// sin(pi x)/(pi x) with sinc(0) = 1.
inline double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace afdm
