// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "afdm/daft.hpp"

namespace afdm::test {

inline CVec random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CVec v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double energy(std::span<const Complex> a) {
  double e = 0.0;
  for (const auto& x : a) e += std::norm(x);
  return e;
}

// N = 256, k_max = l_max = 3, c2 = sqrt(2) grid with a chosen segment count.
inline AfdmGrid default_grid(int segments = 8, int n = 256) {
  return build_grid(n, 3, segments - 6, std::sqrt(2.0), 3, 8);
}

}  // namespace afdm::test
