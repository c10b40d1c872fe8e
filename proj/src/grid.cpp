// SPDX-License-Identifier: Apache-2.0
#include "afdm/grid.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace afdm {

std::span<const Complex> DaftTables::dft_row(int m, std::span<Complex> scratch) const {
  const auto n = static_cast<std::int64_t>(twiddle.size());
  if (!dft.empty()) return {dft.data() + m * n, static_cast<std::size_t>(n)};
  for (std::int64_t k = 0; k < n; ++k) scratch[k] = twiddle[(k * m) % n];
  return {scratch.data(), static_cast<std::size_t>(n)};
}

namespace {

std::shared_ptr<const DaftTables> make_tables(int n, int segments, double c2) {
  auto t = std::make_shared<DaftTables>();
  t->time_chirp.resize(n);
  t->index_chirp.resize(n);
  t->twiddle.resize(n);
  const std::int64_t two_n = 2LL * n;
  for (std::int64_t i = 0; i < n; ++i) {
    // c1 i^2 = C i^2 / (2N), reduced exactly in integers.
    const std::int64_t num = (segments * ((i * i) % two_n)) % two_n;
    t->time_chirp[i] = phasor(static_cast<double>(num) / static_cast<double>(two_n));
    const long double c2i2 = static_cast<long double>(c2) * static_cast<long double>(i * i);
    t->index_chirp[i] = phasor(static_cast<double>(c2i2 - std::floor(c2i2)));
    t->twiddle[i] = phasor(-static_cast<double>(i) / n);
  }
  if (n <= DaftTables::kDenseDftLimit) {
    t->dft.resize(static_cast<std::size_t>(n) * n);
    for (std::int64_t m = 0; m < n; ++m) {
      for (std::int64_t k = 0; k < n; ++k) t->dft[m * n + k] = t->twiddle[(m * k) % n];
    }
  }
  return t;
}

}  // namespace

AfdmGrid build_grid(int n, int k_max, int eta_v, double c2, int l_max, int n_cp) {
  if (n < 8) throw InvalidParameter("N must be at least 8, got " + std::to_string(n));
  if (k_max < 0 || eta_v < 0 || l_max < 0 || n_cp < 0) {
    throw InvalidParameter("k_max, eta_v, l_max and n_cp must be non-negative");
  }
  const int segments = 2 * k_max + eta_v;
  if (segments < 1) throw InvalidParameter("chirp segment count C = 2 k_max + eta_v must be >= 1");
  if (n_cp < l_max) {
    throw InvalidParameter("CPP length " + std::to_string(n_cp) + " shorter than l_max " +
                           std::to_string(l_max));
  }
  const int q = guard_width(l_max, k_max);
  if (2 * q >= n) {
    throw InvalidParameter("guard width Q = " + std::to_string(q) + " does not fit N = " +
                           std::to_string(n));
  }
  if (!std::isfinite(c2)) throw InvalidParameter("c2 must be finite");

  AfdmGrid g;
  g.n_ = n;
  g.k_max_ = k_max;
  g.eta_v_ = eta_v;
  g.segments_ = segments;
  g.c1_ = static_cast<double>(segments) / (2.0 * n);
  g.c2_ = c2;
  g.l_max_ = l_max;
  g.n_cp_ = n_cp;
  g.guard_ = q;
  g.tables_ = make_tables(n, segments, c2);
  return g;
}

}  // namespace afdm
