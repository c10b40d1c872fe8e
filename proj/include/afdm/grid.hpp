// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>

#include "afdm/types.hpp"

namespace afdm {

/// Precomputed phasor tables shared by every transform on one grid.
struct DaftTables {
  CVec time_chirp;   ///< exp(+i2pi c1 n^2), n = 0..N-1
  CVec index_chirp;  ///< exp(+i2pi c2 m^2), m = 0..N-1
  CVec twiddle;      ///< exp(-i2pi k/N), k = 0..N-1
  CVec dft;          ///< row-major exp(-i2pi mn/N); empty when N is above kDenseDftLimit

  static constexpr int kDenseDftLimit = 1024;

  /// Row m of the DFT kernel. Uses `scratch` (length N) when the dense table is absent.
  std::span<const Complex> dft_row(int m, std::span<Complex> scratch) const;
};

/// Waveform constants for one AFDM frame. Delays are in samples and Doppler
/// in subcarrier spacings (unit sample interval and unit subcarrier spacing).
class AfdmGrid {
 public:
  int n() const { return n_; }
  int k_max() const { return k_max_; }
  int eta_v() const { return eta_v_; }
  /// Number of chirp segments C = 2 k_max + eta_v.
  int segments() const { return segments_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  int l_max() const { return l_max_; }
  int n_cp() const { return n_cp_; }
  /// Guard width Q on each side of the pilot.
  int guard() const { return guard_; }

  const DaftTables& tables() const { return *tables_; }

 private:
  friend AfdmGrid build_grid(int n, int k_max, int eta_v, double c2, int l_max, int n_cp);

  int n_ = 0;
  int k_max_ = 0;
  int eta_v_ = 0;
  int segments_ = 0;
  double c1_ = 0.0;
  double c2_ = 0.0;
  int l_max_ = 0;
  int n_cp_ = 0;
  int guard_ = 0;
  std::shared_ptr<const DaftTables> tables_;
};

/// Validates the combination and precomputes the transform tables.
/// Throws InvalidParameter when N < 8, C < 1, n_cp < l_max or 2Q >= N.
AfdmGrid build_grid(int n, int k_max, int eta_v, double c2, int l_max, int n_cp);

/// Q = 2 l_max k_max + 2 k_max + l_max.
constexpr int guard_width(int l_max, int k_max) { return 2 * l_max * k_max + 2 * k_max + l_max; }

/// Non-negative remainder.
constexpr long wrap_index(long i, long n) {
  const long r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace afdm
