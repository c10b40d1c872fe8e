// SPDX-License-Identifier: Apache-2.0
#pragma once

// Discrete affine Fourier transform (DAFT) modulation/demodulation and the
// chirp-periodic prefix (CPP).
//
//   s[n] = sum_m x[m] phi_n(m),  phi_n(m) = N^-1/2 exp(i2pi(c1 n^2 + c2 m^2 + nm/N))
//   y[m] = sum_n r[n] conj(phi_n(m))
//
// Both directions are direct O(N^2) sums evaluated as chirp, dense DFT row
// dot product, chirp. The dot products run on the SIMD kernel table.

#include <span>

#include "afdm/grid.hpp"

namespace afdm {

/// N chirp-domain symbols: x[m'] at the transmitter or y[m] after demodulation.
struct DaftFrame {
  CVec symbols;
};

/// Time-domain samples. The first `cpp_len` samples are the prefix; index
/// n = 0 is the first sample after it.
struct TimeFrame {
  CVec samples;
  int cpp_len = 0;

  std::size_t body_size() const { return samples.size() - static_cast<std::size_t>(cpp_len); }
  std::span<const Complex> body() const { return std::span(samples).subspan(cpp_len); }
  /// Sample at frame index n, n in [-cpp_len, body_size()).
  Complex at(long n) const { return samples[static_cast<std::size_t>(n + cpp_len)]; }
};

TimeFrame daft_modulate(const DaftFrame& x, const AfdmGrid& g);

/// Full demodulation. Requires cpp_len == 0 and N samples.
DaftFrame daft_demodulate(const TimeFrame& r, const AfdmGrid& g);

/// Demodulates only the requested rows: out[i] = y[rows[i]]. `r` holds the N
/// post-prefix samples. Matches daft_demodulate row for row.
void daft_demodulate_rows(std::span<const Complex> r, const AfdmGrid& g, std::span<const int> rows,
                          std::span<Complex> out);

/// exp(-i2pi c1 (N^2 + 2Nn)), the CPP rotation for prefix index n.
Complex cpp_rotation(const AfdmGrid& g, long n);

/// Prepends n_cp samples with s[n] = s[N+n] exp(-i2pi c1 (N^2 + 2Nn)), n = -n_cp..-1.
/// Throws FrameError when the frame already carries a prefix.
TimeFrame append_cpp(const TimeFrame& s, const AfdmGrid& g);

/// Drops the prefix. Frames without one are returned unchanged.
TimeFrame strip_cpp(const TimeFrame& s);

}  // namespace afdm
