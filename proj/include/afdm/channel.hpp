// SPDX-License-Identifier: Apache-2.0
#pragma once

// Line-of-sight doubly selective channel: one path with complex gain h,
// normalized delay L = l + iota (samples) and normalized Doppler K = k + kappa
// (subcarrier spacings), plus complex AWGN.
//
// Doppler follows the sign convention of the sampled AFDM input/output model:
// the path is rotated by exp(-i2pi K n / N), so a positive K together with a
// delay L lands the pilot at equivalent delay (K + C L) mod N, and receiver
// compensation exp(+i2pi kappa_comp n / N) leaves K - kappa_comp.

#include <cstdint>
#include <vector>

#include "afdm/daft.hpp"

namespace afdm {

struct LosChannel {
  Complex gain{1.0, 0.0};
  double delay = 0.0;    ///< L >= 0
  double doppler = 0.0;  ///< K
  double sigma2 = 0.0;   ///< noise variance per complex sample

  int int_delay() const { return static_cast<int>(std::floor(delay)); }
  double frac_delay() const { return delay - std::floor(delay); }
  int int_doppler() const { return static_cast<int>(std::floor(doppler)); }
  double frac_doppler() const { return doppler - std::floor(doppler); }
};

/// Throws InvalidParameter for L < 0, sigma2 < 0 or non-finite fields.
void validate(const LosChannel& ch);

/// Windowed-sinc fractional delay filter: tap i (i = -W..W) of the integer
/// delay l + i is sinc(i - iota) times a raised-cosine window, normalized to
/// unit energy.
struct FirDelayModel {
  int half_width = 16;
  double frac = 0.0;
  std::vector<double> taps;  ///< 2W+1 entries, taps[i + W]

  double tap(int i) const { return taps[static_cast<std::size_t>(i + half_width)]; }
};

/// Throws InvalidParameter when W < 4 or iota is outside [0, 1).
FirDelayModel make_fir_delay(double iota, int half_width = 16);

/// Passes a prefixed frame through the channel.
///
/// out[n] = h sum_i taps(i) s[n - l - i] exp(-i2pi K n/N) + w[n], n = -n_cp..N-1,
/// with w ~ CN(0, sigma2) drawn from `seed`. The convolution runs over the
/// transmitted burst: samples after the frame are zero, and filter taps reaching
/// left of the prefix continue the chirp-periodic extension. Throws
/// InvalidParameter when l exceeds the frame's prefix or the filter does not
/// match the channel's fractional delay.
TimeFrame apply_los_channel(const TimeFrame& s, const LosChannel& ch, const FirDelayModel& fir,
                            const AfdmGrid& g, std::uint64_t seed);

/// Adds i.i.d. CN(0, sigma2). sigma2 == 0 returns the input unchanged.
TimeFrame awgn(const TimeFrame& s, double sigma2, std::uint64_t seed);

/// Noise-free received frame (N samples, no prefix) built from the
/// continuous-time wrapped chirp signal.
///
/// The signal is synthesized on a grid O times finer than the sample grid with
/// its per-segment frequency wrap, delayed by round(O L) fine ticks, rotated by
/// the Doppler term and decimated by O. Only the ticks that survive decimation
/// are evaluated. Throws InvalidParameter when O < 1 or the delay exceeds the
/// prefix.
TimeFrame oversampled_oracle(const DaftFrame& x, const AfdmGrid& g, const LosChannel& ch,
                             int oversampling);

/// Continuous-time wrapped signal at t = tick / O (tick may be negative, in
/// which case the chirp-periodic extension applies). Exposed for tests.
Complex wrapped_signal_at(const DaftFrame& x, const AfdmGrid& g, long tick, int oversampling);

}  // namespace afdm
