// SPDX-License-Identifier: Apache-2.0
#include "afdm/channel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "afdm/simd/kernels.hpp"

namespace afdm {

void validate(const LosChannel& ch) {
  if (!std::isfinite(ch.delay) || !std::isfinite(ch.doppler) || !std::isfinite(ch.sigma2) ||
      !std::isfinite(ch.gain.real()) || !std::isfinite(ch.gain.imag())) {
    throw InvalidParameter("channel parameters must be finite");
  }
  if (ch.delay < 0.0) throw InvalidParameter("channel delay must be non-negative");
  if (ch.sigma2 < 0.0) throw InvalidParameter("noise variance must be non-negative");
}

FirDelayModel make_fir_delay(double iota, int half_width) {
  if (half_width < 4) throw InvalidParameter("FIR half width must be at least 4");
  if (!(iota >= 0.0 && iota < 1.0)) throw InvalidParameter("fractional delay must lie in [0, 1)");
  FirDelayModel fir;
  fir.half_width = half_width;
  fir.frac = iota;
  fir.taps.resize(2 * static_cast<std::size_t>(half_width) + 1);
  double energy = 0.0;
  for (int i = -half_width; i <= half_width; ++i) {
    const double x = i - iota;
    const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / (half_width + 1)));
    const double t = sinc(x) * window;
    fir.taps[i + half_width] = t;
    energy += t * t;
  }
  const double norm = 1.0 / std::sqrt(energy);
  for (double& t : fir.taps) t *= norm;
  return fir;
}

TimeFrame awgn(const TimeFrame& s, double sigma2, std::uint64_t seed) {
  if (!(sigma2 >= 0.0)) throw InvalidParameter("noise variance must be non-negative");
  TimeFrame out = s;
  if (sigma2 == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma2 / 2.0));
  for (Complex& v : out.samples) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += Complex{re, im};
  }
  return out;
}

TimeFrame apply_los_channel(const TimeFrame& s, const LosChannel& ch, const FirDelayModel& fir,
                            const AfdmGrid& g, std::uint64_t seed) {
  validate(ch);
  const int n = g.n();
  if (s.body_size() != static_cast<std::size_t>(n)) throw FrameError("apply_los_channel: frame length");
  const int l = ch.int_delay();
  if (l > s.cpp_len) {
    throw InvalidParameter("integer delay " + std::to_string(l) + " exceeds the CPP margin " +
                           std::to_string(s.cpp_len));
  }
  if (std::abs(fir.frac - ch.frac_delay()) > 1e-12) {
    throw InvalidParameter("FIR model was designed for a different fractional delay");
  }
  const int w = fir.half_width;
  if (l + w > n) throw InvalidParameter("FIR span exceeds the frame length");

  // Transmitted burst with the chirp-periodic extension continued far enough
  // left for the longest filter tap.
  const long left = static_cast<long>(l) + w;
  const long ext = std::max<long>(left, s.cpp_len);
  CVec burst(static_cast<std::size_t>(ext + n + w), Complex{});
  for (long j = -ext; j < n; ++j) {
    Complex v;
    if (j >= -s.cpp_len) {
      v = s.at(j);
    } else {
      v = s.at(j + n) * cpp_rotation(g, j);
    }
    burst[static_cast<std::size_t>(j + ext)] = v;
  }

  const std::size_t out_len = s.samples.size();
  TimeFrame out;
  out.cpp_len = s.cpp_len;
  out.samples.assign(out_len, Complex{});
  // out[n] += tap(i) * burst[n - l - i]; one axpy per tap over the whole output.
  for (int i = -w; i <= w; ++i) {
    const long first = -static_cast<long>(s.cpp_len) - l - i + ext;
    simd::axpy_real(fir.tap(i), std::span<const Complex>(burst).subspan(first, out_len), out.samples);
  }

  const double doppler = ch.doppler;
  for (long j = -s.cpp_len; j < n; ++j) {
    // exp(-i2pi K j / N), reduced before scaling to keep the argument small.
    const double cycles = -std::fmod(doppler * static_cast<double>(j), static_cast<double>(n)) / n;
    out.samples[j + s.cpp_len] *= ch.gain * phasor(cycles);
  }
  return awgn(out, ch.sigma2, seed);
}

Complex wrapped_signal_at(const DaftFrame& x, const AfdmGrid& g, long tick, int oversampling) {
  const std::int64_t n = g.n();
  const std::int64_t o = oversampling;
  const std::int64_t c = g.segments();
  if (tick < 0) {
    // s(t) = s(t + N) exp(-i2pi c1 (N^2 + 2Nt)); c1 (N^2 + 2Nt) = C (NO + 2 tick) / (2O).
    const std::int64_t num = wrap_index(c * (n * o + 2 * tick), 2 * o);
    return wrapped_signal_at(x, g, tick + n * o, oversampling) *
           phasor(-static_cast<double>(num) / static_cast<double>(2 * o));
  }
  // Segment q of subcarrier m starts at t_{m,q} = (qN - m)/C; within it the phase is
  //   c2 m^2 + c1 t^2 + m t/N - q t + a_q + phi_q,
  // where a_q + phi_q = floor(a_q) is a whole number of cycles and drops out.
  // With t = tick/O all remaining terms share the denominator 2 N O^2.
  const std::int64_t den = 2 * n * o * o;
  const std::int64_t j = tick;
  const std::int64_t quad = wrap_index(c * wrap_index(j * j, den), den);
  const DaftTables& t = g.tables();
  Complex acc{};
  for (std::int64_t m = 0; m < n; ++m) {
    const Complex xm = x.symbols[m];
    if (xm == Complex{}) continue;
    std::int64_t q = (c * j + o * m) / (o * n);
    q = std::clamp<std::int64_t>(q, 0, c);
    const std::int64_t lin = wrap_index(2 * o * j * (m - n * q), den);
    const std::int64_t num = (quad + lin) % den;
    acc += xm * t.index_chirp[m] * phasor(static_cast<double>(num) / static_cast<double>(den));
  }
  return acc / std::sqrt(static_cast<double>(n));
}

TimeFrame oversampled_oracle(const DaftFrame& x, const AfdmGrid& g, const LosChannel& ch,
                             int oversampling) {
  validate(ch);
  if (oversampling < 1) throw InvalidParameter("oversampling factor must be >= 1");
  const int n = g.n();
  if (x.symbols.size() != static_cast<std::size_t>(n)) throw FrameError("oversampled_oracle: frame length");
  const long delay_ticks = std::lround(ch.delay * oversampling);
  if (delay_ticks > static_cast<long>(g.n_cp()) * oversampling) {
    throw InvalidParameter("oracle delay exceeds the CPP");
  }
  TimeFrame r;
  r.samples.resize(n);
  for (long i = 0; i < n; ++i) {
    const Complex s = wrapped_signal_at(x, g, i * oversampling - delay_ticks, oversampling);
    const double cycles = -std::fmod(ch.doppler * static_cast<double>(i), static_cast<double>(n)) / n;
    r.samples[i] = ch.gain * s * phasor(cycles);
  }
  return r;
}

}  // namespace afdm
