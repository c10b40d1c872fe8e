// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "support.hpp"
#include "afdm/channel.hpp"

using namespace afdm;

namespace {

TimeFrame prefixed(const AfdmGrid& g, std::uint64_t seed) {
  return append_cpp(daft_modulate({test::random_vector(g.n(), seed)}, g), g);
}

}  // namespace

TEST_CASE("FIR taps are a unit-energy windowed sinc") {
  for (double iota : {0.0, 0.25, 0.5, 0.93}) {
    const FirDelayModel f = make_fir_delay(iota, 16);
    REQUIRE(f.taps.size() == 33);
    double e = 0.0;
    for (double t : f.taps) e += t * t;
    CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
  }
  const FirDelayModel half = make_fir_delay(0.5, 8);
  CHECK(half.tap(0) == doctest::Approx(half.tap(1)));
  CHECK(half.tap(-3) == doctest::Approx(half.tap(4)));
  CHECK_THROWS_AS(make_fir_delay(0.5, 3), InvalidParameter);
  CHECK_THROWS_AS(make_fir_delay(1.0, 16), InvalidParameter);
}

TEST_CASE("integer delay without Doppler is a pure shift through the prefix") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 1);
  LosChannel ch;
  ch.delay = 3.0;
  const TimeFrame r = apply_los_channel(s, ch, make_fir_delay(0.0, 16), g, 0);
  for (long n = -5; n < 256; ++n) CHECK(std::abs(r.at(n) - s.at(n - 3)) < 1e-12);
}

TEST_CASE("integer Doppler multiplies by a per-sample phasor") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 2);
  LosChannel ch;
  ch.delay = 2.0;
  ch.doppler = 1.0;
  const TimeFrame r = apply_los_channel(s, ch, make_fir_delay(0.0, 16), g, 0);
  for (long n = 0; n < 256; ++n) {
    const double ph = -kTwoPi * static_cast<double>(n) / 256.0;
    CHECK(std::abs(r.at(n) - s.at(n - 2) * Complex(std::cos(ph), std::sin(ph))) < 1e-12);
  }
}

TEST_CASE("Doppler phase has constant modulus and a linear slope") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 3);
  LosChannel ch;
  ch.doppler = 2.37;
  const TimeFrame r = apply_los_channel(s, ch, make_fir_delay(0.0, 16), g, 0);
  const double slope = -kTwoPi * 2.37 / 256.0;
  for (long n = 1; n < 256; ++n) {
    const Complex ratio = r.at(n) / s.at(n);
    const Complex prev = r.at(n - 1) / s.at(n - 1);
    CHECK(std::abs(ratio) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::arg(ratio / prev) == doctest::Approx(slope).epsilon(1e-9));
  }
}

TEST_CASE("zero gain leaves only noise") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 4);
  LosChannel ch;
  ch.gain = 0.0;
  ch.sigma2 = 2.0;
  const TimeFrame r = apply_los_channel(s, ch, make_fir_delay(0.0, 16), g, 77);
  const TimeFrame w = awgn({CVec(s.samples.size()), s.cpp_len}, 2.0, 77);
  CHECK(test::max_abs_diff(r.samples, w.samples) == 0.0);
}

TEST_CASE("awgn: identity at zero variance, reproducible, right power") {
  const TimeFrame s{test::random_vector(64, 5), 0};
  CHECK(awgn(s, 0.0, 1).samples == s.samples);
  CHECK(awgn(s, 0.5, 9).samples == awgn(s, 0.5, 9).samples);
  CHECK(awgn(s, 0.5, 9).samples != awgn(s, 0.5, 10).samples);
  CHECK_THROWS_AS(awgn(s, -1.0, 1), InvalidParameter);

  const TimeFrame big = awgn({CVec(1'000'000), 0}, 0.3, 123);
  const double p = test::energy(big.samples) / 1e6;
  CHECK(std::abs(p - 0.3) / 0.3 < 0.01);
}

TEST_CASE("channel rejects delays beyond the prefix and mismatched filters") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 6);
  LosChannel ch;
  ch.delay = 9.5;
  CHECK_THROWS_AS(apply_los_channel(s, ch, make_fir_delay(0.5, 16), g, 0), InvalidParameter);
  ch.delay = 1.5;
  CHECK_THROWS_AS(apply_los_channel(s, ch, make_fir_delay(0.25, 16), g, 0), InvalidParameter);
  ch.delay = -0.5;
  CHECK_THROWS_AS(validate(ch), InvalidParameter);
}

TEST_CASE("deterministic given the seed") {
  const AfdmGrid g = test::default_grid();
  const TimeFrame s = prefixed(g, 7);
  LosChannel ch;
  ch.delay = 1.37;
  ch.doppler = 2.6;
  ch.sigma2 = 0.1;
  const FirDelayModel f = make_fir_delay(ch.frac_delay(), 16);
  CHECK(apply_los_channel(s, ch, f, g, 5).samples == apply_los_channel(s, ch, f, g, 5).samples);
}

TEST_CASE("wrapped continuous signal on the sample grid is the modulated frame") {
  const AfdmGrid g = test::default_grid();
  const DaftFrame x{test::random_vector(256, 8)};
  const TimeFrame s = append_cpp(daft_modulate(x, g), g);
  for (long n = -8; n < 256; n += 5) {
    CHECK(std::abs(wrapped_signal_at(x, g, n * 16, 16) - s.at(n)) < 1e-9);
  }
}

TEST_CASE("wrapped signal jumps in frequency at the segment boundaries") {
  const AfdmGrid g = test::default_grid();
  DaftFrame x{CVec(256)};
  x.symbols[0] = 1.0;
  // m = 0: boundaries at t = qN/C = 32 q. The instantaneous frequency
  // c1 2t - q stays inside [0, 1) so the phase step per fine tick does too.
  const int o = 64;
  for (int q = 0; q < 8; ++q) {
    const long mid = (32L * q + 16) * o;
    const double step = std::arg(wrapped_signal_at(x, g, mid + 1, o) / wrapped_signal_at(x, g, mid, o));
    const double freq = 2.0 * g.c1() * (32.0 * q + 16) - q;
    double got = step / kTwoPi * o;
    if (got < 0) got += o;
    CHECK(got == doctest::Approx(freq).epsilon(1e-2));
  }
}

TEST_CASE("oracle: identity channel reproduces the modulator") {
  const AfdmGrid g = test::default_grid();
  const DaftFrame x{test::random_vector(256, 9)};
  const TimeFrame o = oversampled_oracle(x, g, LosChannel{}, 16);
  CHECK(o.cpp_len == 0);
  CHECK(test::max_abs_diff(o.samples, daft_modulate(x, g).samples) < 1e-9);
}

TEST_CASE("oracle: integer channel equals the FIR channel") {
  const AfdmGrid g = test::default_grid();
  const DaftFrame x{test::random_vector(256, 10)};
  LosChannel ch;
  ch.delay = 2.0;
  ch.doppler = 1.0;
  const TimeFrame fir = strip_cpp(apply_los_channel(append_cpp(daft_modulate(x, g), g), ch,
                                                    make_fir_delay(0.0, 16), g, 0));
  CHECK(test::max_abs_diff(fir.samples, oversampled_oracle(x, g, ch, 16).samples) < 1e-9);
  CHECK_THROWS_AS(oversampled_oracle(x, g, ch, 0), InvalidParameter);
}
