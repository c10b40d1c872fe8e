// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "support.hpp"
#include "afdm/baselines.hpp"
#include "afdm/channel.hpp"

using namespace afdm;

namespace {

DaftFrame demodulated(const AfdmGrid& g, double delay, double doppler, double sigma2 = 0.0, std::uint64_t seed = 1) {
  LosChannel ch;
  ch.delay = delay;
  ch.doppler = doppler;
  ch.sigma2 = sigma2;
  const DaftFrame x = build_pilot_frame(g, PilotLayout::from_ep_ei_db(g, 10.0), seed);
  return daft_demodulate(strip_cpp(apply_los_channel(append_cpp(daft_modulate(x, g), g), ch,
                                                     make_fir_delay(ch.frac_delay(), 16), g, seed + 7)),
                         g);
}

// Pilot column of the effective channel: what the model says a lone pilot produces.
DaftFrame model_frame(const AfdmGrid& g, double delay, double doppler) {
  LosChannel ch;
  ch.delay = delay;
  ch.doppler = doppler;
  ch.gain = Complex(0.8, 0.6);
  DaftFrame y{CVec(static_cast<std::size_t>(g.n()))};
  for (int m = 0; m < g.n(); ++m) y.symbols[m] = std::sqrt(10.0) * h_eff_entry(g, ch, m, 0);
  return y;
}

}  // namespace

TEST_CASE("baseline names") {
  CHECK(to_string(BaselineKind::IntegerOnly) == "integer-only");
  CHECK(to_string(BaselineKind::TwoDSearch) == "two-d-search");
}

TEST_CASE("integer-only: exact on integer channels, floored on fractional ones") {
  const AfdmGrid g = test::default_grid();
  const Estimate e = integer_only(demodulated(g, 2.0, -1.0), g);
  CHECK(e.delay() == 2.0);
  CHECK(e.doppler() == -1.0);
  CHECK(e.iota_hat == 0.0);
  CHECK(e.kappa_hat == 0.0);

  const Estimate half = integer_only(demodulated(g, 1.5, 1.0, 1e-4), g);
  CHECK(std::abs(half.delay() - 1.5) >= 0.3);
}

TEST_CASE("integer-only matches the joint estimator's integer parts") {
  const AfdmGrid g = test::default_grid();
  const ElgTable table = elg_curve(g);
  for (int l = 0; l <= 3; ++l) {
    for (int k = -3; k <= 3; k += 2) {
      LosChannel ch;
      ch.delay = l;
      ch.doppler = k;
      const DaftFrame x = build_pilot_frame(g, PilotLayout::from_ep_ei_db(g, 10.0), 5);
      const TimeFrame r = strip_cpp(
          apply_los_channel(append_cpp(daft_modulate(x, g), g), ch, make_fir_delay(0.0, 16), g, 0));
      const Estimate io = integer_only(daft_demodulate(r, g), g);
      const Estimate je = joint_estimate(r, g, table);
      CHECK(io.l_hat == je.l_hat);
      CHECK(io.m_peak == je.m_peak);
      CHECK(std::abs(io.doppler() - je.doppler()) < 1e-3);
    }
  }
}

TEST_CASE("2-D search recovers model-generated channels") {
  const AfdmGrid g = test::default_grid();
  const double cases[][2] = {{1.3, 2.4}, {0.45, -1.7}, {2.8, 0.2}};
  for (const auto& c : cases) {
    const DaftFrame y = model_frame(g, c[0], c[1]);
    const TwoDResult r = two_d_search(y, g, integer_estimate(y, g));
    CAPTURE(c[0]);
    CHECK(std::abs(r.delay - c[0]) < 1e-2);
    CHECK(std::abs(r.doppler - c[1]) < 1e-2);
    CHECK(r.iterations <= 200);
  }
}

TEST_CASE("2-D search started at the truth converges at once") {
  const AfdmGrid g = test::default_grid();
  const DaftFrame y = model_frame(g, 2.0, 1.0);
  const TwoDResult r = two_d_search(y, g, {2, 1, 17, false});
  CHECK(r.converged);
  CHECK(std::abs(r.delay - 2.0) < 1e-3);
  CHECK(std::abs(r.doppler - 1.0) < 1e-3);
}

TEST_CASE("2-D objective peaks at the truth") {
  const AfdmGrid g = test::default_grid();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double delay = 3.0 * u(rng);
    const double doppler = -3.0 + 6.0 * u(rng);
    const DaftFrame y = model_frame(g, delay, doppler);
    const double at = two_d_objective(y, g, delay, doppler);
    for (double dl : {-0.5, 0.0, 0.5}) {
      for (double dk : {-0.5, 0.0, 0.5}) {
        if (dl == 0.0 && dk == 0.0) continue;
        CHECK(at >= two_d_objective(y, g, delay + dl, doppler + dk));
      }
    }
  }
}

TEST_CASE("2-D estimate on the FIR channel stays in the box and improves on its start") {
  const AfdmGrid g = test::default_grid();
  const DaftFrame y = demodulated(g, 1.3, 2.4);
  const IntegerEstimate init = integer_estimate(y, g);
  const TwoDResult r = two_d_search(y, g, init);
  CHECK(r.delay >= 0.0);
  CHECK(r.delay <= 3.0);
  CHECK(std::abs(r.doppler) <= 3.0);
  CHECK(r.objective >= two_d_objective(y, g, init.l_hat, init.k_hat));
  const Estimate e = two_d_estimate(y, g);
  CHECK(e.delay() == doctest::Approx(r.delay));
  CHECK(e.kappa_hat >= 0.0);
  CHECK(e.kappa_hat < 1.0);
}
