// SPDX-License-Identifier: Apache-2.0
#include "afdm/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "afdm/baselines.hpp"

namespace afdm::harness {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PointContext make_context(const ExperimentConfig& cfg, int segments) {
  AfdmGrid g = cfg.grid(segments);
  ElgTable t = elg_curve(g);
  return {std::move(g), std::move(t)};
}

LosChannel draw_channel(const ExperimentConfig& cfg, std::uint64_t trial_index) {
  std::mt19937_64 rng(mix_seed(mix_seed(cfg.master_seed, 0x43484e), trial_index));
  std::uniform_real_distribution<double> delay(0.0, cfg.l_max);
  std::uniform_real_distribution<double> doppler(-cfg.k_max, cfg.k_max);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  LosChannel ch;
  ch.delay = delay(rng);
  ch.doppler = doppler(rng);
  ch.gain = phasor(phase(rng));
  return ch;
}

double frame_power(const AfdmGrid& g, const PilotLayout& layout) {
  const double p = layout.pilot_amplitude;
  return (p * p + layout.data_count(g)) / g.n();
}

double circular_error(double e) {
  double best = e;
  for (double w : {e - 1.0, e + 1.0}) {
    if (std::abs(w) < std::abs(best)) best = w;
  }
  return best;
}

TrialResult run_trial(const ExperimentConfig& cfg, const PointContext& ctx, const SweepPoint& point,
                      std::uint64_t trial_index) {
  const AfdmGrid& g = ctx.grid;
  const PilotLayout layout = PilotLayout::from_ep_ei_db(g, point.ep_ei_db);
  TrialResult res;
  res.truth = draw_channel(cfg, trial_index);
  res.truth.sigma2 = frame_power(g, layout) / std::pow(10.0, point.snr_db / 10.0);
  const FirDelayModel fir = make_fir_delay(res.truth.frac_delay(), cfg.fir_half_width);

  res.outcomes.resize(cfg.estimators.size());
  for (std::size_t e = 0; e < cfg.estimators.size(); ++e) res.outcomes[e].name = cfg.estimators[e];

  const int frames = cfg.average_estimates ? cfg.estimates_per_trial : 1;
  const std::uint64_t stream = mix_seed(mix_seed(cfg.master_seed, trial_index), 0x5057ULL + point.index);
  for (int f = 0; f < frames; ++f) {
    const std::uint64_t fs = mix_seed(stream, static_cast<std::uint64_t>(f));
    const DaftFrame x = build_pilot_frame(g, layout, mix_seed(fs, 1));
    const TimeFrame tx = append_cpp(daft_modulate(x, g), g);
    const TimeFrame rx = strip_cpp(apply_los_channel(tx, res.truth, fir, g, mix_seed(fs, 2)));
    DaftFrame y;
    bool have_y = false;

    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      const auto t0 = std::chrono::steady_clock::now();
      Estimate est;
      const std::string& name = cfg.estimators[e];
      if (name == "proposed") {
        est = joint_estimate(rx, g, ctx.table, cfg.search);
      } else {
        if (!have_y) {
          y = daft_demodulate(rx, g);
          have_y = true;
        }
        est = name == "integer-only" ? integer_only(y, g) : two_d_estimate(y, g);
      }
      const auto t1 = std::chrono::steady_clock::now();
      EstimatorOutcome& o = res.outcomes[e];
      o.delay += est.delay() / frames;
      o.doppler += est.doppler() / frames;
      o.pspr += (std::isfinite(est.pspr) ? est.pspr : 0.0) / frames;
      o.flagged += est.flagged ? 1 : 0;
      o.elapsed_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
  }
  for (auto& o : res.outcomes) {
    o.delay_error = o.delay - res.truth.delay;
    o.doppler_error = circular_error(o.doppler - res.truth.doppler);
  }
  return res;
}

namespace {

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, count));
  std::atomic<int> next{0};
  auto body = [&] {
    for (int i = next++; i < count; i = next++) fn(i);
  };
  if (workers == 1) {
    body();
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
}

RmseRow reduce(const std::vector<TrialResult>& trials, std::size_t e, const SweepPoint& p) {
  RmseRow row;
  row.estimator = trials.front().outcomes[e].name;
  row.snr_db = p.snr_db;
  row.ep_ei_db = p.ep_ei_db;
  row.segments = p.segments;
  row.trials = static_cast<int>(trials.size());
  double sd = 0, sk = 0, sd2 = 0, sk2 = 0, ps = 0, ms = 0;
  for (const auto& t : trials) {
    const EstimatorOutcome& o = t.outcomes[e];
    const double d2 = o.delay_error * o.delay_error;
    const double k2 = o.doppler_error * o.doppler_error;
    sd += d2;
    sk += k2;
    sd2 += d2 * d2;
    sk2 += k2 * k2;
    ps += o.pspr;
    ms += o.elapsed_ms;
    row.flagged += o.flagged;
  }
  const double n = row.trials;
  row.delay_rmse = std::sqrt(sd / n);
  row.doppler_rmse = std::sqrt(sk / n);
  row.mean_pspr = ps / n;
  row.wall_ms = ms;
  // Delta method: se(sqrt(m)) = se(m) / (2 sqrt(m)).
  auto se = [n](double s, double s2, double rmse) {
    if (n < 2 || rmse <= 0) return 0.0;
    const double mean = s / n;
    const double var = std::max(0.0, (s2 / n - mean * mean) * n / (n - 1));
    return std::sqrt(var / n) / (2.0 * rmse);
  };
  row.delay_stderr = se(sd, sd2, row.delay_rmse);
  row.doppler_stderr = se(sk, sk2, row.doppler_rmse);
  return row;
}

}  // namespace

RmseReport run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  RmseReport report;
  int index = 0;
  for (int c : cfg.c_list) {
    const PointContext ctx = make_context(cfg, c);
    for (double ep : cfg.ep_ei_db_list) {
      for (double snr : cfg.snr_db_list) {
        const SweepPoint point{c, snr, ep, index++};
        std::vector<TrialResult> trials(static_cast<std::size_t>(cfg.trials_per_point));
        parallel_for(cfg.trials_per_point, cfg.threads, [&](int i) {
          trials[static_cast<std::size_t>(i)] = run_trial(cfg, ctx, point, static_cast<std::uint64_t>(i));
        });
        for (std::size_t e = 0; e < cfg.estimators.size(); ++e) report.rows.push_back(reduce(trials, e, point));
      }
    }
  }
  return report;
}

}  // namespace afdm::harness
