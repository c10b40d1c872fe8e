// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Prints one PASS/FAIL line per criterion; `acceptance N`
// runs a single criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "afdm/channel.hpp"
#include "afdm/harness/experiment.hpp"
#include "afdm/harness/report.hpp"
#include "afdm/harness/validate.hpp"

using namespace afdm;
using namespace afdm::harness;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig sweep_base() {
  ExperimentConfig cfg;
  cfg.estimators = {"proposed", "integer-only"};
  cfg.master_seed = 20240901;
  return cfg;
}

const RmseRow& row(const RmseReport& r, const std::string& est, double snr, double ep, int c) {
  for (const auto& x : r.rows) {
    if (x.estimator == est && x.snr_db == snr && x.ep_ei_db == ep && x.segments == c) return x;
  }
  throw std::runtime_error("missing report row");
}

Outcome unitarity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n : {64, 256}) {
    const AfdmGrid g = build_grid(n, 3, 2, std::sqrt(2.0), 3, 8);
    for (int t = 0; t < 100; ++t) {
      const DaftFrame x{test::random_vector(n, 1000 * n + t)};
      worst = std::max(worst, test::max_abs_diff(daft_demodulate(daft_modulate(x, g), g).symbols, x.symbols));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-10 && secs < 10.0, fmt("max |demod(mod(x)) - x| = %.3g over 200 frames, %.2f s", worst, secs)};
}

Outcome integer_exactness() {
  double worst_ratio = 0.0;
  int decode_errors = 0, misplaced = 0, cases = 0;
  for (int c : {8, 10, 18, 26}) {
    const AfdmGrid g = test::default_grid(c);
    const PilotLayout layout = PilotLayout::from_ep_ei_db(g, 10.0);
    const DaftFrame x = build_pilot_frame(g, layout, CVec(static_cast<std::size_t>(layout.data_count(g))));
    const TimeFrame tx = append_cpp(daft_modulate(x, g), g);
    for (int l = 0; l <= 3; ++l) {
      for (int k = -3; k <= 3; ++k) {
        LosChannel ch;
        ch.delay = l;
        ch.doppler = k;
        const DaftFrame y = daft_demodulate(strip_cpp(apply_los_channel(tx, ch, make_fir_delay(0.0, 16), g, 0)), g);
        const int expect = k + c * l;
        // Strongest bin and the largest of the rest, on the equivalent-delay axis.
        int peak = 0;
        for (int p = 0; p < g.n(); ++p) {
          if (std::abs(pilot_tap(y, p)) > std::abs(pilot_tap(y, peak))) peak = p;
        }
        double side = 0.0;
        for (int p = 0; p < g.n(); ++p) {
          if (p != peak) side = std::max(side, std::abs(pilot_tap(y, p)));
        }
        worst_ratio = std::max(worst_ratio, side / std::abs(pilot_tap(y, peak)));
        misplaced += static_cast<int>(wrap_index(expect, g.n())) != peak ? 1 : 0;
        const IntegerEstimate ie = integer_estimate(y, g);
        decode_errors += (ie.l_hat != l || ie.k_hat != k || ie.flagged) ? 1 : 0;
        ++cases;
      }
    }
  }
  return {worst_ratio < 1e-9 && decode_errors == 0 && misplaced == 0,
          fmt("%d channels (C in {8,10,18,26}): peak misplaced %d, decode errors %d, max sidelobe/peak %.3g", cases,
              misplaced, decode_errors, worst_ratio)};
}

Outcome envelope_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int c : {8, 10, 18, 26}) {
    const FidelityStats s = envelope_fidelity(test::default_grid(c), 100, 7000 + c);
    pass = pass && s.peak_agree == s.draws && s.corr_above == s.draws;
    detail += fmt("C=%d peaks %d/%d corr>0.99 %d/%d (min %.4f mean %.4f); ", c, s.peak_agree, s.draws, s.corr_above,
                  s.draws, s.corr_min, s.corr_mean);
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 120.0;
  return {pass, detail + fmt("%.1f s", secs)};
}

Outcome channel_oracle() {
  const AfdmGrid g = test::default_grid();
  const double at16 = fir_oracle_error(g, 16, 16, 50, 4242);
  const double e4 = fir_oracle_error(g, 4, 4, 50, 4242);
  const double e8 = fir_oracle_error(g, 8, 8, 50, 4242);
  const bool decreasing = e4 > e8 && e8 > at16;
  const double integer = integer_channel_mismatch(g, 16, 4242);
  return {at16 < 1e-2 && decreasing && integer < 1e-9,
          fmt("relative rms (W,O)=(4,4) %.4g, (8,8) %.4g, (16,16) %.4g; integer channels max diff %.3g", e4, e8, at16,
              integer)};
}

struct GridErrors {
  double kappa = 0.0;
  double iota = 0.0;
  int bad = 0;
};

// 9x9 (iota, kappa) grid at l = 1, k = 2 without noise.
GridErrors consistency_grid(bool with_data) {
  const AfdmGrid g = test::default_grid();
  const ElgTable table = elg_curve(g);
  const PilotLayout layout = PilotLayout::from_ep_ei_db(g, 10.0);
  GridErrors out;
  for (int a = 1; a <= 9; ++a) {
    for (int b = 1; b <= 9; ++b) {
      const double iota = a / 10.0, kappa = b / 10.0;
      LosChannel ch;
      ch.delay = 1.0 + iota;
      ch.doppler = 2.0 + kappa;
      const DaftFrame x = with_data ? build_pilot_frame(g, layout, static_cast<std::uint64_t>(10 * a + b))
                                    : build_pilot_frame(g, layout, CVec(static_cast<std::size_t>(layout.data_count(g))));
      const TimeFrame r = strip_cpp(
          apply_los_channel(append_cpp(daft_modulate(x, g), g), ch, make_fir_delay(iota, 16), g, 0));
      const Estimate e = joint_estimate(r, g, table);
      const double ek = std::abs(circular_error(e.doppler() - ch.doppler));
      const double ei = std::abs(e.delay() - ch.delay);
      out.kappa = std::max(out.kappa, ek);
      out.iota = std::max(out.iota, ei);
      out.bad += (ek >= 5e-3 || ei >= 2e-2) ? 1 : 0;
    }
  }
  return out;
}

Outcome noise_free_consistency() {
  const GridErrors pilot = consistency_grid(false);
  const GridErrors data = consistency_grid(true);
  return {pilot.bad == 0,
          fmt("81 channels, pilot only: max |kappa err| %.3g, max |iota err| %.3g, %d outside tolerance "
              "(with QPSK data at 10 dB E_p/E_i, for reference: %.3g, %.3g, %d outside)",
              pilot.kappa, pilot.iota, pilot.bad, data.kappa, data.iota, data.bad)};
}

Outcome floor_separation() {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg = sweep_base();
  cfg.trials_per_point = 500;
  cfg.snr_db_list = {0, 5, 10, 15, 20, 25, 30};
  cfg.ep_ei_db_list = {10};
  const RmseReport rep = run_sweep(cfg);
  bool monotone = true;
  std::string curve;
  for (std::size_t i = 0; i < cfg.snr_db_list.size(); ++i) {
    const RmseRow& r = row(rep, "proposed", cfg.snr_db_list[i], 10, 8);
    curve += fmt("%s%.4g", i ? "," : "", r.delay_rmse);
    if (i > 0) {
      const RmseRow& p = row(rep, "proposed", cfg.snr_db_list[i - 1], 10, 8);
      const double slack = 2.0 * std::hypot(r.delay_stderr, p.delay_stderr);
      monotone = monotone && r.delay_rmse <= p.delay_rmse + slack;
    }
  }
  const double prop = row(rep, "proposed", 30, 10, 8).delay_rmse;
  const double base = row(rep, "integer-only", 30, 10, 8).delay_rmse;
  const double secs = seconds_since(t0);
  return {monotone && base >= 3.0 * prop && secs < 900.0,
          fmt("proposed delay rmse [%s]; at 30 dB proposed %.4g vs integer-only %.4g (ratio %.2f); %.0f s", curve.c_str(),
              prop, base, base / prop, secs)};
}

Outcome c_insensitivity() {
  ExperimentConfig cfg = sweep_base();
  cfg.estimators = {"proposed"};
  cfg.trials_per_point = 300;
  cfg.c_list = {10, 18, 26};
  cfg.snr_db_list = {10, 15, 20, 25, 30};
  const RmseReport rep = run_sweep(cfg);
  bool pass = true;
  std::string detail;
  for (double snr : cfg.snr_db_list) {
    double dlo = 1e9, dhi = 0, klo = 1e9, khi = 0;
    for (int c : cfg.c_list) {
      const RmseRow& r = row(rep, "proposed", snr, 10, c);
      dlo = std::min(dlo, r.delay_rmse);
      dhi = std::max(dhi, r.delay_rmse);
      klo = std::min(klo, r.doppler_rmse);
      khi = std::max(khi, r.doppler_rmse);
    }
    pass = pass && dhi <= 2.0 * dlo && khi <= 2.0 * klo;
    detail += fmt("%g dB delay %.4g..%.4g doppler %.4g..%.4g; ", snr, dlo, dhi, klo, khi);
  }
  return {pass, detail};
}

Outcome pilot_energy_trend() {
  ExperimentConfig cfg = sweep_base();
  cfg.estimators = {"proposed"};
  cfg.trials_per_point = 300;
  cfg.snr_db_list = {20};
  cfg.ep_ei_db_list = {0, 10, 20, 30, 40};
  const RmseReport rep = run_sweep(cfg);
  std::vector<double> d, k;
  for (double ep : cfg.ep_ei_db_list) {
    d.push_back(row(rep, "proposed", 20, ep, 8).delay_rmse);
    k.push_back(row(rep, "proposed", 20, ep, 8).doppler_rmse);
  }
  bool pass = d[1] < d[0] && d[2] < d[1] && k[1] < k[0] && k[2] < k[1];
  pass = pass && std::max(d[3], d[4]) < 2.0 * std::min(d[3], d[4]) && std::max(k[3], k[4]) < 2.0 * std::min(k[3], k[4]);
  for (std::size_t i = 0; i < d.size(); ++i) pass = pass && k[i] < d[i];
  std::string detail;
  for (std::size_t i = 0; i < d.size(); ++i) {
    detail += fmt("E_p/E_i %g dB: delay %.4g doppler %.4g; ", cfg.ep_ei_db_list[i], d[i], k[i]);
  }
  return {pass, detail};
}

Outcome elg_table() {
  const ElgTable t = elg_curve(test::default_grid());
  const double at_half = t.gate[490];
  bool monotone = true;
  for (std::size_t i = 1; i < t.gate.size(); ++i) {
    monotone = monotone && (t.decreasing() ? t.gate[i] < t.gate[i - 1] : t.gate[i] > t.gate[i - 1]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < t.iota.size(); ++i) worst = std::max(worst, std::abs(elg_invert(t, t.gate[i]) - t.iota[i]));
  return {std::abs(at_half) < 1e-9 && monotone && worst < 1e-3,
          fmt("A(0.5) = %.3g, strictly %s over %zu points, round-trip error %.3g", at_half,
              t.decreasing() ? "decreasing" : "increasing", t.gate.size(), worst)};
}

std::string csv_without_wall(const RmseReport& rep) {
  RmseReport copy = rep;
  for (auto& r : copy.rows) r.wall_ms = 0.0;
  std::ostringstream out;
  write_csv(out, copy);
  return out.str();
}

Outcome determinism() {
  ExperimentConfig cfg = sweep_base();
  cfg.estimators = {"proposed", "integer-only", "two-d-search"};
  cfg.trials_per_point = 40;
  cfg.estimates_per_trial = 3;
  cfg.snr_db_list = {5, 25};
  const std::string a = csv_without_wall(run_sweep(cfg));
  const std::string b = csv_without_wall(run_sweep(cfg));
  cfg.threads = 3;
  const std::string c = csv_without_wall(run_sweep(cfg));
  return {a == b && a == c, fmt("%zu-byte CSV, repeat %s, 3-thread run %s", a.size(), a == b ? "identical" : "differs",
                                a == c ? "identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion all[] = {
      {1, "DAFT unitarity", unitarity},
      {2, "integer-channel exactness", integer_exactness},
      {3, "envelope vs exact effective channel", envelope_oracle},
      {4, "FIR channel vs oversampled oracle", channel_oracle},
      {5, "noise-free estimator consistency", noise_free_consistency},
      {6, "error-floor separation", floor_separation},
      {7, "C-insensitivity", c_insensitivity},
      {8, "pilot-energy trend", pilot_energy_trend},
      {9, "ELG curve", elg_table},
      {10, "determinism", determinism},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures;
}
