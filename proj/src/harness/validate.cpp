// SPDX-License-Identifier: Apache-2.0
#include "afdm/harness/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "afdm/channel.hpp"
#include "afdm/harness/experiment.hpp"

namespace afdm::harness {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

FidelityStats envelope_fidelity(const AfdmGrid& g, int draws, std::uint64_t seed, double threshold) {
  const int n = g.n();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> l_dist(0, g.l_max());
  std::uniform_int_distribution<int> k_dist(-g.k_max(), g.k_max());
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::vector<int> rows(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) rows[static_cast<std::size_t>(m)] = m;
  CVec f(static_cast<std::size_t>(n));
  std::vector<double> exact(static_cast<std::size_t>(n)), env(static_cast<std::size_t>(n));

  FidelityStats s;
  double sum = 0.0;
  for (int d = 0; d < draws; ++d) {
    EnvelopeParams p;
    p.l = l_dist(rng);
    p.iota = frac(rng);
    p.k = k_dist(rng);
    p.kappa = frac(rng);
    exact_f_column(g, p, 0, rows, f);
    for (int m = 0; m < n; ++m) {
      exact[static_cast<std::size_t>(m)] = std::abs(f[static_cast<std::size_t>(m)]);
      env[static_cast<std::size_t>(m)] = envelope_magnitude(g, p, m, 0).value;
    }
    const auto pe = std::max_element(exact.begin(), exact.end()) - exact.begin();
    const auto pv = std::max_element(env.begin(), env.end()) - env.begin();
    const double c = pearson(exact, env);
    ++s.draws;
    s.peak_agree += pe == pv ? 1 : 0;
    s.corr_above += c > threshold ? 1 : 0;
    s.corr_min = std::min(s.corr_min, c);
    sum += c;
  }
  s.corr_mean = draws > 0 ? sum / draws : 0.0;
  return s;
}

double fir_oracle_error(const AfdmGrid& g, int half_width, int oversampling, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> delay(0.0, g.l_max());
  std::uniform_real_distribution<double> doppler(-g.k_max(), g.k_max());
  const PilotLayout layout = PilotLayout::from_ep_ei_db(g, 10.0);
  double err = 0.0, ref = 0.0;
  for (int c = 0; c < channels; ++c) {
    LosChannel ch;
    ch.delay = delay(rng);
    ch.doppler = doppler(rng);
    const DaftFrame x = build_pilot_frame(g, layout, rng());
    const TimeFrame tx = append_cpp(daft_modulate(x, g), g);
    const TimeFrame fir = strip_cpp(apply_los_channel(tx, ch, make_fir_delay(ch.frac_delay(), half_width), g, 0));
    const TimeFrame orc = oversampled_oracle(x, g, ch, oversampling);
    for (int i = 0; i < g.n(); ++i) {
      err += std::norm(fir.samples[static_cast<std::size_t>(i)] - orc.samples[static_cast<std::size_t>(i)]);
      ref += std::norm(orc.samples[static_cast<std::size_t>(i)]);
    }
  }
  return std::sqrt(err / ref);
}

double integer_channel_mismatch(const AfdmGrid& g, int oversampling, std::uint64_t seed) {
  const DaftFrame x = build_pilot_frame(g, PilotLayout::from_ep_ei_db(g, 10.0), seed);
  const TimeFrame tx = append_cpp(daft_modulate(x, g), g);
  const FirDelayModel fir = make_fir_delay(0.0, 4);
  double worst = 0.0;
  for (int l = 0; l <= g.l_max(); ++l) {
    for (int k = -g.k_max(); k <= g.k_max(); ++k) {
      LosChannel ch;
      ch.delay = l;
      ch.doppler = k;
      const TimeFrame a = strip_cpp(apply_los_channel(tx, ch, fir, g, 0));
      const TimeFrame b = oversampled_oracle(x, g, ch, oversampling);
      for (int i = 0; i < g.n(); ++i) {
        worst = std::max(worst, std::abs(a.samples[static_cast<std::size_t>(i)] - b.samples[static_cast<std::size_t>(i)]));
      }
    }
  }
  return worst;
}

bool ValidationReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const ValidationLine& l) { return l.passed; });
}

ValidationReport validate_mode(const ExperimentConfig& cfg) {
  cfg.validate();
  ValidationReport rep;
  char buf[160];
  for (int c : cfg.c_list) {
    const AfdmGrid g = cfg.grid(c);
    const FidelityStats s = envelope_fidelity(g, cfg.validate_draws, mix_seed(cfg.master_seed, 0x7431 + c));
    std::snprintf(buf, sizeof buf, "peaks %d/%d, corr>0.99 %d/%d, corr min %.4f mean %.4f", s.peak_agree, s.draws,
                  s.corr_above, s.draws, s.corr_min, s.corr_mean);
    rep.lines.push_back({"envelope-fidelity C=" + std::to_string(c),
                         s.peak_agree == s.draws && s.corr_above == s.draws, s.corr_min, 0.99, buf});
  }

  const AfdmGrid g = cfg.grid(cfg.c_list.front());
  const std::uint64_t seed = mix_seed(cfg.master_seed, 0x6f72);
  const double e = fir_oracle_error(g, cfg.fir_half_width, cfg.oracle_oversampling, cfg.validate_channels, seed);
  std::snprintf(buf, sizeof buf, "W=%d O=%d relative rms %.4g", cfg.fir_half_width, cfg.oracle_oversampling, e);
  rep.lines.push_back({"fir-vs-oracle", e < 1e-2, e, 1e-2, buf});

  double prev = INFINITY;
  bool decreasing = true;
  std::string detail;
  for (int wo : {4, 8, 16}) {
    const double v = fir_oracle_error(g, wo, wo, cfg.validate_channels, seed);
    decreasing = decreasing && v < prev;
    prev = v;
    std::snprintf(buf, sizeof buf, "%s(%d,%d)=%.4g", detail.empty() ? "" : " ", wo, wo, v);
    detail += buf;
  }
  rep.lines.push_back({"fir-vs-oracle-convergence", decreasing, prev, 0.0, detail});

  const double im = integer_channel_mismatch(g, cfg.oracle_oversampling, seed);
  std::snprintf(buf, sizeof buf, "max abs difference %.3g", im);
  rep.lines.push_back({"integer-channel-match", im < 1e-9, im, 1e-9, buf});
  return rep;
}

void write_validation(std::ostream& out, const ValidationReport& report) {
  for (const auto& l : report.lines) {
    out << (l.passed ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
  }
}

}  // namespace afdm::harness
