// SPDX-License-Identifier: Apache-2.0
#include "afdm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace afdm {

PilotLayout PilotLayout::from_ep_ei_db(const AfdmGrid& g, double ep_ei_db) {
  return {std::sqrt(std::pow(10.0, ep_ei_db / 10.0)), g.guard()};
}

CVec random_qpsk(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.5);
  const double a = std::sqrt(0.5);
  CVec out(count);
  for (auto& s : out) {
    const double re = bit(rng) ? a : -a;
    const double im = bit(rng) ? a : -a;
    s = {re, im};
  }
  return out;
}

DaftFrame build_pilot_frame(const AfdmGrid& g, const PilotLayout& layout, std::span<const Complex> data) {
  const int n = g.n();
  const int q = layout.guard_width;
  if (q < 0 || 2 * q >= n) throw InvalidParameter("guard width does not fit the frame");
  if (static_cast<int>(data.size()) != layout.data_count(g)) {
    throw InvalidParameter("pilot frame expects " + std::to_string(layout.data_count(g)) + " data symbols");
  }
  DaftFrame x{CVec(n)};
  x.symbols[0] = layout.pilot_amplitude;
  std::copy(data.begin(), data.end(), x.symbols.begin() + layout.data_begin());
  return x;
}

DaftFrame build_pilot_frame(const AfdmGrid& g, const PilotLayout& layout, std::uint64_t data_seed) {
  const int count = layout.data_count(g);
  if (count < 0) throw InvalidParameter("guard width does not fit the frame");
  const CVec data = random_qpsk(static_cast<std::size_t>(count), data_seed);
  return build_pilot_frame(g, layout, data);
}

void SearchConfig::validate() const {
  if (coarse_points < 16) throw InvalidParameter("coarse_points must be at least 16");
  if (!(refine_tol > 0.0 && refine_tol < 0.1)) throw InvalidParameter("refine_tol must lie in (0, 0.1)");
}

int row_of_tap(const AfdmGrid& g, int p) { return static_cast<int>(wrap_index(-p, g.n())); }

Complex pilot_tap(const DaftFrame& y, int p) {
  const long n = static_cast<long>(y.symbols.size());
  return y.symbols[static_cast<std::size_t>(wrap_index(-p, n))];
}

PilotRegion pilot_region(const AfdmGrid& g) {
  return {-g.k_max(), g.k_max() + g.segments() * g.l_max()};
}

namespace {

IntegerEstimate decode_peak(const AfdmGrid& g, int peak) {
  const int c = g.segments();
  IntegerEstimate e;
  e.m_peak = peak;
  e.l_hat = static_cast<int>(std::lround(static_cast<double>(peak) / c));
  e.k_hat = peak - c * e.l_hat;
  if (std::abs(e.k_hat) > g.k_max()) e.flagged = true;
  if (e.l_hat < 0 || e.l_hat > g.l_max()) {
    e.flagged = true;
    e.l_hat = std::clamp(e.l_hat, 0, g.l_max());
    e.k_hat = peak - c * e.l_hat;
  }
  return e;
}

template <class Tap>
int argmax_region(const AfdmGrid& g, Tap&& tap) {
  const PilotRegion reg = pilot_region(g);
  int best = reg.first;
  double best_pow = -1.0;
  for (int p = reg.first; p <= reg.last; ++p) {
    const double pw = std::norm(tap(p));
    if (pw > best_pow) {
      best_pow = pw;
      best = p;
    }
  }
  return best;
}

template <class Tap>
double pspr_of(const AfdmGrid& g, int peak, Tap&& tap) {
  const PsprWindow w = pspr_window(g, peak);
  double side = 0.0;
  for (int p = w.first; p <= w.last; ++p) {
    if (p != peak) side += std::norm(tap(p));
  }
  side /= g.segments();
  if (side <= 0.0) return std::numeric_limits<double>::infinity();
  return std::norm(tap(peak)) / side;
}

// Rows covering the pilot region padded by half a PSPR window on both sides.
struct PartialRows {
  int first_tap = 0;
  std::vector<int> rows;
};

PartialRows partial_rows(const AfdmGrid& g) {
  const PilotRegion reg = pilot_region(g);
  const int c = g.segments();
  PartialRows pr;
  pr.first_tap = reg.first - c / 2;
  const int last = reg.last + (c + 1) / 2;
  for (int p = pr.first_tap; p <= last; ++p) pr.rows.push_back(row_of_tap(g, p));
  return pr;
}

CVec compensated_body(const TimeFrame& r, double kappa_comp) {
  const auto body = r.body();
  const double n = static_cast<double>(body.size());
  CVec out(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    out[i] = body[i] * phasor(std::fmod(kappa_comp * static_cast<double>(i), n) / n);
  }
  return out;
}

}  // namespace

IntegerEstimate integer_estimate(const DaftFrame& y, const AfdmGrid& g) {
  if (static_cast<int>(y.symbols.size()) != g.n()) throw FrameError("frame length differs from N");
  const int peak = argmax_region(g, [&](int p) { return pilot_tap(y, p); });
  return decode_peak(g, peak);
}

TimeFrame compensate(const TimeFrame& r, double kappa_comp) {
  if (r.cpp_len != 0) throw FrameError("compensation expects a frame without prefix");
  return {compensated_body(r, kappa_comp), 0};
}

PsprWindow pspr_window(const AfdmGrid& g, int m_peak) {
  const int c = g.segments();
  return {m_peak - c / 2, m_peak + (c + 1) / 2 - 1};
}

double pspr(const DaftFrame& y_tilde, int m_peak, const AfdmGrid& g) {
  return pspr_of(g, m_peak, [&](int p) { return pilot_tap(y_tilde, p); });
}

double pspr_at(const TimeFrame& r, const AfdmGrid& g, double kappa_comp, int* m_peak) {
  if (r.cpp_len != 0 || static_cast<int>(r.samples.size()) != g.n()) {
    throw FrameError("estimation expects N samples without prefix");
  }
  const PartialRows pr = partial_rows(g);
  const CVec body = compensated_body(r, kappa_comp);
  CVec z(pr.rows.size());
  daft_demodulate_rows(body, g, pr.rows, z);
  auto tap = [&](int p) { return z[static_cast<std::size_t>(p - pr.first_tap)]; };
  const int peak = argmax_region(g, tap);
  if (m_peak) *m_peak = peak;
  return pspr_of(g, peak, tap);
}

KappaEstimate estimate_kappa(const TimeFrame& r, const AfdmGrid& g, const SearchConfig& cfg) {
  cfg.validate();
  const int pts = cfg.coarse_points;
  const double step = 1.0 / pts;
  double best_k = 0.0;
  double best_v = -1.0;
  for (int j = 0; j < pts; ++j) {
    const double v = pspr_at(r, g, j * step);
    if (v > best_v) {
      best_v = v;
      best_k = j * step;
    }
  }

  if (std::isfinite(best_v)) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_k - step;
    double b = best_k + step;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = pspr_at(r, g, x1);
    double f2 = pspr_at(r, g, x2);
    while (b - a > cfg.refine_tol) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = pspr_at(r, g, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = pspr_at(r, g, x2);
      }
    }
    const double mid = 0.5 * (a + b);
    const double fm = pspr_at(r, g, mid);
    if (fm >= best_v) {
      best_k = mid;
      best_v = fm;
    }
  }

  KappaEstimate out;
  out.kappa_hat = best_k - std::floor(best_k);
  out.kappa_applied = best_k;
  out.y_tilde = daft_demodulate({compensated_body(r, best_k), 0}, g);
  out.m_peak = integer_estimate(out.y_tilde, g).m_peak;
  out.pspr = pspr(out.y_tilde, out.m_peak, g);
  return out;
}

IotaEstimate estimate_iota(const DaftFrame& y_tilde, int l_hat, int k_hat, const AfdmGrid& g,
                           const ElgTable& table, const SearchConfig& cfg) {
  const int c = g.segments();
  const int peak = k_hat + c * l_hat;
  IotaEstimate out;
  int early = peak;
  out.l_floor = l_hat;
  if (l_hat > 0 && std::abs(pilot_tap(y_tilde, peak - c)) > std::abs(pilot_tap(y_tilde, peak + c))) {
    early = peak - c;
    out.l_floor = l_hat - 1;
  }
  const double mag_e = std::abs(pilot_tap(y_tilde, early));
  const double mag_l = std::abs(pilot_tap(y_tilde, early + c));
  const double lo = table.decreasing() ? table.max_iota() : table.min_iota();
  const double hi = table.decreasing() ? table.min_iota() : table.max_iota();
  if (mag_e == 0.0 || mag_l == 0.0) {
    // Endpoint on the side of the surviving tap.
    out.gate_db = mag_e == 0.0 ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
    out.iota_hat = mag_e == 0.0 ? lo : hi;
    if (mag_e == 0.0 && mag_l == 0.0) out.iota_hat = table.min_iota();
    return out;
  }
  out.gate_db = 10.0 * std::log10(mag_e) - 10.0 * std::log10(mag_l);
  if (cfg.near_integer_margin_db >= 0.0) {
    // Gate far above the table: true delay sits on the early tap; far below:
    // on the late one.
    const bool toward_early = table.decreasing() ? out.gate_db > table.gate_hi() + cfg.near_integer_margin_db
                                                 : out.gate_db < table.gate_lo() - cfg.near_integer_margin_db;
    const bool toward_late = table.decreasing() ? out.gate_db < table.gate_lo() - cfg.near_integer_margin_db
                                                : out.gate_db > table.gate_hi() + cfg.near_integer_margin_db;
    if (toward_early) {
      out.iota_hat = 0.0;
      return out;
    }
    if (toward_late && out.l_floor < g.l_max()) {
      out.iota_hat = 0.0;
      out.l_floor += 1;
      return out;
    }
  }
  out.iota_hat = elg_invert(table, out.gate_db);
  return out;
}

Estimate joint_estimate(const TimeFrame& r, const AfdmGrid& g, const ElgTable& table, const SearchConfig& cfg) {
  KappaEstimate ke = estimate_kappa(r, g, cfg);
  const IntegerEstimate ie = integer_estimate(ke.y_tilde, g);
  const IotaEstimate io = estimate_iota(ke.y_tilde, ie.l_hat, ie.k_hat, g, table, cfg);
  Estimate e;
  e.l_hat = io.l_floor;
  e.k_hat = ie.k_hat + static_cast<int>(std::floor(ke.kappa_applied));
  e.kappa_hat = ke.kappa_hat;
  e.iota_hat = io.iota_hat;
  e.pspr = ke.pspr;
  e.m_peak = ie.m_peak;
  e.flagged = ie.flagged;
  return e;
}

}  // namespace afdm
