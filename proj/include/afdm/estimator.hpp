// SPDX-License-Identifier: Apache-2.0
#pragma once

// Embedded-pilot estimation of one LOS path.
//
// Receiver indices below use the equivalent-delay axis: position p of the
// pilot response z[p] = y[(-p) mod N] holds the tap with equivalent delay p,
// so an integer path (l, k) peaks at p = k + C l. Negative p are allowed down
// to -k_max.

#include <cstdint>
#include <optional>
#include <span>

#include "afdm/daft.hpp"
#include "afdm/effective_channel.hpp"

namespace afdm {

struct PilotLayout {
  double pilot_amplitude = 1.0;
  int guard_width = 0;

  /// Pilot amplitude sqrt(10^(db/10)) for unit-energy data.
  static PilotLayout from_ep_ei_db(const AfdmGrid& g, double ep_ei_db);
  /// Data occupy Q+1 .. N-Q.
  int data_begin() const { return guard_width + 1; }
  int data_count(const AfdmGrid& g) const { return g.n() - 2 * guard_width; }
};

/// Unit-energy QPSK symbols.
CVec random_qpsk(std::size_t count, std::uint64_t seed);

/// Pilot at x[0], zeros on 1..Q and N-Q+1..N-1, `data` on Q+1..N-Q.
/// Throws InvalidParameter on a guard that does not fit or a data length mismatch.
DaftFrame build_pilot_frame(const AfdmGrid& g, const PilotLayout& layout, std::span<const Complex> data);
DaftFrame build_pilot_frame(const AfdmGrid& g, const PilotLayout& layout, std::uint64_t data_seed);

struct Estimate {
  int l_hat = 0;
  int k_hat = 0;
  double kappa_hat = 0.0;
  double iota_hat = 0.0;
  double pspr = 0.0;
  int m_peak = 0;        ///< equivalent-delay index of the strongest pilot tap
  bool flagged = false;  ///< decode outside the valid range or search not converged

  double delay() const { return l_hat + iota_hat; }
  double doppler() const { return k_hat + kappa_hat; }
};

struct SearchConfig {
  int coarse_points = 64;
  double refine_tol = 1e-3;
  /// Accept iota = 0 when the gate leaves the table range by more than this (dB).
  /// Negative disables the near-integer path.
  double near_integer_margin_db = 3.0;

  void validate() const;
};

/// Pilot response on the equivalent-delay axis: z[p] = y[(-p) mod N].
Complex pilot_tap(const DaftFrame& y, int p);
/// Demodulated row holding equivalent delay p.
int row_of_tap(const AfdmGrid& g, int p);

/// Equivalent-delay observation region [-k_max, k_max + C l_max].
struct PilotRegion {
  int first = 0;
  int last = 0;
};
PilotRegion pilot_region(const AfdmGrid& g);

struct IntegerEstimate {
  int l_hat = 0;
  int k_hat = 0;
  int m_peak = 0;
  bool flagged = false;
};

/// Peak search over the pilot region and decode of m_peak = k + C l:
/// l = round(m_peak / C), k = signed residue. A residue beyond k_max flags the
/// result and l is clamped into [0, l_max].
IntegerEstimate integer_estimate(const DaftFrame& y, const AfdmGrid& g);

/// r[n] exp(i2pi kappa_comp n / N) on the N post-prefix samples.
TimeFrame compensate(const TimeFrame& r, double kappa_comp);

/// C-length window centred on m_peak: [m_peak - floor(C/2), m_peak + ceil(C/2) - 1].
struct PsprWindow {
  int first = 0;
  int last = 0;
};
PsprWindow pspr_window(const AfdmGrid& g, int m_peak);

/// |z[m_peak]|^2 / ((1/C) sum over the other window taps |z|^2). Returns
/// +infinity when the window outside the peak carries no energy.
double pspr(const DaftFrame& y_tilde, int m_peak, const AfdmGrid& g);

struct KappaEstimate {
  double kappa_hat = 0.0;
  double kappa_applied = 0.0;  ///< compensation used for y_tilde; kappa_hat is this mod 1
  int m_peak = 0;
  double pspr = 0.0;
  DaftFrame y_tilde;  ///< full demodulation of the frame compensated by kappa_hat
};

/// Coarse grid of cfg.coarse_points candidates on [0, 1) followed by a
/// golden-section refinement around the best one. Each candidate demodulates
/// only the rows the peak search and PSPR window need.
KappaEstimate estimate_kappa(const TimeFrame& r, const AfdmGrid& g, const SearchConfig& cfg = {});

/// PSPR for one compensation value, from the partial demodulation. Exposed for
/// tests and the search.
double pspr_at(const TimeFrame& r, const AfdmGrid& g, double kappa_comp, int* m_peak = nullptr);

struct IotaEstimate {
  double iota_hat = 0.0;
  int l_floor = 0;     ///< integer delay of the early tap
  double gate_db = 0.0;
};

/// Early-late gate on the compensated frame. The early tap is the floor-delay
/// tap: the peak itself or, when the tap C before it is stronger than the tap C
/// after it, that earlier tap. gate = 10 lg|z[E]| - 10 lg|z[E + C]| is inverted
/// through the table.
IotaEstimate estimate_iota(const DaftFrame& y_tilde, int l_hat, int k_hat, const AfdmGrid& g,
                           const ElgTable& table, const SearchConfig& cfg = {});

/// Doppler search, integer decode, then delay gate.
Estimate joint_estimate(const TimeFrame& r, const AfdmGrid& g, const ElgTable& table,
                        const SearchConfig& cfg = {});

}  // namespace afdm
