// SPDX-License-Identifier: Apache-2.0
#pragma once

// DAFT-domain effective channel of a single LOS path.
//
// The received chirp wraps in frequency C times per frame, so a fractional
// delay iota rotates each wrap segment q by exp(i2pi iota q). The exact column
// sum F(m, m') keeps that segment structure; envelope_magnitude() is the
// closed-form sinc-ratio times sinc-envelope approximation of |F|.

#include <span>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/grid.hpp"

namespace afdm {

/// Chirp segment boundaries of one transmit subcarrier m'.
///
/// bound(q) = floor(t_{m',q}) with t_{m',q} = (qN - m')/C for q = 1..C. A time
/// index x in [0, N) belongs to segment q when bound(q) < x <= bound(q+1);
/// segment 0 starts at x = 0 and segment C runs to the end of the frame.
class SegmentIndex {
 public:
  SegmentIndex(const AfdmGrid& g, int m_prime);

  int m_prime() const { return m_prime_; }
  int segments() const { return static_cast<int>(bounds_.size()); }
  /// n_{m',q} for q = 1..C.
  long bound(int q) const { return bounds_[static_cast<std::size_t>(q - 1)]; }
  /// Segment containing x, x in [0, N). Works for fractional x.
  int segment_of(double x) const;
  /// Number of integer sample indices in segment q.
  long size(int q) const;

 private:
  int n_;
  int m_prime_;
  std::vector<long> bounds_;
};

/// 1 when sample index n (0 <= n < N) lies in segment q of subcarrier m'.
int indicator(const AfdmGrid& g, int m_prime, int q, int n);

struct EnvelopeParams {
  int l = 0;
  double iota = 0.0;
  int k = 0;
  double kappa = 0.0;

  double delay() const { return l + iota; }
  double doppler() const { return k + kappa; }
  /// Equivalent delay (K + C L) mod N, in [0, N).
  double l_eq(const AfdmGrid& g) const;
};

EnvelopeParams envelope_params(const LosChannel& ch);

/// Exact spectrum-wrapping sum
///   F(m, m') = sum_n exp(i2pi (m' - m - l_eq) n / N) exp(i2pi iota q((n - L) mod N))
/// evaluated term by term.
Complex exact_f(const AfdmGrid& g, const EnvelopeParams& p, int m, int m_prime);

/// F(rows[i], m') for many rows at once (one DFT row dot product per row).
/// Agrees with exact_f entry by entry.
void exact_f_column(const AfdmGrid& g, const EnvelopeParams& p, int m_prime,
                    std::span<const int> rows, std::span<Complex> out);

/// H_eff[m, m'] = (h/N) exp(i2pi (c1 L^2 - c2 (m^2 - m'^2) - L m'/N)) F(m, m').
Complex h_eff_entry(const AfdmGrid& g, const LosChannel& ch, int m, int m_prime);

struct EnvelopeValue {
  double upsilon = 0.0;  ///< N |sinc(d) / sinc(d/C)|, d = m' - (m + K + C l)
  double theta = 0.0;    ///< |sinc((m' - (m + l_eq)) / C)|
  double value = 0.0;    ///< upsilon * theta
};

/// Closed-form envelope of |F(m, m')|. Index offsets are circular: both d and
/// m' - (m + l_eq) are taken modulo N into [-N/2, N/2). The removable
/// singularity of the sinc ratio at d = jC is replaced by its limit.
EnvelopeValue envelope_magnitude(const AfdmGrid& g, const EnvelopeParams& p, int m, int m_prime);

/// sinc(d) / sinc(d / C) with the limit taken where both vanish.
double sinc_ratio(double d, int segments);

/// Tabulated early-late gate curve A(iota) = 10 lg|early tap| - 10 lg|late tap|.
struct ElgTable {
  std::vector<double> iota;
  std::vector<double> gate;  ///< A(iota), strictly monotone

  double min_iota() const { return iota.front(); }
  double max_iota() const { return iota.back(); }
  bool decreasing() const { return gate.front() > gate.back(); }
  /// Largest and smallest tabulated gate values.
  double gate_hi() const { return decreasing() ? gate.front() : gate.back(); }
  double gate_lo() const { return decreasing() ? gate.back() : gate.front(); }
};

/// Evaluates the envelope at the floor-delay tap and the next integer-delay
/// tap (C rows further along the equivalent-delay axis) for iota on
/// [0.01, 0.99] in steps of 1e-3, with the Doppler taken as integer.
ElgTable elg_curve(const AfdmGrid& g);

/// Piecewise-linear inverse of the table. Gate values beyond the table clamp
/// to the iota endpoints.
double elg_invert(const ElgTable& table, double gate);

}  // namespace afdm
