// SPDX-License-Identifier: Apache-2.0
#include "afdm/effective_channel.hpp"

#include <algorithm>
#include <cmath>

#include "afdm/simd/kernels.hpp"

namespace afdm {
namespace {

// Offset reduced modulo N into [-N/2, N/2).
double circular(double d, int n) {
  const double half = 0.5 * n;
  double r = std::fmod(d + half, static_cast<double>(n));
  if (r < 0) r += n;
  return r - half;
}

// exp(i2pi a n / N) with the product reduced modulo N first.
Complex bin_phasor(double a, long n, int size) {
  return phasor(std::fmod(a * static_cast<double>(n), static_cast<double>(size)) / size);
}

}  // namespace

SegmentIndex::SegmentIndex(const AfdmGrid& g, int m_prime) : n_(g.n()), m_prime_(m_prime) {
  const long c = g.segments();
  bounds_.resize(static_cast<std::size_t>(c));
  for (long q = 1; q <= c; ++q) {
    // floor((qN - m') / C); the numerator is non-negative for 0 <= m' < N.
    bounds_[q - 1] = (q * n_ - m_prime) / c;
  }
}

int SegmentIndex::segment_of(double x) const {
  // Count of boundaries strictly below x.
  return static_cast<int>(std::lower_bound(bounds_.begin(), bounds_.end(), x,
                                           [](long b, double v) { return static_cast<double>(b) < v; }) -
                          bounds_.begin());
}

long SegmentIndex::size(int q) const {
  const int c = segments();
  const long lo = q == 0 ? -1 : bound(q);
  const long hi = q == c ? n_ - 1 : bound(q + 1);
  return std::max(0L, std::min(hi, static_cast<long>(n_) - 1) - std::min(lo, static_cast<long>(n_) - 1));
}

int indicator(const AfdmGrid& g, int m_prime, int q, int n) {
  return SegmentIndex(g, m_prime).segment_of(n) == q ? 1 : 0;
}

double EnvelopeParams::l_eq(const AfdmGrid& g) const {
  double v = std::fmod(doppler() + g.segments() * delay(), static_cast<double>(g.n()));
  if (v < 0) v += g.n();
  return v;
}

EnvelopeParams envelope_params(const LosChannel& ch) {
  return {ch.int_delay(), ch.frac_delay(), ch.int_doppler(), ch.frac_doppler()};
}

Complex exact_f(const AfdmGrid& g, const EnvelopeParams& p, int m, int m_prime) {
  const int n = g.n();
  const SegmentIndex seg(g, m_prime);
  const double shift = m_prime - m - p.l_eq(g);
  const double delay = p.delay();
  Complex acc{};
  for (long i = 0; i < n; ++i) {
    double x = std::fmod(i - delay, static_cast<double>(n));
    if (x < 0) x += n;
    const int q = seg.segment_of(x);
    acc += bin_phasor(shift, i, n) * phasor(p.iota * q);
  }
  return acc;
}

void exact_f_column(const AfdmGrid& g, const EnvelopeParams& p, int m_prime,
                    std::span<const int> rows, std::span<Complex> out) {
  const int n = g.n();
  const SegmentIndex seg(g, m_prime);
  const double shift = m_prime - p.l_eq(g);
  const double delay = p.delay();
  CVec v(n);
  for (long i = 0; i < n; ++i) {
    double x = std::fmod(i - delay, static_cast<double>(n));
    if (x < 0) x += n;
    v[i] = bin_phasor(shift, i, n) * phasor(p.iota * seg.segment_of(x));
  }
  const DaftTables& t = g.tables();
  CVec scratch(t.dft.empty() ? n : 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out[r] = simd::dot(v, t.dft_row(static_cast<int>(wrap_index(rows[r], n)), scratch));
  }
}

Complex h_eff_entry(const AfdmGrid& g, const LosChannel& ch, int m, int m_prime) {
  const EnvelopeParams p = envelope_params(ch);
  const double big_l = p.delay();
  const DaftTables& t = g.tables();
  const double cycles = g.c1() * big_l * big_l - big_l * m_prime / g.n();
  const Complex lead = phasor(cycles) * std::conj(t.index_chirp[m]) * t.index_chirp[m_prime];
  return ch.gain * lead * exact_f(g, p, m, m_prime) / static_cast<double>(g.n());
}

double sinc_ratio(double d, int segments) {
  const double c = segments;
  const double den = std::sin(std::numbers::pi * d / c);
  if (std::abs(den) < 1e-9) {
    return std::cos(std::numbers::pi * d) / std::cos(std::numbers::pi * d / c);
  }
  return std::sin(std::numbers::pi * d) / (c * den);
}

EnvelopeValue envelope_magnitude(const AfdmGrid& g, const EnvelopeParams& p, int m, int m_prime) {
  const int n = g.n();
  const int c = g.segments();
  const double d = circular(m_prime - (m + p.doppler() + static_cast<double>(c) * p.l), n);
  const double d_eq = circular(m_prime - (m + p.l_eq(g)), n);
  EnvelopeValue e;
  e.upsilon = n * std::abs(sinc_ratio(d, c));
  e.theta = std::abs(sinc(d_eq / c));
  e.value = e.upsilon * e.theta;
  return e;
}

ElgTable elg_curve(const AfdmGrid& g) {
  const int n = g.n();
  const int c = g.segments();
  ElgTable table;
  constexpr int kPoints = 981;  // 0.01 .. 0.99 step 1e-3
  table.iota.reserve(kPoints);
  table.gate.reserve(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    const double iota = (10 + i) * 1e-3;
    const EnvelopeParams p{0, iota, 0, 0.0};
    // Pilot column m' = 0; the floor-delay tap sits at row 0 and the next
    // integer delay one comb period (C) further along the equivalent-delay axis.
    const double early = envelope_magnitude(g, p, 0, 0).value;
    const double late = envelope_magnitude(g, p, static_cast<int>(wrap_index(-c, n)), 0).value;
    table.iota.push_back(iota);
    table.gate.push_back(10.0 * std::log10(early) - 10.0 * std::log10(late));
  }
  return table;
}

double elg_invert(const ElgTable& table, double gate) {
  const auto& a = table.gate;
  const auto& x = table.iota;
  if (table.decreasing()) {
    if (gate >= a.front()) return x.front();
    if (gate <= a.back()) return x.back();
    // First entry with a[i] < gate.
    const auto it = std::lower_bound(a.begin(), a.end(), gate, [](double v, double g) { return v >= g; });
    const std::size_t hi = static_cast<std::size_t>(it - a.begin());
    const std::size_t lo = hi - 1;
    const double t = (a[lo] - gate) / (a[lo] - a[hi]);
    return x[lo] + t * (x[hi] - x[lo]);
  }
  if (gate <= a.front()) return x.front();
  if (gate >= a.back()) return x.back();
  const auto it = std::upper_bound(a.begin(), a.end(), gate);
  const std::size_t hi = static_cast<std::size_t>(it - a.begin());
  const std::size_t lo = hi - 1;
  const double t = (gate - a[lo]) / (a[hi] - a[lo]);
  return x[lo] + t * (x[hi] - x[lo]);
}

}  // namespace afdm
