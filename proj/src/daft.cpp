// SPDX-License-Identifier: Apache-2.0
#include "afdm/daft.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "afdm/simd/kernels.hpp"

namespace afdm {
namespace {

void require_length(std::size_t got, int n, const char* what) {
  if (got != static_cast<std::size_t>(n)) {
    throw FrameError(std::string(what) + ": expected " + std::to_string(n) + " samples, got " +
                     std::to_string(got));
  }
}

}  // namespace

TimeFrame daft_modulate(const DaftFrame& x, const AfdmGrid& g) {
  const int n = g.n();
  require_length(x.symbols.size(), n, "daft_modulate");
  const DaftTables& t = g.tables();

  CVec weighted(n);
  simd::mul(x.symbols, t.index_chirp, weighted);

  CVec scratch(t.dft.empty() ? n : 0);
  TimeFrame s;
  s.samples.resize(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    // F is symmetric, so row k also serves as column k; conj gives exp(+i2pi km/N).
    const Complex acc = simd::dotc(weighted, t.dft_row(k, scratch));
    s.samples[k] = scale * t.time_chirp[k] * acc;
  }
  return s;
}

void daft_demodulate_rows(std::span<const Complex> r, const AfdmGrid& g, std::span<const int> rows,
                          std::span<Complex> out) {
  const int n = g.n();
  require_length(r.size(), n, "daft_demodulate_rows");
  if (out.size() != rows.size()) throw FrameError("daft_demodulate_rows: output size mismatch");
  const DaftTables& t = g.tables();

  CVec dechirped(n);
  simd::mulc(r, t.time_chirp, dechirped);

  CVec scratch(t.dft.empty() ? n : 0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int m = static_cast<int>(wrap_index(rows[i], n));
    const Complex acc = simd::dot(dechirped, t.dft_row(m, scratch));
    out[i] = scale * std::conj(t.index_chirp[m]) * acc;
  }
}

DaftFrame daft_demodulate(const TimeFrame& r, const AfdmGrid& g) {
  if (r.cpp_len != 0) throw FrameError("daft_demodulate: strip the CPP first");
  std::vector<int> rows(g.n());
  for (int m = 0; m < g.n(); ++m) rows[m] = m;
  DaftFrame y;
  y.symbols.resize(g.n());
  daft_demodulate_rows(r.samples, g, rows, y.symbols);
  return y;
}

Complex cpp_rotation(const AfdmGrid& g, long n) {
  // c1 (N^2 + 2Nn) = C (N + 2n) / 2 cycles: an integer or a half-integer.
  const std::int64_t twice_cycles = static_cast<std::int64_t>(g.segments()) * (g.n() + 2 * n);
  return wrap_index(twice_cycles, 2) == 0 ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
}

TimeFrame append_cpp(const TimeFrame& s, const AfdmGrid& g) {
  if (s.cpp_len != 0) throw FrameError("append_cpp: frame already carries a prefix");
  const int n = g.n();
  require_length(s.samples.size(), n, "append_cpp");
  const int ncp = g.n_cp();
  if (ncp > n) throw InvalidParameter("append_cpp: n_cp exceeds N");

  TimeFrame out;
  out.cpp_len = ncp;
  out.samples.resize(static_cast<std::size_t>(n + ncp));
  for (int i = -ncp; i < 0; ++i) out.samples[i + ncp] = s.samples[n + i] * cpp_rotation(g, i);
  std::copy(s.samples.begin(), s.samples.end(), out.samples.begin() + ncp);
  return out;
}

TimeFrame strip_cpp(const TimeFrame& s) {
  TimeFrame out;
  out.samples.assign(s.samples.begin() + s.cpp_len, s.samples.end());
  return out;
}

}  // namespace afdm
