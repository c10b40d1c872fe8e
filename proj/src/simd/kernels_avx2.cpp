// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernels. This file is compiled with -mavx2 -mfma and must only be
// entered after a runtime CPU check (see dispatch.cpp).

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace afdm::simd::detail {
namespace {

// One __m256d holds two complex values: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline double hsum_even(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[0] + t[2];
}
inline double hsum_odd(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return t[1] + t[3];
}

inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

const __m256d kConjMask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);

}  // namespace

Complex dot_avx2(const Complex* a, const Complex* b, std::size_t n) {
  __m256d direct = _mm256_setzero_pd();   // [ar*br, ai*bi]
  __m256d crossed = _mm256_setzero_pd();  // [ar*bi, ai*br]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    direct = _mm256_fmadd_pd(va, vb, direct);
    crossed = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), crossed);
  }
  Complex acc{hsum_even(direct) - hsum_odd(direct), hsum_even(crossed) + hsum_odd(crossed)};
  if (i < n) acc += dot_scalar(a + i, b + i, n - i);
  return acc;
}

Complex dotc_avx2(const Complex* a, const Complex* b, std::size_t n) {
  __m256d direct = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(a + i);
    const __m256d vb = load2(b + i);
    direct = _mm256_fmadd_pd(va, vb, direct);
    crossed = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), crossed);
  }
  Complex acc{hsum_even(direct) + hsum_odd(direct), hsum_odd(crossed) - hsum_even(crossed)};
  if (i < n) acc += dotc_scalar(a + i, b + i, n - i);
  return acc;
}

void mul_avx2(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul2(load2(a + i), load2(b + i)));
  if (i < n) mul_scalar(a + i, b + i, out + i, n - i);
}

void mulc_avx2(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    store2(out + i, cmul2(load2(a + i), _mm256_xor_pd(load2(b + i), kConjMask)));
  }
  if (i < n) mulc_scalar(a + i, b + i, out + i, n - i);
}

void axpy_real_avx2(double g, const Complex* x, Complex* out, std::size_t n) {
  const __m256d vg = _mm256_set1_pd(g);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, _mm256_fmadd_pd(vg, load2(x + i), load2(out + i)));
  if (i < n) axpy_real_scalar(g, x + i, out + i, n - i);
}

double norm2_avx2(const Complex* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum_even(acc) + hsum_odd(acc);
  if (i < n) total += norm2_scalar(a + i, n - i);
  return total;
}

}  // namespace afdm::simd::detail
