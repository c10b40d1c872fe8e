// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "afdm/simd/kernels.hpp"

namespace afdm::simd::detail {

Complex dot_scalar(const Complex* a, const Complex* b, std::size_t n);
Complex dotc_scalar(const Complex* a, const Complex* b, std::size_t n);
void mul_scalar(const Complex* a, const Complex* b, Complex* out, std::size_t n);
void mulc_scalar(const Complex* a, const Complex* b, Complex* out, std::size_t n);
void axpy_real_scalar(double g, const Complex* x, Complex* out, std::size_t n);
double norm2_scalar(const Complex* a, std::size_t n);

#if defined(AFDM_HAVE_AVX2)
Complex dot_avx2(const Complex* a, const Complex* b, std::size_t n);
Complex dotc_avx2(const Complex* a, const Complex* b, std::size_t n);
void mul_avx2(const Complex* a, const Complex* b, Complex* out, std::size_t n);
void mulc_avx2(const Complex* a, const Complex* b, Complex* out, std::size_t n);
void axpy_real_avx2(double g, const Complex* x, Complex* out, std::size_t n);
double norm2_avx2(const Complex* a, std::size_t n);
#endif

}  // namespace afdm::simd::detail
