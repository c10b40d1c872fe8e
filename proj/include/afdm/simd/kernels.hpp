// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner-loop arithmetic on interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2+FMA
// variant is compiled into a separate translation unit and selected at runtime
// when the CPU supports it. Setting AFDM_SIMD=scalar in the environment forces
// the reference kernels.

#include <cstddef>
#include <span>

#include "afdm/types.hpp"

namespace afdm::simd {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  const char* name;
  /// sum a[i] * b[i]
  Complex (*dot)(const Complex* a, const Complex* b, std::size_t n);
  /// sum a[i] * conj(b[i])
  Complex (*dotc)(const Complex* a, const Complex* b, std::size_t n);
  /// out[i] = a[i] * b[i]
  void (*mul)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  /// out[i] = a[i] * conj(b[i])
  void (*mulc)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  /// out[i] += g * x[i], g real
  void (*axpy_real)(double g, const Complex* x, Complex* out, std::size_t n);
  /// sum |a[i]|^2
  double (*norm2)(const Complex* a, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Table picked once per process: AVX2 when available unless AFDM_SIMD=scalar.
const KernelTable& active();

// Span conveniences over the active table. Lengths must match.
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
Complex dotc(std::span<const Complex> a, std::span<const Complex> b);
void mul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void mulc(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out);
void axpy_real(double g, std::span<const Complex> x, std::span<Complex> out);
double norm2(std::span<const Complex> a);

}  // namespace afdm::simd
