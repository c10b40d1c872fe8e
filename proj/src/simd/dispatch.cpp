// SPDX-License-Identifier: Apache-2.0
#include <cassert>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace afdm::simd {

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::Scalar,        "scalar",
                                 detail::dot_scalar,     detail::dotc_scalar,
                                 detail::mul_scalar,     detail::mulc_scalar,
                                 detail::axpy_real_scalar, detail::norm2_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(AFDM_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  static const KernelTable table{Backend::Avx2,        "avx2",
                                 detail::dot_avx2,     detail::dotc_avx2,
                                 detail::mul_avx2,     detail::mulc_avx2,
                                 detail::axpy_real_avx2, detail::norm2_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("AFDM_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

Complex dotc(std::span<const Complex> a, std::span<const Complex> b) {
  assert(a.size() == b.size());
  return active().dotc(a.data(), b.data(), a.size());
}

void mul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  active().mul(a.data(), b.data(), out.data(), a.size());
}

void mulc(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  assert(a.size() == b.size() && out.size() == a.size());
  active().mulc(a.data(), b.data(), out.data(), a.size());
}

void axpy_real(double g, std::span<const Complex> x, std::span<Complex> out) {
  assert(x.size() == out.size());
  active().axpy_real(g, x.data(), out.data(), x.size());
}

double norm2(std::span<const Complex> a) { return active().norm2(a.data(), a.size()); }

}  // namespace afdm::simd
