#include <cstdlib>
#include <cstring>

#include "weylcover/simd_kernels.hpp"

namespace weylcover::simd {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::scalar: return "scalar";
    case Variant::avx2: return "avx2";
    case Variant::neon: return "neon";
  }
  return "unknown";
}

namespace {

Variant detect() {
  // WEYLCOVER_SIMD=scalar forces the reference kernels.
  if (const char* env = std::getenv("WEYLCOVER_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Variant::scalar;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return Variant::avx2;
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
  return Variant::neon;
#endif
  return Variant::scalar;
}

}  // namespace

Variant active_variant() {
  static const Variant v = detect();
  return v;
}

void philox4x32_burst(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                      std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                      std::uint32_t* out) {
  switch (active_variant()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Variant::avx2:
      philox4x32_burst_avx2(k0, k1, block_start, c2, c3, nblocks, out);
      return;
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    case Variant::neon:
      philox4x32_burst_neon(k0, k1, block_start, c2, c3, nblocks, out);
      return;
#endif
    default:
      philox4x32_burst_scalar(k0, k1, block_start, c2, c3, nblocks, out);
      return;
  }
}

double pairwise_sum(const double* x, std::size_t n) {
  switch (active_variant()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Variant::avx2:
      return pairwise_sum_avx2(x, n);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
    case Variant::neon:
      return pairwise_sum_neon(x, n);
#endif
    default:
      return pairwise_sum_scalar(x, n);
  }
}

}  // namespace weylcover::simd
