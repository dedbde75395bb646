#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>
#include <vector>

#include "weylcover/simd_kernels.hpp"

namespace weylcover::simd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// hi/lo 32-bit halves of the lane-wise u32 product, 8 lanes at a time
inline void mul_hi_lo_u32(__m256i a, __m256i b, __m256i& hi, __m256i& lo) {
  __m256i prod_even = _mm256_mul_epu32(a, b);
  __m256i prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
  hi = _mm256_blend_epi32(_mm256_srli_epi64(prod_even, 32), prod_odd, 0xAA);
  lo = _mm256_blend_epi32(prod_even, _mm256_slli_epi64(prod_odd, 32), 0xAA);
}

}  // namespace

void philox4x32_burst_avx2(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                           std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                           std::uint32_t* out) {
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kPhiloxW1));

  std::size_t i = 0;
  alignas(32) std::uint32_t lane0[8], lane1[8], lane2[8], lane3[8];
  for (; i + 8 <= nblocks; i += 8) {
    for (int l = 0; l < 8; ++l) {
      std::uint64_t n = block_start + i + l;
      lane0[l] = static_cast<std::uint32_t>(n);
      lane1[l] = static_cast<std::uint32_t>(n >> 32);
    }
    __m256i v0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lane0));
    __m256i v1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lane1));
    __m256i v2 = _mm256_set1_epi32(static_cast<int>(c2));
    __m256i v3 = _mm256_set1_epi32(static_cast<int>(c3));
    __m256i key0 = _mm256_set1_epi32(static_cast<int>(k0));
    __m256i key1 = _mm256_set1_epi32(static_cast<int>(k1));
    for (int round = 0; round < 10; ++round) {
      __m256i hi0, lo0, hi1, lo1;
      mul_hi_lo_u32(m0, v0, hi0, lo0);
      mul_hi_lo_u32(m1, v2, hi1, lo1);
      __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, v1), key0);
      __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, v3), key1);
      v0 = n0;
      v1 = lo1;
      v2 = n2;
      v3 = lo0;
      key0 = _mm256_add_epi32(key0, w0);
      key1 = _mm256_add_epi32(key1, w1);
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane0), v0);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane1), v1);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane2), v2);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane3), v3);
    for (int l = 0; l < 8; ++l) {
      out[4 * (i + l) + 0] = lane0[l];
      out[4 * (i + l) + 1] = lane1[l];
      out[4 * (i + l) + 2] = lane2[l];
      out[4 * (i + l) + 3] = lane3[l];
    }
  }
  if (i < nblocks)
    philox4x32_burst_scalar(k0, k1, block_start + i, c2, c3, nblocks - i, out + 4 * i);
}

double pairwise_sum_avx2(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> buf(x, x + n);
  std::size_t m = n;
  while (m > 1) {
    std::size_t half = m / 2;
    std::size_t i = 0;
    // [a b c d | e f g h] -> [a+b c+d e+f g+h]; same operand pairs as scalar
    for (; i + 4 <= half; i += 4) {
      __m256d lo = _mm256_loadu_pd(buf.data() + 2 * i);
      __m256d hi = _mm256_loadu_pd(buf.data() + 2 * i + 4);
      __m256d s = _mm256_hadd_pd(lo, hi);                       // [a+b e+f c+d g+h]
      s = _mm256_permute4x64_pd(s, _MM_SHUFFLE(3, 1, 2, 0));    // [a+b c+d e+f g+h]
      _mm256_storeu_pd(buf.data() + i, s);
    }
    for (; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (m & 1) {
      buf[half] = buf[m - 1];
      m = half + 1;
    } else {
      m = half;
    }
  }
  return buf[0];
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace weylcover::simd

#endif  // x86-64
