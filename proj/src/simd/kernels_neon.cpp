#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

#include <vector>

#include "weylcover/simd_kernels.hpp"

namespace weylcover::simd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo_u32(uint32x4_t a, uint32x4_t b, uint32x4_t& hi, uint32x4_t& lo) {
  uint64x2_t p_lo = vmull_u32(vget_low_u32(a), vget_low_u32(b));
  uint64x2_t p_hi = vmull_u32(vget_high_u32(a), vget_high_u32(b));
  hi = vcombine_u32(vshrn_n_u64(p_lo, 32), vshrn_n_u64(p_hi, 32));
  lo = vmulq_u32(a, b);
}

}  // namespace

void philox4x32_burst_neon(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                           std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                           std::uint32_t* out) {
  const uint32x4_t m0 = vdupq_n_u32(kPhiloxM0);
  const uint32x4_t m1 = vdupq_n_u32(kPhiloxM1);
  const uint32x4_t w0 = vdupq_n_u32(kPhiloxW0);
  const uint32x4_t w1 = vdupq_n_u32(kPhiloxW1);

  std::size_t i = 0;
  std::uint32_t lane0[4], lane1[4], lane2[4], lane3[4];
  for (; i + 4 <= nblocks; i += 4) {
    for (int l = 0; l < 4; ++l) {
      std::uint64_t n = block_start + i + l;
      lane0[l] = static_cast<std::uint32_t>(n);
      lane1[l] = static_cast<std::uint32_t>(n >> 32);
    }
    uint32x4_t v0 = vld1q_u32(lane0);
    uint32x4_t v1 = vld1q_u32(lane1);
    uint32x4_t v2 = vdupq_n_u32(c2);
    uint32x4_t v3 = vdupq_n_u32(c3);
    uint32x4_t key0 = vdupq_n_u32(k0);
    uint32x4_t key1 = vdupq_n_u32(k1);
    for (int round = 0; round < 10; ++round) {
      uint32x4_t hi0, lo0, hi1, lo1;
      mul_hi_lo_u32(m0, v0, hi0, lo0);
      mul_hi_lo_u32(m1, v2, hi1, lo1);
      uint32x4_t n0 = veorq_u32(veorq_u32(hi1, v1), key0);
      uint32x4_t n2 = veorq_u32(veorq_u32(hi0, v3), key1);
      v0 = n0;
      v1 = lo1;
      v2 = n2;
      v3 = lo0;
      key0 = vaddq_u32(key0, w0);
      key1 = vaddq_u32(key1, w1);
    }
    vst1q_u32(lane0, v0);
    vst1q_u32(lane1, v1);
    vst1q_u32(lane2, v2);
    vst1q_u32(lane3, v3);
    for (int l = 0; l < 4; ++l) {
      out[4 * (i + l) + 0] = lane0[l];
      out[4 * (i + l) + 1] = lane1[l];
      out[4 * (i + l) + 2] = lane2[l];
      out[4 * (i + l) + 3] = lane3[l];
    }
  }
  if (i < nblocks)
    philox4x32_burst_scalar(k0, k1, block_start + i, c2, c3, nblocks - i, out + 4 * i);
}

double pairwise_sum_neon(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> buf(x, x + n);
  std::size_t m = n;
  while (m > 1) {
    std::size_t half = m / 2;
    std::size_t i = 0;
    for (; i + 2 <= half; i += 2) {
      float64x2_t lo = vld1q_f64(buf.data() + 2 * i);
      float64x2_t hi = vld1q_f64(buf.data() + 2 * i + 2);
      vst1q_f64(buf.data() + i, vpaddq_f64(lo, hi));  // adjacent-pair adds
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

}  // namespace weylcover::simd

#endif  // NEON
