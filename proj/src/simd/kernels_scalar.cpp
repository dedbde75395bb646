#include <vector>

#include "weylcover/simd_kernels.hpp"

namespace weylcover::simd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

void philox4x32_burst_scalar(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                             std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                             std::uint32_t* out) {
  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint64_t n = block_start + i;
    std::uint32_t v0 = static_cast<std::uint32_t>(n);
    std::uint32_t v1 = static_cast<std::uint32_t>(n >> 32);
    std::uint32_t v2 = c2;
    std::uint32_t v3 = c3;
    std::uint32_t key0 = k0;
    std::uint32_t key1 = k1;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mul_hi_lo(kPhiloxM0, v0, hi0, lo0);
      mul_hi_lo(kPhiloxM1, v2, hi1, lo1);
      std::uint32_t n0 = hi1 ^ v1 ^ key0;
      std::uint32_t n1 = lo1;
      std::uint32_t n2 = hi0 ^ v3 ^ key1;
      std::uint32_t n3 = lo0;
      v0 = n0;
      v1 = n1;
      v2 = n2;
      v3 = n3;
      key0 += kPhiloxW0;
      key1 += kPhiloxW1;
    }
    out[4 * i + 0] = v0;
    out[4 * i + 1] = v1;
    out[4 * i + 2] = v2;
    out[4 * i + 3] = v3;
  }
}

double pairwise_sum_scalar(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> buf(x, x + n);
  std::size_t m = n;
  while (m > 1) {
    std::size_t half = m / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
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
