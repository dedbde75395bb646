#include "weylcover/rng.hpp"

#include <cmath>

#include "weylcover/simd_kernels.hpp"

namespace weylcover {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {}

RngStream RngStream::split(std::uint64_t key) const {
  return RngStream(master_seed_, splitmix64(stream_index_ ^ splitmix64(key ^ 0xA5A5A5A55A5A5A5Aull)));
}

void RngStream::refill() {
  simd::philox4x32_burst(static_cast<std::uint32_t>(master_seed_),
                         static_cast<std::uint32_t>(master_seed_ >> 32), next_block_,
                         static_cast<std::uint32_t>(stream_index_),
                         static_cast<std::uint32_t>(stream_index_ >> 32), kBufBlocks,
                         buf_.data());
  next_block_ += kBufBlocks;
  pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (pos_ >= buf_.size()) refill();
  ++counter_;
  return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t lo = next_u32();
  std::uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  if (have_gauss_) {
    have_gauss_ = false;
    return cached_gauss_;
  }
  double u1 = 1.0 - next_unit();  // (0, 1]: keeps the log finite
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * 3.14159265358979323846 * u2;
  cached_gauss_ = r * std::sin(a);
  have_gauss_ = true;
  return r * std::cos(a);
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  // modulo bias ~ n / 2^64, far below any statistical tolerance used here
  return n == 0 ? 0 : next_u64() % n;
}

}  // namespace weylcover
