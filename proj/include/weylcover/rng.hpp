#pragma once

#include <array>
#include <cstdint>

namespace weylcover {

// Counter-based splittable stream (Philox 4x32-10). The word sequence is a
// pure function of (master_seed, stream_index, counter), so streams can be
// copied, replayed, and handed to parallel workers; distinct stream_index
// values give statistically independent sequences.
class RngStream {
public:
  RngStream() : RngStream(0, 0) {}
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  // 32-bit words consumed so far.
  std::uint64_t counter() const { return counter_; }

  // Derived stream with a distinct stream_index; same (parent, key) always
  // yields the same child.
  RngStream split(std::uint64_t key) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_unit();              // uniform on [0, 1), 53-bit
  double next_gaussian();          // standard normal (Box-Muller, cached pair)
  std::uint64_t next_below(std::uint64_t n);  // uniform on [0, n)

private:
  void refill();

  static constexpr std::size_t kBufBlocks = 8;

  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_index_ = 0;
  std::uint64_t counter_ = 0;        // words consumed
  std::uint64_t next_block_ = 0;     // next 128-bit block to generate
  std::array<std::uint32_t, 4 * kBufBlocks> buf_{};
  std::size_t pos_ = 4 * kBufBlocks;  // exhausted
  bool have_gauss_ = false;
  double cached_gauss_ = 0.0;
};

// SplitMix64 finalizer; used for deriving substream indices.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace weylcover
