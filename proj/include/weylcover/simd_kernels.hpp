#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner-loop kernels: Philox 4x32-10 block generation and the
// fixed-tree pairwise sum used for Monte Carlo reductions. Each kernel has a
// scalar reference implementation and SIMD variants (AVX2, NEON) selected at
// runtime; every variant is bit-identical to the reference by construction,
// and the equivalence suite asserts it.

namespace weylcover::simd {

enum class Variant { scalar, avx2, neon };

const char* variant_name(Variant v);

// Variant picked for this process (CPU detection, cached).
Variant active_variant();

// Philox 4x32-10 keyed by (k0, k1). Block i of the burst encrypts the
// counter (c2, c3 fixed stream words; 64-bit block index block_start + i
// split into the low words). Writes 4 words per block to out.
void philox4x32_burst(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                      std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                      std::uint32_t* out);

// Fixed-tree pairwise sum: each level adds adjacent pairs, an odd tail
// element is carried to the next level unchanged. The tree (and hence the
// floating-point result) is identical across variants.
double pairwise_sum(const double* x, std::size_t n);

// Per-variant entry points, exposed for the equivalence tests.
void philox4x32_burst_scalar(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                             std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                             std::uint32_t* out);
double pairwise_sum_scalar(const double* x, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
void philox4x32_burst_avx2(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                           std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                           std::uint32_t* out);
double pairwise_sum_avx2(const double* x, std::size_t n);
#endif

#if defined(__ARM_NEON) || defined(__aarch64__)
void philox4x32_burst_neon(std::uint32_t k0, std::uint32_t k1, std::uint64_t block_start,
                           std::uint32_t c2, std::uint32_t c3, std::size_t nblocks,
                           std::uint32_t* out);
double pairwise_sum_neon(const double* x, std::size_t n);
#endif

}  // namespace weylcover::simd
