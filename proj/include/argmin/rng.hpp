#pragma once

#include <array>
#include <cstdint>

namespace argmin {

// Identifies one reproducible random stream. Streams with distinct
// stream_index are independent; equal (master_seed, stream_index) replay
// bit-identically regardless of thread count or call order across streams.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

// Counter-based generator (Philox4x32-10). The key is the master seed, the
// stream index sits in the upper counter words, and draws advance the lower
// 64-bit counter, so every stream is a disjoint slice of one keyed family.
class Rng {
 public:
  explicit Rng(SeedSpec seed);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  double uniform();      // open (0,1), 53-bit mantissa
  double normal();       // standard normal, Box-Muller pair cached
  double exponential();  // mean 1
  double cauchy();       // standard Cauchy
  int sign();            // +1 or -1, consumes one 32-bit word

  // Standardized stable draw by the Chambers-Mallows-Stuck transformation.
  // Consumes exactly two uniforms for every (alpha, beta), including the
  // alpha=1 branch, so draw counts stay parameter-independent.
  double stable(double alpha, double beta);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t draw_counter_ = 0;
  std::uint64_t stream_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int block_pos_ = 4;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace argmin
