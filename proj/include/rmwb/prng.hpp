#pragma once

#include <cstdint>

namespace rmwb {

// xorshift64* with shifts 12/25/27 and the standard multiplier.  Seed 0 is
// remapped so the state never sticks at zero.  Every generated corpus in the
// project draws from this stream, so outputs are bit-identical across
// platforms and languages.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(uint64_t seed)
      : state_(seed == 0 ? 0x9E3779B97F4A7C15ULL : seed) {}

  uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Top bit of a fresh output; one output is consumed per bit.
  bool next_bit() { return (next() >> 63) != 0; }

  // Uniform-ish value in [0, m) by plain modulo.  Rejection-free on purpose:
  // reproducibility matters more than the (tiny) modulo bias here.
  uint64_t next_below(uint64_t m) { return next() % m; }

 private:
  uint64_t state_;
};

}  // namespace rmwb
