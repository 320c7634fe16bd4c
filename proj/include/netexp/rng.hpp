#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace netexp {

// One splitmix64 step; handy for deriving independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives a child seed from (base, salt). Distinct salts give streams that
// behave independently, so generators can split their randomness per feature,
// per run, per task without coordinating.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t s = base ^ ((salt + 1) * 0x9E3779B97F4A7C15ULL);
  splitmix64(s);
  return splitmix64(s);
}

// Seeded RNG with hand-rolled bounded/uniform draws. std::*_distribution is
// implementation-defined, so drawing through it would break bit-for-bit
// reproducibility across standard libraries; everything here is pinned to the
// mt19937_64 output stream only.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0, 1) with 53-bit resolution
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // (0, 1]
  double uniform_pos() { return 1.0 - uniform01(); }

  // uniform over [0, n); n must be positive
  std::size_t below(std::size_t n) {
    assert(n > 0);
    return static_cast<std::size_t>(engine_() % n);
  }

  // true with probability p; p=0 never fires, p=1 always does
  bool flip(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netexp
