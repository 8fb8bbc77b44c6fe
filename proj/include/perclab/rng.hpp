#pragma once

#include <cmath>
#include <cstdint>

namespace perclab {

/// Repo-wide RNG contract. Every random choice in the library flows through
/// these two primitives so that seeded runs are bit-identical across
/// platforms (and reproducible in other languages):
///   - seed expansion: splitmix64
///   - stream generation: xoshiro256++
/// Both are the canonical Blackman/Vigna algorithms.

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One-shot mix: the first splitmix64 output when starting from `x`.
inline uint64_t splitmix64(uint64_t x) { return splitmix64_next(x); }

class Xoshiro256pp {
 public:
  /// Seeds the four state words with consecutive splitmix64 outputs,
  /// the initialization recommended by the algorithm's authors.
  explicit Xoshiro256pp(uint64_t seed) {
    for (auto& word : state_) word = splitmix64_next(seed);
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be nonzero.
  /// Plain modulo on purpose: the tiny bias is irrelevant here and the
  /// reduction is trivial to mirror in another language.
  uint64_t next_below(uint64_t bound) { return next() % bound; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

/// Seed material for the k-th logical substream of `seed`
/// (stream 0 is `seed` itself).
inline uint64_t stream_seed(uint64_t seed, uint64_t stream) {
  return seed ^ (stream * 0x9e3779b97f4a7c15ULL);
}

/// Per-sample seed for order-insensitive parallel sampling.
inline uint64_t sample_seed(uint64_t seed, uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

/// Size in [1, cap] with log-uniform mass, the sampler used for random
/// set sizes. cap >= 1.
inline uint64_t log_uniform_size(Xoshiro256pp& rng, uint64_t cap) {
  if (cap <= 1) return 1;
  const double u = rng.next_unit();
  const auto s = static_cast<uint64_t>(
      std::floor(std::exp(u * std::log(static_cast<double>(cap) + 1.0))));
  return s < 1 ? 1 : (s > cap ? cap : s);
}

}  // namespace perclab
