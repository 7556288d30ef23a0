#pragma once

#include <cstdint>

// Seedable, splittable random stream for the samplers and the spatial
// engine. xoshiro256++ (Blackman & Vigna 2019) with SplitMix64 state
// initialization; substreams are derived from (seed, stream id) so
// partitioned runs are reproducible independent of worker count.

namespace nnd {

inline constexpr const char* kRngAlgorithm = "xoshiro256++";

namespace detail {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

}  // namespace detail

class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    detail::SplitMix64 mix(seed);
    for (auto& word : state_) word = mix.next();
  }

  // Stream `stream` of the family identified by `seed`; distinct ids
  // give statistically independent generators.
  static Xoshiro256pp substream(std::uint64_t seed, std::uint64_t stream) {
    detail::SplitMix64 mix(seed);
    const std::uint64_t base = mix.next();
    return Xoshiro256pp(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw on the open interval (0, 1): a 53-bit mantissa with
  // zero remapped by resampling, so log/ pow(..., 1/m) transforms never
  // see an endpoint.
  double uniform_open() {
    for (;;) {
      const double u =
          static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u != 0.0) return u;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace nnd
