// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace satgw::rng {

/// splitmix64 step (Steele, Lea, Flood 2014). Used to expand user seeds
/// into generator state and to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-stream seed for (base seed, stream index).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base ^ (0xA0761D6478BD642FULL * (stream + 1));
    return splitmix64(s);
}

/// xoshiro256** 1.0 (Blackman, Vigna 2018). Fixed, portable bit stream:
/// identical output for identical seeds on every platform.
class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        // Recommended init: fill state via splitmix64.
        for (auto& w : state_) w = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace satgw::rng
