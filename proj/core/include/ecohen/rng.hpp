#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ecohen {

// Counter-based deterministic RNG (SplitMix64 stream). The i-th output is a
// pure function of (key, i), so sequences are reproducible regardless of
// thread scheduling, and independent sub-streams are derived by hashing a
// stream label into the key. Not cryptographic.
//
// std::shuffle / std::uniform_int_distribution are deliberately avoided:
// their outputs are implementation-defined, and every sampled artifact here
// must be bit-identical across toolchains and thread counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9E3779B97F4A7C15ull)) {}

    // Independent stream addressed by a label; derive(a) and derive(b) are
    // decorrelated for a != b.
    Rng derive(std::uint64_t label) const {
        return Rng(mix(state_ ^ mix(label + 0xD1B54A32D192ED03ull)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), unbiased via rejection. bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Fisher–Yates.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[next_below(i)]);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace ecohen
