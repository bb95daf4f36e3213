#ifndef NOMA_RNG_HPP
#define NOMA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace noma {

/// Independent, index-addressable random stream: xoshiro256++ seeded through
/// SplitMix64 from a (seed, stream) pair. Stream i of a run can be recreated
/// in isolation, which keeps parallel Monte Carlo independent of the worker
/// count. Value type, cheap to construct per trial.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull));
        for (auto& word : state_) word = split_mix(x);
        // xoshiro must not start from the all-zero state
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
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

    /// Uniform double in [0, 1).
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unit-mean exponential variate, -ln(1 - U).
    double next_unit_exponential() {
        return -std::log1p(-next_uniform());
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    static std::uint64_t split_mix(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace noma

#endif  // NOMA_RNG_HPP
