#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace parfit {

using Seed = std::uint64_t;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives an independent stream seed from a master seed and a path of
/// indices, e.g. derive_seed(master, {config, side, replicate}).
constexpr Seed derive_seed(Seed master, std::initializer_list<std::uint64_t> path) {
    Seed s = splitmix64(master);
    for (auto i : path) s = splitmix64(s ^ splitmix64(i + 0x632be59bd9b4e019ULL));
    return s;
}

/// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator,
/// but the samplers only use the explicit helpers below so that streams are
/// identical across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(Seed seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) {
            w = splitmix64(x);
            x += 0x9e3779b97f4a7c15ULL;
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
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

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform(); }

    /// Number of failures before the first success of Bernoulli(p) trials,
    /// p in (0, 1]. Saturates at `cap`.
    std::uint64_t geometric_skip(double p, std::uint64_t cap) {
        if (p >= 1.0) return 0;
        const double skip = std::floor(std::log(uniform_open_closed()) / std::log1p(-p));
        if (!(skip < static_cast<double>(cap))) return cap;
        return static_cast<std::uint64_t>(skip);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace parfit
