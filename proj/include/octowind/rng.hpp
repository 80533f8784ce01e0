#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace octowind {

/// SplitMix64 finaliser; also used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed of the independent stream for path `index` under `master_seed`.
/// Pure function of its arguments, so results never depend on scheduling.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0x6f63746f77696e64ULL) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

/// Engine plus a cached standard-normal sampler.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    Xoshiro256pp& engine() noexcept { return engine_; }

private:
    Xoshiro256pp engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace octowind
