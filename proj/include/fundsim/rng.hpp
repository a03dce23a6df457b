#pragma once

#include <cmath>
#include <cstdint>

namespace fundsim {

/// Deterministic stream RNG. A SplitMix64 walk whose start state is derived by
/// mixing (master_seed, stream_id); distinct stream ids give independent
/// sequences, and the same pair replays bit-identically on any platform.
/// Distributions are implemented here by inversion so no standard-library
/// distribution variability leaks into results.
class Rng {
  public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id)
        : state_(mix(mix(master_seed) + stream_id)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix_out(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double normal() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    /// Pareto by inversion: xmin * (1-u)^(-1/alpha). alpha = +inf collapses to a
    /// point mass at xmin exactly (pow(x, -0.0) == 1), which the degenerate
    /// deterministic configurations rely on.
    double pareto(double alpha, double xmin) {
        double u = uniform01();
        return xmin * std::pow(1.0 - u, -1.0 / alpha);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        return mix_out(z);
    }
    static std::uint64_t mix_out(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Stream id for (trial, entity, channel) triples so paired experiments can
/// replay identical entity draws. Entities < 2^18, channels < 4.
constexpr std::uint64_t substream(std::uint64_t trial, std::uint64_t entity,
                                  std::uint64_t channel = 0) {
    return (trial << 20) | (entity << 2) | channel;
}

}  // namespace fundsim
