#ifndef TAILCHAIN_RNG_HPP
#define TAILCHAIN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace tailchain {

/// Stateless seed mixer (splitmix64 finalizer). Replication r of a run with
/// master seed s uses derive_seed(s, r); the mapping is part of the output
/// contract so that parallel and split runs reproduce each other exactly.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// mt19937_64 wrapper with portable double mappings. The standard
/// distributions are implementation-defined, so the mappings are spelled out
/// here to keep output byte-stable across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on the open interval (0, 1); safe to pass to quantile functions.
    double uniform_open() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (no cached spare, fully deterministic).
    double normal() {
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Pareto on [1, inf): P(Z > z) = z^{-alpha}.
    double pareto(double alpha) {
        return std::pow(uniform_open(), -1.0 / alpha);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace tailchain

#endif
