#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "kc/vec.hpp"

namespace kc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG with explicit distribution implementations.
/// std:: distributions are implementation-defined, so every sampler lives here;
/// replica streams are counter-derived from (seed, stream) so results do not
/// depend on worker count or scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
        std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s)),
                          static_cast<std::uint32_t>(splitmix64(s))};
        gen_.seed(seq);
    }

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::uint64_t integer(std::uint64_t n) {  // uniform in [0, n)
        // modulo rejection to avoid bias
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do { x = gen_(); } while (x >= lim);
        return x % n;
    }

    /// Standard normal via Marsaglia polar method (cached spare).
    double normal() {
        if (has_spare_) { has_spare_ = false; return spare_; }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double normal(double mean, double sdev) { return mean + sdev * normal(); }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    /// Poisson: inversion for small mean, PTRD-style normal-refined rejection is
    /// unnecessary at desk scale; Knuth product for mean <= 30, else split.
    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 30.0) {
            // thin a chunk: Poisson(m) = Poisson(m/2) + Poisson(m/2)
            double half = mean / 2.0;
            total += poisson_knuth(half);
            mean -= half;
        }
        return total + poisson_knuth(mean);
    }

    /// Maxwellian velocity with inverse temperature beta: N(0, 1/beta) per axis.
    Vec maxwellian(int d, double beta) {
        Vec v = Vec::zero(d);
        double sd = 1.0 / std::sqrt(beta);
        for (int i = 0; i < d; ++i) v[i] = sd * normal();
        return v;
    }

    /// Uniform direction on S^{d-1}.
    Vec unit_vector(int d) {
        Vec v = Vec::zero(d);
        double n2;
        do {
            for (int i = 0; i < d; ++i) v[i] = normal();
            n2 = norm2(v);
        } while (n2 < 1e-24);
        v *= 1.0 / std::sqrt(n2);
        return v;
    }

    Vec uniform_torus(int d) {
        Vec v = Vec::zero(d);
        for (int i = 0; i < d; ++i) v[i] = uniform();
        return v;
    }

    /// Gamma(shape k, scale 1) for k >= 1 (Marsaglia-Tsang).
    double gamma(double k) {
        double d = k - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    std::uint64_t poisson_knuth(double mean) {
        if (mean <= 0.0) return 0;
        double limit = std::exp(-mean);
        double prod = uniform();
        std::uint64_t n = 0;
        while (prod > limit) {
            ++n;
            prod *= uniform();
        }
        return n;
    }

    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace kc
