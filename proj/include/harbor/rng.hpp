#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace harbor {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for a named sub-task. Same (root, path) always gives the same
/// seed, independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(root);
    for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632BE59BD9B4E019ULL));
    return s;
}

/// mt19937_64 with hand-written transforms. The standard distributions are
/// implementation-defined, which would make reports differ across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Integer in [lo, hi].
    long long uniform_int(long long lo, long long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const double k = std::floor(uniform() * static_cast<double>(span));
        return lo + static_cast<long long>(std::min(k, static_cast<double>(span - 1)));
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Lognormal parameters (mu, sigma of the underlying normal) matching a
/// target mean and standard deviation.
struct LognormalParams {
    double mu = 0.0;
    double sigma = 0.0;

    static LognormalParams from_moments(double mean, double sd) {
        const double s2 = std::log1p((sd * sd) / (mean * mean));
        return {std::log(mean) - 0.5 * s2, std::sqrt(s2)};
    }

    double sample(double standard_normal) const { return std::exp(mu + sigma * standard_normal); }
};

}  // namespace harbor
