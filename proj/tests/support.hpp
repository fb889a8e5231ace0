#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "harbor/core.hpp"

#ifndef HARBOR_TEST_DATA
#define HARBOR_TEST_DATA "tests/data"
#endif

namespace testing {

inline std::filesystem::path data_file(const std::string& name) { return std::filesystem::path(HARBOR_TEST_DATA) / name; }

/// Small xorshift generator for property tests; independent of the library RNG.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    harbor::LatLon point() { return {range(-89.0, 89.0), range(-179.0, 179.0)}; }

private:
    std::uint64_t s_;
};

inline harbor::Instant at(const std::string& text) { return harbor::parse_instant(text); }

inline harbor::Instant plus_minutes(harbor::Instant t, double m) { return harbor::add_minutes(t, m); }

}  // namespace testing
