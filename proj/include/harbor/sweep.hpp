#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "harbor/port_sim.hpp"

namespace harbor {

/// A (rate, strategy) pair averaged over seeds.
struct SweepRow {
    double rta_rate = 0.0;
    Strategy strategy = Strategy::WithoutPrediction;
    int seeds = 0;
    double mean_throughput = 0.0;
    double seconds_per_van = 0.0;  // 3600 / mean_throughput
    std::optional<double> punctuality_mean;  // pooled over RTA vessels of every seed
    double mean_waiting_minutes = 0.0;
    double mean_emission = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;     // rate-major, WithoutPrediction first
    std::vector<SimReport> cells;   // rate-major, then strategy, then seed
};

/// Parses "5..30:5" (percent, inclusive, step) or a comma list "5,10,30".
/// Throws InvalidConfig.
std::vector<double> parse_rate_list(const std::string& text);

/// Every (rate, strategy, seed) cell from `base`; the seed list replaces
/// base.seed. Throws Empty on an empty list.
SweepResult sweep_serial(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds);
/// OpenMP over cells. Cells share only the immutable inputs; output is
/// identical to the serial path.
SweepResult sweep_parallel(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds);

inline SweepResult sweep(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds) {
    return sweep_parallel(base, rates, seeds);
}

void write_sweep_csv(std::ostream& out, const SweepResult& r);
nlohmann::json sweep_to_json(const SweepResult& r);

}  // namespace harbor
