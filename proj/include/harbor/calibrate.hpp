#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harbor/port_sim.hpp"

namespace harbor {

/// Throughput targets for the WithoutPrediction endpoints of the RTA sweep.
struct CalibrationTargets {
    double rate_low = 0.05;
    double throughput_low = 27.77;
    double rate_high = 0.30;
    double throughput_high = 26.82;
};

struct CalibrationGrid {
    std::vector<double> handling_seconds;  // per van
    std::vector<int> van_means;            // van range kept at mean +- van_half_width
    std::vector<double> vessels_per_day;
    int van_half_width = 400;
};

/// Coarse grid around the defaults.
CalibrationGrid default_coarse_grid();
/// Finer grid centred on a coarse winner.
CalibrationGrid refine_grid(const SimConfig& best, const CalibrationGrid& coarse);

struct CalibrationPoint {
    double handling_seconds = 0.0;
    int van_mean = 0;
    double vessels_per_day = 0.0;
    double throughput_low = 0.0;
    double throughput_high = 0.0;
    double max_rel_error = 0.0;
};

struct CalibrationResult {
    SimConfig config;  // base with the winning parameters applied
    CalibrationPoint best;
    std::vector<CalibrationPoint> evaluated;  // grid order, coarse then fine
    double predictor_mape = 0.0;              // percent, held-out synthetic traffic
};

/// Mean WithoutPrediction throughput at `rate` over `seeds`.
double mean_throughput(const SimConfig& cfg, double rate, std::span<const std::uint64_t> seeds);

CalibrationPoint evaluate_point(const SimConfig& base, double handling_seconds, int van_mean, double vessels_per_day,
                                int van_half_width, const CalibrationTargets& targets,
                                std::span<const std::uint64_t> seeds);

/// Two-stage grid search minimising the larger relative endpoint error.
/// Ties keep the earlier grid point. Delay moments are left untouched.
CalibrationResult calibrate(const SimConfig& base, std::span<const std::uint64_t> seeds,
                            const CalibrationTargets& targets = {});

/// Ridge predictor trained on `train_seeds` synthetic traffic and scored on
/// `test_seeds`; returns MAPE in percent.
double measure_predictor_mape(std::span<const std::uint64_t> train_seeds, std::span<const std::uint64_t> test_seeds);

/// Key-value artifact: comment header plus the canonical sim.* keys.
std::string calibration_artifact(const CalibrationResult& r, std::span<const std::uint64_t> seeds);

}  // namespace harbor
