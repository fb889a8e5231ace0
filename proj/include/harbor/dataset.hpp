#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harbor/predictor.hpp"
#include "harbor/synth.hpp"

namespace harbor {

struct DatasetOptions {
    GridSpec grid;
    double stride_minutes = 60.0;        // spacing of prediction instants along a voyage
    double min_remaining_minutes = 30.0;  // skip instants this close to arrival
};

/// Reads grid.* and dataset.* keys; the grid centre is set per example.
DatasetOptions dataset_options_from(const KvConfig& kv);

/// One prediction instant of one voyage, reduced to what predictors consume.
struct EtaExample {
    std::string vessel_id;
    Instant now{};
    TensorSummary tensor;
    KinematicSummary kinematics;
    double label_minutes = 0.0;
};

/// Reference implementation, one example at a time.
std::vector<EtaExample> build_examples_serial(const Traffic& traffic, const DatasetOptions& options);

/// OpenMP over prediction instants; output identical to the serial path.
std::vector<EtaExample> build_examples_parallel(const Traffic& traffic, const DatasetOptions& options);

inline std::vector<EtaExample> build_examples(const Traffic& traffic, const DatasetOptions& options) {
    return build_examples_parallel(traffic, options);
}

void fit_predictor(Predictor& predictor, std::span<const EtaExample> examples);

/// Optional filter on remaining distance at prediction time, [min_nm, max_nm).
struct DistanceBucket {
    double min_nm = 0.0;
    double max_nm = 1e18;
};

MetricReport evaluate_predictor(const Predictor& predictor, std::span<const EtaExample> examples,
                                std::optional<DistanceBucket> bucket = std::nullopt);

}  // namespace harbor
