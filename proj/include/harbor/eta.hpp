#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

#include "harbor/core.hpp"

namespace harbor {

struct OnTime {};

struct RtaDetected {
    double required_speed = 0.0;   // knots; +inf once the promised ETA has passed
    double deficit_minutes = 0.0;  // lateness even at the feasible speed bound
};

using RtaStatus = std::variant<OnTime, RtaDetected>;

inline bool is_rta(const RtaStatus& s) { return std::holds_alternative<RtaDetected>(s); }

struct RtaOptions {
    /// Feasible speed = max_speed * multiplier.
    double speed_bound_multiplier = 1.0;
};

/// A vessel is late ("RTA") when the speed needed to cover the remaining
/// route by the promised ETA exceeds the feasible bound.
RtaStatus detect_rta(LatLon pos, Instant now, const Voyage& voyage, const RtaOptions& options = {});

struct EtaPrediction {
    Instant eta{};
    std::string predictor_id;
    std::optional<double> uncertainty_minutes;
};

/// now + remaining / recent_sog. Throws ZeroSpeed for a stationary vessel.
EtaPrediction predict_eta_kinematic(LatLon pos, Instant now, const Voyage& voyage, double recent_sog);

struct MetricReport {
    double rmse_minutes = 0.0;
    double mape_percent = 0.0;
    std::size_t n = 0;
};

/// RMSE and MAPE of predicted vs actual remaining minutes.
/// Throws Empty, LengthMismatch, or ZeroActual (any actual equal to 0).
MetricReport evaluate(std::span<const double> predictions, std::span<const double> actuals);

}  // namespace harbor
