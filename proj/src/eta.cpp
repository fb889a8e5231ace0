#include "harbor/eta.hpp"

#include <cmath>
#include <limits>

#include "harbor/geo.hpp"

namespace harbor {

RtaStatus detect_rta(LatLon pos, Instant now, const Voyage& voyage, const RtaOptions& options) {
    const double remaining = route_remaining_nm(voyage.route, pos);
    if (remaining <= 1e-9) return OnTime{};

    const double bound = voyage.max_speed * options.speed_bound_multiplier;
    const double minutes_left = minutes_between(now, voyage.promised_eta);
    const double minutes_needed = remaining / bound * 60.0;
    if (minutes_left <= 0.0) {
        return RtaDetected{std::numeric_limits<double>::infinity(), minutes_needed};
    }
    const double required = remaining / (minutes_left / 60.0);
    if (required <= bound) return OnTime{};
    return RtaDetected{required, minutes_needed - minutes_left};
}

EtaPrediction predict_eta_kinematic(LatLon pos, Instant now, const Voyage& voyage, double recent_sog) {
    if (!(recent_sog > 0.0)) throw Error(ErrorCode::ZeroSpeed, "no kinematic ETA for a stationary vessel");
    const double remaining = route_remaining_nm(voyage.route, pos);
    return {add_minutes(now, remaining / recent_sog * 60.0), "kinematic", std::nullopt};
}

MetricReport evaluate(std::span<const double> predictions, std::span<const double> actuals) {
    if (predictions.size() != actuals.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(predictions.size()) + " predictions vs " + std::to_string(actuals.size()));
    }
    if (actuals.empty()) throw Error(ErrorCode::Empty, "nothing to evaluate");

    double sq = 0.0, pct = 0.0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        if (actuals[i] == 0.0) throw Error(ErrorCode::ZeroActual, "actual at index " + std::to_string(i) + " is 0");
        const double err = predictions[i] - actuals[i];
        sq += err * err;
        pct += std::abs(err) / std::abs(actuals[i]);
    }
    const double n = static_cast<double>(actuals.size());
    return {std::sqrt(sq / n), 100.0 * pct / n, actuals.size()};
}

}  // namespace harbor
