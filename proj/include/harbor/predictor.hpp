#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "harbor/eta.hpp"
#include "harbor/feature_grid.hpp"

namespace harbor {

/// Kinematic state of a vessel at the prediction instant.
struct KinematicSummary {
    double remaining_nm = 0.0;
    double recent_sog = 0.0;       // last reported SOG, knots
    double mean_sog_window = 0.0;  // mean SOG over the tensor window, knots
};

/// Summarises the trajectory (time-sorted, ending at the prediction
/// instant) against the voyage route. Throws EmptyTrajectory.
KinematicSummary summarize_kinematics(std::span<const AisRecord> trajectory, std::span<const LatLon> route,
                                      double window_minutes);

/// Compact, predictor-agnostic reduction of a GridTensor: per step and
/// weather channel, the mean over occupied cells (falling back to the grid
/// mean on empty steps), plus per-step occupancy totals.
///
/// The ahead ray samples the last step's weather one cell at a time along
/// the line from the occupancy centroid through the grid centre, stopping at
/// the grid edge. A track with no measurable heading gets an empty ray.
struct TensorSummary {
    int steps = 0, height = 0, width = 0, channels = 0;
    std::vector<double> occupied_mean;  // steps x (channels - 1)
    std::vector<double> occupancy;      // steps
    std::vector<double> grid_mean;      // last step, channels - 1
    std::vector<double> ahead_ray;      // ray points x (channels - 1)

    double weather(int step, int channel) const {
        return occupied_mean[static_cast<std::size_t>(step) * (channels - 1) + channel];
    }
    int ray_points() const { return channels > 1 ? static_cast<int>(ahead_ray.size()) / (channels - 1) : 0; }
    double ahead(int point, int channel) const {
        return ahead_ray[static_cast<std::size_t>(point) * (channels - 1) + channel];
    }
};

TensorSummary summarize_tensor(const GridTensor& tensor);

/// Pluggable ETA model: maps a tensor and kinematic summary to remaining minutes.
inline constexpr int kWindSpeedChannel = 1;  // index into kWeatherChannels

class Predictor {
public:
    virtual ~Predictor() = default;

    virtual std::string id() const = 0;
    virtual bool fitted() const = 0;

    /// Fits on paired summaries and labels (remaining minutes).
    virtual void fit(std::span<const TensorSummary> tensors, std::span<const KinematicSummary> kinematics,
                     std::span<const double> labels) = 0;

    /// Remaining minutes. Throws NotFitted or ShapeMismatch. May be negative;
    /// predict_eta_model clamps.
    virtual double predict_minutes(const TensorSummary& tensor, const KinematicSummary& kin) const = 0;

    double predict_minutes(const GridTensor& tensor, const KinematicSummary& kin) const {
        return predict_minutes(summarize_tensor(tensor), kin);
    }

    virtual nlohmann::json to_json() const = 0;
};

/// remaining_nm / recent_sog; needs no fitting. The no-model baseline.
class KinematicPredictor final : public Predictor {
public:
    std::string id() const override { return "kinematic"; }
    bool fitted() const override { return true; }
    void fit(std::span<const TensorSummary>, std::span<const KinematicSummary>, std::span<const double>) override {}
    double predict_minutes(const TensorSummary& tensor, const KinematicSummary& kin) const override;
    using Predictor::predict_minutes;
    nlohmann::json to_json() const override;
};

/// Ridge regression of the ratio (actual remaining minutes) / (remaining
/// distance at the window's mean SOG) on the per-step weather along the
/// occupied track. Closed-form fit on standardised features with an
/// unpenalised intercept; the prediction is ratio * window travel time.
class TensorRidgePredictor final : public Predictor {
public:
    explicit TensorRidgePredictor(GridSpec spec = {}, double lambda = 1e-2);

    std::string id() const override { return "tensor-ridge"; }
    bool fitted() const override { return !coefficients_.empty(); }
    void fit(std::span<const TensorSummary> tensors, std::span<const KinematicSummary> kinematics,
             std::span<const double> labels) override;
    double predict_minutes(const TensorSummary& tensor, const KinematicSummary& kin) const override;
    using Predictor::predict_minutes;
    nlohmann::json to_json() const override;
    static TensorRidgePredictor from_json(const nlohmann::json& j);

    const GridSpec& spec() const { return spec_; }
    std::vector<double> features(const TensorSummary& tensor, const KinematicSummary& kin) const;
    static double travel_minutes(const KinematicSummary& kin);

private:
    void check_shape(const TensorSummary& t) const;

    GridSpec spec_;
    double lambda_;
    int weather_channels_ = static_cast<int>(kWeatherChannels.size());
    std::vector<double> means_, scales_, coefficients_;
    double intercept_ = 0.0;
};

std::vector<std::string> available_predictors();

/// Throws UnknownPredictor listing the valid ids.
std::unique_ptr<Predictor> make_predictor(const std::string& id, const GridSpec& spec);
std::unique_ptr<Predictor> load_predictor(const nlohmann::json& j);

/// eta = now + predicted minutes, never earlier than now.
EtaPrediction predict_eta_model(const Predictor& predictor, const GridTensor& tensor, const KinematicSummary& kin,
                                Instant now);

}  // namespace harbor
