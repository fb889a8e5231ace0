#include "harbor/predictor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "harbor/geo.hpp"

namespace harbor {

KinematicSummary summarize_kinematics(std::span<const AisRecord> trajectory, std::span<const LatLon> route,
                                      double window_minutes) {
    if (trajectory.empty()) throw Error(ErrorCode::EmptyTrajectory, "no records");
    const AisRecord& last = trajectory.back();
    KinematicSummary k;
    k.remaining_nm = route_remaining_nm(route, last.position);
    k.recent_sog = last.sog;

    double sum = 0.0;
    int n = 0;
    for (auto it = trajectory.rbegin(); it != trajectory.rend(); ++it) {
        if (minutes_between(it->timestamp, last.timestamp) >= window_minutes) break;
        sum += it->sog;
        ++n;
    }
    k.mean_sog_window = n > 0 ? sum / n : last.sog;
    return k;
}

namespace {

void summarize_ahead(const GridTensor& x, TensorSummary& s) {
    const int wc = s.channels - 1;
    s.grid_mean.assign(wc, 0.0);
    s.ahead_ray.clear();
    if (s.steps == 0 || s.height == 0 || s.width == 0) return;
    const int last = s.steps - 1;

    const double cells = static_cast<double>(s.height) * s.width;
    double wsum = 0.0, rsum = 0.0, csum = 0.0;
    for (int r = 0; r < s.height; ++r) {
        for (int c = 0; c < s.width; ++c) {
            for (int ch = 0; ch < wc; ++ch) s.grid_mean[ch] += x.at(last, r, c, ch + 1) / cells;
            for (int t = 0; t < s.steps; ++t) {
                const double occ = x.at(t, r, c, 0);
                wsum += occ;
                rsum += occ * r;
                csum += occ * c;
            }
        }
    }
    if (wsum <= 0.0) return;
    const double cr = (s.height - 1) / 2.0, cc = (s.width - 1) / 2.0;
    const double dr = cr - rsum / wsum, dc = cc - csum / wsum;
    const double norm = std::hypot(dr, dc);
    if (norm < 0.5) return;

    for (int k = 1;; ++k) {
        const int r = static_cast<int>(std::lround(cr + k * dr / norm));
        const int c = static_cast<int>(std::lround(cc + k * dc / norm));
        if (r < 0 || r >= s.height || c < 0 || c >= s.width) break;
        for (int ch = 0; ch < wc; ++ch) s.ahead_ray.push_back(x.at(last, r, c, ch + 1));
    }
}

}  // namespace

TensorSummary summarize_tensor(const GridTensor& x) {
    TensorSummary s;
    s.steps = x.steps();
    s.height = x.height();
    s.width = x.width();
    s.channels = x.channel_count();
    const int wc = s.channels - 1;
    s.occupied_mean.assign(static_cast<std::size_t>(s.steps) * wc, 0.0);
    s.occupancy.assign(s.steps, 0.0);

    std::vector<double> occ_sum(wc), grid_sum(wc);
    for (int t = 0; t < s.steps; ++t) {
        std::fill(occ_sum.begin(), occ_sum.end(), 0.0);
        std::fill(grid_sum.begin(), grid_sum.end(), 0.0);
        double weight = 0.0;
        for (int r = 0; r < s.height; ++r) {
            for (int c = 0; c < s.width; ++c) {
                const double occ = x.at(t, r, c, 0);
                weight += occ;
                for (int ch = 0; ch < wc; ++ch) {
                    const double v = x.at(t, r, c, ch + 1);
                    grid_sum[ch] += v;
                    occ_sum[ch] += occ * v;
                }
            }
        }
        s.occupancy[t] = weight;
        const double cells = static_cast<double>(s.height) * s.width;
        for (int ch = 0; ch < wc; ++ch) {
            s.occupied_mean[static_cast<std::size_t>(t) * wc + ch] =
                weight > 0.0 ? occ_sum[ch] / weight : grid_sum[ch] / cells;
        }
    }
    summarize_ahead(x, s);
    return s;
}

// ---------------------------------------------------------------------------

double KinematicPredictor::predict_minutes(const TensorSummary&, const KinematicSummary& kin) const {
    if (!(kin.recent_sog > 0.0)) throw Error(ErrorCode::ZeroSpeed, "no kinematic ETA for a stationary vessel");
    return kin.remaining_nm / kin.recent_sog * 60.0;
}

nlohmann::json KinematicPredictor::to_json() const {
    return {{"format", "harbor-predictor"}, {"version", 1}, {"id", id()}};
}

// ---------------------------------------------------------------------------

TensorRidgePredictor::TensorRidgePredictor(GridSpec spec, double lambda) : spec_(spec), lambda_(lambda) {}

std::vector<double> TensorRidgePredictor::features(const TensorSummary& t, const KinematicSummary& kin) const {
    const double hours = travel_minutes(kin) / 60.0;
    const double speed_ratio = kin.recent_sog > 0.0 ? kin.recent_sog / kin.mean_sog_window : 1.0;
    const int w = kWindSpeedChannel;

    double past = 0.0;
    for (int s = 0; s < t.steps; ++s) past += t.weather(s, w) / t.steps;

    // Mean wind over the part of the remaining passage the ray covers, and
    // the share of the passage that part represents. Cells are taken as
    // roughly square at one nautical mile per arc minute.
    const double cell_nm = spec_.cell_size_deg * 60.0;
    const int points = t.ray_points();
    const int used = std::min(points, static_cast<int>(std::ceil(kin.remaining_nm / cell_nm)));
    double ahead = t.grid_mean[w];
    if (used > 0) {
        ahead = 0.0;
        for (int k = 0; k < used; ++k) ahead += t.ahead(k, w) / used;
    }
    const double covered = kin.remaining_nm > 0.0 ? std::min(1.0, used * cell_nm / kin.remaining_nm) : 1.0;
    const double da = ahead - past, dg = t.grid_mean[w] - past;

    std::vector<double> f{hours,         speed_ratio,         past,          ahead,     t.grid_mean[w],
                          da,            dg,                  da * covered,  dg * (1.0 - covered),
                          da * da,       dg * dg,             past * da,     covered,   da * hours,
                          dg * hours};
    for (int s = 0; s < t.steps; ++s) f.push_back(t.weather(s, w));
    return f;
}

double TensorRidgePredictor::travel_minutes(const KinematicSummary& kin) {
    if (!(kin.mean_sog_window > 0.0)) throw Error(ErrorCode::ZeroSpeed, "window mean SOG is zero");
    return kin.remaining_nm / kin.mean_sog_window * 60.0;
}

void TensorRidgePredictor::check_shape(const TensorSummary& t) const {
    const int side = spec_.side();
    if (t.steps != spec_.t_steps || t.height != side || t.width != side || t.channels != weather_channels_ + 1) {
        throw Error(ErrorCode::ShapeMismatch, "tensor (" + std::to_string(t.steps) + "," + std::to_string(t.height) +
                                                  "," + std::to_string(t.width) + "," + std::to_string(t.channels) +
                                                  ") does not match the trained grid");
    }
}

void TensorRidgePredictor::fit(std::span<const TensorSummary> tensors, std::span<const KinematicSummary> kinematics,
                               std::span<const double> labels) {
    if (tensors.size() != kinematics.size() || tensors.size() != labels.size()) {
        throw Error(ErrorCode::LengthMismatch, "training spans differ in length");
    }
    if (tensors.empty()) throw Error(ErrorCode::Empty, "no training examples");

    const std::size_t n = tensors.size();
    std::vector<std::vector<double>> rows;
    std::vector<double> ratios;
    rows.reserve(n);
    ratios.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        check_shape(tensors[i]);
        rows.push_back(features(tensors[i], kinematics[i]));
        const double base = travel_minutes(kinematics[i]);
        ratios.push_back(base > 0.0 ? labels[i] / base : 1.0);
    }
    const std::size_t p = rows.front().size();

    means_.assign(p, 0.0);
    scales_.assign(p, 0.0);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < p; ++j) means_[j] += r[j];
    }
    for (auto& m : means_) m /= static_cast<double>(n);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < p; ++j) scales_[j] += (r[j] - means_[j]) * (r[j] - means_[j]);
    }
    for (auto& s : scales_) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s < 1e-12) s = 1.0;
    }

    double y_mean = 0.0;
    for (double y : ratios) y_mean += y;
    y_mean /= static_cast<double>(n);

    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) z(i, j) = (rows[i][j] - means_[j]) / scales_[j];
        y(i) = ratios[i] - y_mean;
    }
    Eigen::MatrixXd gram = z.transpose() * z;
    gram.diagonal().array() += lambda_ * static_cast<double>(n);
    const Eigen::VectorXd beta = gram.ldlt().solve(z.transpose() * y);

    coefficients_.assign(beta.data(), beta.data() + beta.size());
    intercept_ = y_mean;
}

double TensorRidgePredictor::predict_minutes(const TensorSummary& t, const KinematicSummary& kin) const {
    if (!fitted()) throw Error(ErrorCode::NotFitted, "tensor-ridge has not been fitted");
    check_shape(t);
    const auto f = features(t, kin);
    double ratio = intercept_;
    for (std::size_t j = 0; j < f.size(); ++j) ratio += coefficients_[j] * (f[j] - means_[j]) / scales_[j];
    return ratio * travel_minutes(kin);
}

nlohmann::json TensorRidgePredictor::to_json() const {
    return {
        {"format", "harbor-predictor"},
        {"version", 1},
        {"id", id()},
        {"grid",
         {{"half_extent_cells", spec_.half_extent_cells},
          {"cell_size_deg", spec_.cell_size_deg},
          {"t_steps", spec_.t_steps},
          {"step_minutes", spec_.step_minutes},
          {"binary_occupancy", spec_.binary_occupancy}}},
        {"lambda", lambda_},
        {"intercept", intercept_},
        {"feature_means", means_},
        {"feature_scales", scales_},
        {"coefficients", coefficients_},
    };
}

TensorRidgePredictor TensorRidgePredictor::from_json(const nlohmann::json& j) {
    try {
        const auto& g = j.at("grid");
        GridSpec spec;
        spec.half_extent_cells = g.at("half_extent_cells").get<int>();
        spec.cell_size_deg = g.at("cell_size_deg").get<double>();
        spec.t_steps = g.at("t_steps").get<int>();
        spec.step_minutes = g.at("step_minutes").get<double>();
        spec.binary_occupancy = g.at("binary_occupancy").get<bool>();
        TensorRidgePredictor p(spec, j.at("lambda").get<double>());
        p.intercept_ = j.at("intercept").get<double>();
        p.means_ = j.at("feature_means").get<std::vector<double>>();
        p.scales_ = j.at("feature_scales").get<std::vector<double>>();
        p.coefficients_ = j.at("coefficients").get<std::vector<double>>();
        if (p.means_.size() != p.coefficients_.size() || p.scales_.size() != p.coefficients_.size()) {
            throw Error(ErrorCode::ShapeMismatch, "coefficient vectors differ in length");
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("predictor blob: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

std::vector<std::string> available_predictors() { return {"kinematic", "tensor-ridge"}; }

std::unique_ptr<Predictor> make_predictor(const std::string& id, const GridSpec& spec) {
    if (id == "kinematic") return std::make_unique<KinematicPredictor>();
    if (id == "tensor-ridge") return std::make_unique<TensorRidgePredictor>(spec);
    std::string list;
    for (const auto& a : available_predictors()) list += (list.empty() ? "" : ", ") + a;
    throw Error(ErrorCode::UnknownPredictor, "'" + id + "'; available: " + list);
}

std::unique_ptr<Predictor> load_predictor(const nlohmann::json& j) {
    if (j.value("format", "") != "harbor-predictor" || j.value("version", 0) != 1) {
        throw Error(ErrorCode::InvalidConfig, "not a version-1 predictor blob");
    }
    const std::string id = j.value("id", "");
    if (id == "kinematic") return std::make_unique<KinematicPredictor>();
    if (id == "tensor-ridge") return std::make_unique<TensorRidgePredictor>(TensorRidgePredictor::from_json(j));
    return make_predictor(id, {});
}

EtaPrediction predict_eta_model(const Predictor& predictor, const GridTensor& tensor, const KinematicSummary& kin,
                                Instant now) {
    const double minutes = predictor.predict_minutes(tensor, kin);
    return {add_minutes(now, std::max(0.0, minutes)), predictor.id(), std::nullopt};
}

}  // namespace harbor
