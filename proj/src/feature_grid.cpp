#include "harbor/feature_grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "harbor/csv.hpp"

namespace harbor {

void validate(const GridSpec& s) {
    if (s.half_extent_cells < 1) throw Error(ErrorCode::SpecMismatch, "half_extent_cells must be >= 1");
    if (!(s.cell_size_deg > 0.0)) throw Error(ErrorCode::SpecMismatch, "cell_size_deg must be positive");
    if (s.t_steps < 1) throw Error(ErrorCode::SpecMismatch, "t_steps must be >= 1");
    if (!(s.step_minutes > 0.0)) throw Error(ErrorCode::SpecMismatch, "step_minutes must be positive");
}

std::optional<GridCell> cell_index(const GridSpec& spec, LatLon p) {
    const double h = spec.half_extent_cells;
    const double r = std::floor((p.lat - spec.center.lat) / spec.cell_size_deg + h);
    const double c = std::floor((p.lon - spec.center.lon) / spec.cell_size_deg + h);
    const int side = spec.side();
    if (r < 0 || c < 0 || r >= side || c >= side) return std::nullopt;
    return GridCell{static_cast<int>(r), static_cast<int>(c)};
}

GridTensor::GridTensor(int t, int h, int w, std::vector<std::string> channels)
    : t_(t), h_(h), w_(w), channels_(std::move(channels)),
      values_(static_cast<std::size_t>(t) * h * w * channels_.size(), 0.0) {}

double GridTensor::occupancy_total(int t) const {
    double sum = 0.0;
    for (int r = 0; r < h_; ++r) {
        for (int c = 0; c < w_; ++c) sum += at(t, r, c, 0);
    }
    return sum;
}

void GridTensor::write_csv(std::ostream& out) const {
    out << "t,row,col";
    for (const auto& ch : channels_) out << ',' << ch;
    out << '\n';
    for (int t = 0; t < t_; ++t) {
        for (int r = 0; r < h_; ++r) {
            for (int c = 0; c < w_; ++c) {
                out << t << ',' << r << ',' << c;
                for (int ch = 0; ch < channel_count(); ++ch) out << ',' << csv::number(at(t, r, c, ch));
                out << '\n';
            }
        }
    }
}

GridSample build_grid_sequence(std::span<const AisRecord> trajectory, const WeatherSeries& weather,
                               const GridSpec& spec, std::optional<Instant> actual_arrival) {
    if (trajectory.empty()) throw Error(ErrorCode::EmptyTrajectory, "no records");
    validate(spec);
    if (weather.empty()) throw Error(ErrorCode::SpecMismatch, "weather series is empty");

    std::vector<AisRecord> sorted(trajectory.begin(), trajectory.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
    const AisRecord& last = sorted.back();
    if (std::abs(last.position.lat - spec.center.lat) > 1e-9 || std::abs(last.position.lon - spec.center.lon) > 1e-9) {
        throw Error(ErrorCode::SpecMismatch, "grid centre is not the latest position");
    }

    std::vector<std::string> channels{"occupancy"};
    for (const char* ch : kWeatherChannels) channels.emplace_back(ch);

    const int side = spec.side();
    const int T = spec.t_steps;
    GridSample sample;
    sample.now = last.timestamp;
    sample.tensor = GridTensor(T, side, side, channels);
    GridTensor& x = sample.tensor;

    for (const auto& rec : sorted) {
        const double age = minutes_between(rec.timestamp, sample.now);
        if (age < 0.0) continue;
        const auto back = static_cast<long long>(std::floor(age / spec.step_minutes));
        if (back >= T) continue;
        const auto cell = cell_index(spec, rec.position);
        if (!cell) continue;
        const int t = T - 1 - static_cast<int>(back);
        double& occ = x.at(t, cell->row, cell->col, 0);
        occ = spec.binary_occupancy ? 1.0 : occ + 1.0;
        ++sample.samples_in_window;
    }

    const double h = spec.half_extent_cells;
    for (int t = 0; t < T; ++t) {
        const Instant step_end = add_minutes(sample.now, -(T - 1 - t) * spec.step_minutes);
        const WeatherField& field = weather.at(step_end);
        for (int r = 0; r < side; ++r) {
            const double lat = spec.center.lat + (r - h + 0.5) * spec.cell_size_deg;
            for (int c = 0; c < side; ++c) {
                const double lon = spec.center.lon + (c - h + 0.5) * spec.cell_size_deg;
                const WeatherCell& w = field.nearest({lat, lon});
                for (std::size_t ch = 0; ch < kWeatherChannels.size(); ++ch) {
                    x.at(t, r, c, static_cast<int>(ch) + 1) = w.channel(ch);
                }
            }
        }
    }

    if (actual_arrival) {
        const double remaining = minutes_between(sample.now, *actual_arrival);
        if (remaining < 0.0) throw Error(ErrorCode::OutOfRange, "arrival precedes the window", "actual_arrival");
        sample.label = EtaLabel{remaining};
    }
    return sample;
}

}  // namespace harbor
