#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "harbor/core.hpp"
#include "harbor/weather.hpp"

namespace harbor {

/// Ship-centred square grid of (2*half_extent_cells + 1)^2 lat/lon cells
/// over a window of t_steps steps ending at the current instant.
struct GridSpec {
    LatLon center;
    int half_extent_cells = 16;
    double cell_size_deg = 0.05;
    int t_steps = 8;
    double step_minutes = 30.0;
    bool binary_occupancy = false;

    int side() const { return 2 * half_extent_cells + 1; }
    GridSpec centered_on(LatLon p) const {
        GridSpec s = *this;
        s.center = p;
        return s;
    }
    /// Same geometry ignoring the centre.
    bool same_shape(const GridSpec& o) const {
        return half_extent_cells == o.half_extent_cells && cell_size_deg == o.cell_size_deg &&
               t_steps == o.t_steps && step_minutes == o.step_minutes && binary_occupancy == o.binary_occupancy;
    }
};

/// Throws SpecMismatch for a degenerate spec.
void validate(const GridSpec& spec);

struct GridCell {
    int row = 0;
    int col = 0;
    friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Cell containing p, or nullopt when p lies outside the grid. Row grows
/// northward and column eastward; the centre sits at the south-west corner
/// of cell (half, half): index = floor((p - centre) / cell + half).
std::optional<GridCell> cell_index(const GridSpec& spec, LatLon p);

/// Dense (T, H, W, C) tensor. Channel 0 is occupancy, the rest follow
/// kWeatherChannels.
class GridTensor {
public:
    GridTensor() = default;
    GridTensor(int t, int h, int w, std::vector<std::string> channels);

    int steps() const { return t_; }
    int height() const { return h_; }
    int width() const { return w_; }
    int channel_count() const { return static_cast<int>(channels_.size()); }
    const std::vector<std::string>& channels() const { return channels_; }

    double& at(int t, int r, int c, int ch) { return values_[index(t, r, c, ch)]; }
    double at(int t, int r, int c, int ch) const { return values_[index(t, r, c, ch)]; }
    std::span<const double> values() const { return values_; }

    /// Occupancy summed over one time slice.
    double occupancy_total(int t) const;

    /// One row per (t, row, col) with a column per channel.
    void write_csv(std::ostream& out) const;

private:
    std::size_t index(int t, int r, int c, int ch) const {
        return ((static_cast<std::size_t>(t) * h_ + r) * w_ + c) * channels_.size() + ch;
    }

    int t_ = 0, h_ = 0, w_ = 0;
    std::vector<std::string> channels_;
    std::vector<double> values_;
};

struct EtaLabel {
    double remaining_minutes = 0.0;
};

struct GridSample {
    GridTensor tensor;
    Instant now{};
    std::optional<EtaLabel> label;
    int samples_in_window = 0;
};

/// Stacks occupancy and nearest-cell weather for the T steps ending at the
/// last record's timestamp. Step k covers (now - (T-k)*dt, now - (T-1-k)*dt].
/// Samples outside the grid or the window are dropped. With
/// `actual_arrival` the sample carries its training label.
///
/// Throws EmptyTrajectory, or SpecMismatch when the spec is degenerate, its
/// centre is not the last record's position, or the weather series is empty.
GridSample build_grid_sequence(std::span<const AisRecord> trajectory, const WeatherSeries& weather,
                               const GridSpec& spec, std::optional<Instant> actual_arrival = std::nullopt);

}  // namespace harbor
