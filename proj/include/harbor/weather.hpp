#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "harbor/core.hpp"

namespace harbor {

inline constexpr std::array<const char*, 9> kAirQualityIndices = {"PM2.5", "PM10", "NO", "NOx", "SO",
                                                                  "SO2",   "CO",   "CO2", "O3"};

/// Weather variables in grid-channel order; the feature tensor appends
/// these after its occupancy channel.
inline constexpr std::array<const char*, 12> kWeatherChannels = {
    "wind_direction", "wind_speed", "humidity", "PM2.5", "PM10", "NO", "NOx", "SO", "SO2", "CO", "CO2", "O3"};

struct WeatherCell {
    double wind_direction = 0.0;  // degrees
    double wind_speed = 0.0;      // m/s
    double humidity = 0.0;        // percent
    std::array<double, kAirQualityIndices.size()> air_quality{};

    double channel(std::size_t c) const {
        if (c == 0) return wind_direction;
        if (c == 1) return wind_speed;
        if (c == 2) return humidity;
        return air_quality[c - 3];
    }
};

/// Regular lat/lon grid snapshot. Cell (r, c) covers
/// [origin.lat + r*cell, origin.lat + (r+1)*cell) x [origin.lon + c*cell, ...).
struct WeatherField {
    LatLon origin;
    double cell_size_deg = 0.25;
    int rows = 0;
    int cols = 0;
    Instant valid_at{};
    std::vector<WeatherCell> cells;  // row-major

    const WeatherCell& at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }
    /// Nearest cell; positions beyond the grid are clamped to the border cell.
    const WeatherCell& nearest(LatLon p) const;
};

/// Throws OutOfRange when a cell breaks the physical bounds.
void validate_weather_field(const WeatherField& field);

/// Time-ordered snapshots; lookups use the latest snapshot valid at or before t.
class WeatherSeries {
public:
    WeatherSeries() = default;
    explicit WeatherSeries(std::vector<WeatherField> fields);

    bool empty() const { return fields_.empty(); }
    std::size_t size() const { return fields_.size(); }
    const WeatherField& at(Instant t) const;
    std::span<const WeatherField> fields() const { return fields_; }

private:
    std::vector<WeatherField> fields_;
};

}  // namespace harbor
