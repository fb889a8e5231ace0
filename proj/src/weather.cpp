#include "harbor/weather.hpp"

#include <algorithm>
#include <cmath>

namespace harbor {

const WeatherCell& WeatherField::nearest(LatLon p) const {
    const int r = std::clamp(static_cast<int>(std::floor((p.lat - origin.lat) / cell_size_deg)), 0, rows - 1);
    const int c = std::clamp(static_cast<int>(std::floor((p.lon - origin.lon) / cell_size_deg)), 0, cols - 1);
    return at(r, c);
}

void validate_weather_field(const WeatherField& f) {
    if (f.rows <= 0 || f.cols <= 0 || !(f.cell_size_deg > 0.0)) {
        throw Error(ErrorCode::OutOfRange, "degenerate weather grid", "grid");
    }
    if (f.cells.size() != static_cast<std::size_t>(f.rows) * f.cols) {
        throw Error(ErrorCode::OutOfRange, "cell count does not match rows x cols", "grid");
    }
    for (const auto& cell : f.cells) {
        if (cell.wind_speed < 0.0) throw Error(ErrorCode::OutOfRange, "negative wind speed", "wind_speed");
        if (cell.humidity < 0.0 || cell.humidity > 100.0) {
            throw Error(ErrorCode::OutOfRange, "humidity outside [0, 100]", "humidity");
        }
        for (std::size_t i = 0; i < cell.air_quality.size(); ++i) {
            if (cell.air_quality[i] < 0.0) throw Error(ErrorCode::OutOfRange, "negative index", kAirQualityIndices[i]);
        }
    }
}

WeatherSeries::WeatherSeries(std::vector<WeatherField> fields) : fields_(std::move(fields)) {
    std::stable_sort(fields_.begin(), fields_.end(),
                     [](const WeatherField& a, const WeatherField& b) { return a.valid_at < b.valid_at; });
}

const WeatherField& WeatherSeries::at(Instant t) const {
    if (fields_.empty()) throw Error(ErrorCode::Empty, "weather series has no snapshots");
    auto it = std::upper_bound(fields_.begin(), fields_.end(), t,
                               [](Instant v, const WeatherField& f) { return v < f.valid_at; });
    if (it == fields_.begin()) return fields_.front();
    return *std::prev(it);
}

}  // namespace harbor
