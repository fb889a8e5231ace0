#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "harbor/config.hpp"
#include "harbor/core.hpp"
#include "harbor/weather.hpp"

namespace harbor {

/// Parameters of the synthetic traffic generator. The seed fully determines
/// the output.
struct SynthConfig {
    std::uint64_t seed = 1;
    int n_vessels = 40;
    double horizon_hours = 72.0;
    Instant epoch = Instant{std::chrono::sys_days{std::chrono::year{2021} / 1 / 1}};
    LatLon port{35.08, 129.08};

    /// Explicit route polylines ending at the port. When empty, `route_count`
    /// templates are drawn from the seed.
    std::vector<std::vector<LatLon>> route_templates;
    int route_count = 6;
    double route_min_nm = 150.0;
    double route_max_nm = 320.0;

    double speed_min_knots = 12.0;
    double speed_max_knots = 18.0;
    int van_min = 400;
    int van_max = 1200;

    /// Scales how strongly weather moves along-route speed (and the SOG
    /// measurement noise that comes with sea state). 0 means uniform motion.
    double weather_perturbation = 1.0;
    double sampling_minutes = 5.0;
    double weather_cell_deg = 0.25;
    double weather_step_hours = 3.0;
};

/// Throws InvalidConfig on empty ranges or non-positive steps.
void validate(const SynthConfig& cfg);
SynthConfig synth_config_from(const KvConfig& kv);

/// Speed multiplier applied to a vessel's planned speed under `wind_speed`
/// (m/s). Headwinds above the 8 m/s reference slow a ship down, calm seas
/// let it run faster.
double weather_speed_factor(double wind_speed, double perturbation);

struct VoyageOutcome {
    std::string vessel_id;
    Instant actual_arrival{};
    double planned_speed = 0.0;  // knots, before weather
};

struct Traffic {
    std::vector<Voyage> voyages;
    WeatherSeries weather;
    std::vector<AisRecord> ais;  // grouped by vessel, time-ordered within a vessel
    std::vector<VoyageOutcome> outcomes;

    /// Records of one vessel, in time order.
    std::vector<AisRecord> trace(const std::string& vessel_id) const;
};

Traffic generate_traffic(const SynthConfig& cfg);

/// voyages.csv, ais.csv (AIS column layout), weather.csv, weather_grid.kv, arrivals.csv
std::vector<std::filesystem::path> write_traffic(const Traffic& traffic, const std::filesystem::path& dir);
Traffic read_traffic(const std::filesystem::path& dir);

}  // namespace harbor
