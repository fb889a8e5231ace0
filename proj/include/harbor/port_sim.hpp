#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "harbor/berth_planner.hpp"
#include "harbor/config.hpp"

namespace harbor {

enum class Strategy { WithoutPrediction, WithPrediction };

std::string to_string(Strategy s);
/// "without" / "with" and the long names. Throws InvalidConfig.
Strategy parse_strategy(const std::string& text);

struct DelayModel {
    std::string family = "lognormal";
    double mean_minutes = 121.9;
    double sd_minutes = 265.1;
};

/// One vessel of the simulated schedule. Times are minutes from the sim epoch.
struct SimVessel {
    std::string vessel_id;
    double requested_arrival = 0.0;
    int van_count = 0;
    double distance_nm = 0.0;  // sailing leg into port
    double speed_knots = 0.0;
};

struct SimConfig {
    std::uint64_t seed = 1;
    double rta_rate = 0.0;
    DelayModel delay;
    Strategy strategy = Strategy::WithoutPrediction;
    std::string predictor_id = "tensor-ridge";
    double predictor_mape = 5.0;  // percent; sets the oracle-with-noise error

    int n_berths = 6;
    int cranes_per_vessel = 2;
    int crane_pool = 15;         // available
    int cranes_active_low = 13;  // operating cranes alternate low/high by day
    int cranes_active_high = 14;
    double handling_seconds_per_van = 128.7;

    double horizon_days = 60.0;
    double vessels_per_day = 6.8;
    int van_min = 400;
    int van_max = 1200;
    double leg_min_nm = 150.0;
    double leg_max_nm = 320.0;
    double speed_min_knots = 12.0;
    double speed_max_knots = 18.0;
    double rta_lead_min_hours = 6.0;  // RTA becomes known this long before the promised ETA
    double rta_lead_max_hours = 24.0;

    double emission_k_cubic = 0.0001;  // fuel units per (nm * kn^2)
    double emission_hotel_rate = 0.05;  // fuel units per anchorage minute

    Instant epoch = parse_instant("2021-01-01T00:00:00Z");
    bool validate_plans = false;  // run the plan validator after every replan
    std::vector<SimVessel> vessels;  // generated from the fields above when empty
};

/// Reads `sim.*` keys over the defaults. Throws InvalidConfig.
SimConfig sim_config_from(const KvConfig& kv);
/// Canonical key-value text of every scalar field, for echo and hashing.
std::string sim_config_canonical(const SimConfig& cfg);
void validate(const SimConfig& cfg);

/// Poisson arrivals over the horizon; depends only on the seed and the
/// schedule fields, never on rta_rate or strategy.
std::vector<SimVessel> generate_schedule(const SimConfig& cfg);

std::vector<Berth> sim_berths(const SimConfig& cfg);
PlannerOptions sim_planner_options(const SimConfig& cfg);

/// Greedy plan on requested arrivals. Each vessel's promised ETA is then its
/// planned berthing time, which the returned voyages carry.
struct InitialPlan {
    BerthPlan plan;
    std::vector<Voyage> voyages;
};
InitialPlan plan_schedule(const SimConfig& cfg, std::span<const SimVessel> vessels);

struct PunctualityStats {
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;
    std::size_t n = 0;
};

/// Mean, lower median, population standard deviation. Throws Empty.
PunctualityStats punctuality_stats(std::span<const double> deviations);

struct VesselOutcome {
    std::string vessel_id;
    bool rta = false;
    double delay_minutes = 0.0;
    double promised_eta = 0.0;
    double believed_eta = 0.0;  // last belief before arrival
    double actual_arrival = 0.0;
    double service_start = -1.0;  // negative when never berthed
    double service_end = -1.0;
    double charge_start = -1.0;
    std::string berth_id;
    int van_count = 0;
    bool completed = false;  // finished inside the horizon
    double anchorage_minutes = 0.0;
};

struct SimReport {
    std::uint64_t seed = 0;
    Strategy strategy = Strategy::WithoutPrediction;
    double rta_rate = 0.0;
    std::string config_echo;

    double throughput_vans_per_crane_hour = 0.0;
    double effective_seconds_per_van = 0.0;
    double charged_crane_hours = 0.0;
    long long vans_handled = 0;
    long long vans_scheduled = 0;
    int vessels_completed = 0;
    int vessels_backlog = 0;
    int rta_count = 0;
    int replans = 0;
    std::optional<PunctualityStats> punctuality;  // over RTA vessels; empty without any
    std::vector<double> punctuality_deviations;
    double total_waiting_minutes = 0.0;
    double emission_proxy = 0.0;
    std::vector<VesselOutcome> vessels;
};

/// Throws EmptySchedule, InfeasiblePlan.
SimReport run_simulation(const SimConfig& cfg, const BerthPlan& plan0);
/// Generates the schedule when cfg.vessels is empty and plans it first.
SimReport run_simulation(const SimConfig& cfg);

nlohmann::json report_to_json(const SimReport& r);
std::string report_csv_header();
std::string report_csv_row(const SimReport& r);

/// Fuel proxy: sum of k * d * v^2 over sailing legs plus hotel_rate * waiting.
/// Throws ZeroSpeedLeg for a leg with distance but no speed.
struct Leg {
    double distance_nm = 0.0;
    double speed_knots = 0.0;
};
double emission_proxy(std::span<const Leg> legs, double waiting_minutes, double hotel_rate, double k_cubic);

}  // namespace harbor
