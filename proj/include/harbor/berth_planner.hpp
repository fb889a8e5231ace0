#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "harbor/config.hpp"
#include "harbor/core.hpp"

namespace harbor {

struct Berth {
    std::string berth_id;
    int crane_slots = 1;
};

struct BerthAssignment {
    std::string vessel_id;
    std::string berth_id;
    Instant service_start{};
    Instant service_end{};
    int cranes_assigned = 1;

    friend bool operator==(const BerthAssignment&, const BerthAssignment&) = default;
};

struct PlannerOptions {
    int crane_pool = 13;
    double handling_rate = 27.77;  // vans per crane-hour
    int cranes_per_vessel = 2;     // capped by the berth's crane slots and the pool
    /// A vessel whose earliest feasible start falls after this is InfeasibleVessel.
    std::optional<Instant> horizon;
    /// When false only the `started` set freezes services, and `now` is just
    /// a lower bound for re-inserted starts.
    bool freeze_by_clock = true;
};

/// Reads planner.* keys. Throws InvalidConfig.
PlannerOptions planner_options_from(const KvConfig& kv);

/// Immutable planning value. Vessels with no vans to handle keep an ETA but
/// get no assignment.
struct BerthPlan {
    std::vector<Berth> berths;
    PlannerOptions options;
    std::vector<BerthAssignment> assignments;  // sorted by (start, berth, vessel)
    int plan_version = 0;
    std::map<std::string, Instant> eta_map;
    std::map<std::string, int> van_counts;
    std::optional<Instant> now;      // services starting before this are frozen
    std::set<std::string> started;   // services frozen regardless of `now`
    std::vector<std::string> warnings;

    const BerthAssignment* find(const std::string& vessel_id) const;
    bool is_started(const BerthAssignment& a) const;
};

/// Greedy first-fit: vessels in (promised ETA, vessel_id) order, each to the
/// berth where it can start earliest (ties to the earlier berth). Duration is
/// van_count / (cranes * handling_rate). Throws NoBerths, InvalidConfig,
/// InfeasibleVessel.
BerthPlan build_initial_plan(std::span<const Voyage> voyages, std::span<const Berth> berths,
                             const PlannerOptions& options);

enum class ReplanMode { Strict, Lenient };

/// Records `new_eta` and re-inserts every service that has not started, in
/// believed-ETA order, behind the frozen ones. The version goes up by one.
/// A new ETA before the plan's `now` is PastEta, or is clamped to `now` with a
/// warning in lenient mode. Throws UnknownVessel.
BerthPlan replan_on_eta_update(const BerthPlan& plan, const std::string& vessel_id, Instant new_eta,
                               ReplanMode mode = ReplanMode::Strict);

/// Moves the plan clock forward. Does not re-plan.
BerthPlan advance_to(const BerthPlan& plan, Instant now);

/// Freezes one service at its actual start. The assignment keeps its length.
BerthPlan mark_started(const BerthPlan& plan, const std::string& vessel_id, Instant actual_start);

/// Exhaustive search over vessel orders and berth choices (at most 8 vessels,
/// 2 berths; TooLarge otherwise). Each order is list-scheduled like the greedy.
BerthPlan brute_force_optimal(std::span<const Voyage> voyages, std::span<const Berth> berths,
                              const PlannerOptions& options);

/// Sum over assignments of (service_start - believed ETA), minutes.
double total_waiting_minutes(const BerthPlan& plan);

/// Human-readable invariant violations; empty when the plan is feasible.
std::vector<std::string> plan_violations(const BerthPlan& plan);
/// Throws InfeasiblePlan listing the first violations.
void validate_plan(const BerthPlan& plan);

nlohmann::json plan_to_json(const BerthPlan& plan);
/// Throws InvalidConfig on a malformed document.
BerthPlan plan_from_json(const nlohmann::json& j);

}  // namespace harbor
