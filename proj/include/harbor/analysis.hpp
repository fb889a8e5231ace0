#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "harbor/port_sim.hpp"

namespace harbor {

struct RevenueRow {
    int cranes = 0;
    double daily_without = 0.0;  // vans per day
    double daily_with = 0.0;
    double day_diff = 0.0;
    double year_diff = 0.0;
    double revenue = 0.0;  // currency per year
};

struct RevenueOptions {
    double hours_per_day = 24.0;
    double days_per_year = 365.0;
    double value_per_van = 70.0;
};

/// One row per crane count 1..max_cranes. Throws OutOfRange for negative
/// throughputs or max_cranes < 1.
std::vector<RevenueRow> revenue_analysis(double thr_without, double thr_with, int max_cranes,
                                         const RevenueOptions& options = {});

void write_revenue_csv(std::ostream& out, std::span<const RevenueRow> rows);
nlohmann::json revenue_to_json(std::span<const RevenueRow> rows);

/// Per-vessel anchorage waits, keyed by vessel (prefixed by seed when runs
/// are pooled).
using WaitingSample = std::vector<std::pair<std::string, double>>;

/// Anchorage waits of one report, keyed "<seed>/<vessel>".
WaitingSample waiting_sample(const SimReport& report);

struct WaitingRow {
    std::string vessel_id;
    double before = 0.0;  // WithoutPrediction
    double after = 0.0;   // WithPrediction
};

struct WaitingComparison {
    std::vector<WaitingRow> rows;  // sorted by vessel id
    double total_before = 0.0;
    double total_after = 0.0;
    double reduction_percent = 0.0;  // 0 when total_before is 0
};

/// Throws Empty, MismatchedVessels (different vessel sets or duplicates).
WaitingComparison waiting_time_report(const WaitingSample& without, const WaitingSample& with);

void write_waiting_csv(std::ostream& out, const WaitingComparison& c);
/// Bar chart of the largest per-vessel waits before and after.
void write_waiting_svg(std::ostream& out, const WaitingComparison& c, std::size_t max_bars = 40);

/// Mean, median and spread of pooled deviations per strategy.
void write_punctuality_csv(std::ostream& out, const PunctualityStats& without, const PunctualityStats& with);

}  // namespace harbor
