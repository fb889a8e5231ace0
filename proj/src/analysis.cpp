#include "harbor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "harbor/csv.hpp"

namespace harbor {

std::vector<RevenueRow> revenue_analysis(double thr_without, double thr_with, int max_cranes,
                                         const RevenueOptions& o) {
    if (!(thr_without >= 0.0)) throw Error(ErrorCode::OutOfRange, "negative throughput", "thr_without");
    if (!(thr_with >= 0.0)) throw Error(ErrorCode::OutOfRange, "negative throughput", "thr_with");
    if (max_cranes < 1) throw Error(ErrorCode::OutOfRange, "need at least one crane", "cranes");
    std::vector<RevenueRow> rows;
    for (int k = 1; k <= max_cranes; ++k) {
        RevenueRow r;
        r.cranes = k;
        r.daily_without = thr_without * o.hours_per_day * k;
        r.daily_with = thr_with * o.hours_per_day * k;
        r.day_diff = r.daily_with - r.daily_without;
        r.year_diff = r.day_diff * o.days_per_year;
        r.revenue = r.year_diff * o.value_per_van;
        rows.push_back(r);
    }
    return rows;
}

void write_revenue_csv(std::ostream& out, std::span<const RevenueRow> rows) {
    out << "cranes,daily_vans_without,daily_vans_with,day_diff,year_diff,revenue\n";
    for (const auto& r : rows) {
        out << r.cranes << ',' << csv::number(r.daily_without) << ',' << csv::number(r.daily_with) << ','
            << csv::number(r.day_diff) << ',' << csv::number(r.year_diff) << ',' << csv::number(r.revenue) << '\n';
    }
}

nlohmann::json revenue_to_json(std::span<const RevenueRow> rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        j.push_back({{"cranes", r.cranes},
                     {"daily_vans_without", r.daily_without},
                     {"daily_vans_with", r.daily_with},
                     {"day_diff", r.day_diff},
                     {"year_diff", r.year_diff},
                     {"revenue", r.revenue}});
    }
    return {{"rows", j}};
}

WaitingSample waiting_sample(const SimReport& report) {
    WaitingSample out;
    for (const auto& v : report.vessels) {
        out.emplace_back(std::to_string(report.seed) + "/" + v.vessel_id, v.anchorage_minutes);
    }
    return out;
}

WaitingComparison waiting_time_report(const WaitingSample& without, const WaitingSample& with) {
    if (without.empty() || with.empty()) throw Error(ErrorCode::Empty, "no vessels to compare");
    std::map<std::string, double> before;
    for (const auto& [id, w] : without) {
        if (!before.emplace(id, w).second) throw Error(ErrorCode::MismatchedVessels, "duplicate vessel " + id);
    }
    std::set<std::string> seen;
    WaitingComparison c;
    for (const auto& [id, w] : with) {
        auto it = before.find(id);
        if (it == before.end()) throw Error(ErrorCode::MismatchedVessels, id + " only in the with-prediction run");
        if (!seen.insert(id).second) throw Error(ErrorCode::MismatchedVessels, "duplicate vessel " + id);
        c.rows.push_back({id, it->second, w});
    }
    if (seen.size() != before.size()) {
        for (const auto& [id, w] : before) {
            if (!seen.count(id)) throw Error(ErrorCode::MismatchedVessels, id + " only in the without-prediction run");
        }
    }
    std::sort(c.rows.begin(), c.rows.end(), [](const auto& a, const auto& b) { return a.vessel_id < b.vessel_id; });
    for (const auto& r : c.rows) {
        c.total_before += r.before;
        c.total_after += r.after;
    }
    c.reduction_percent = c.total_before > 0.0 ? 100.0 * (c.total_before - c.total_after) / c.total_before : 0.0;
    return c;
}

void write_waiting_csv(std::ostream& out, const WaitingComparison& c) {
    out << "vessel,waiting_without_minutes,waiting_with_minutes\n";
    for (const auto& r : c.rows) out << r.vessel_id << ',' << csv::number(r.before) << ',' << csv::number(r.after) << '\n';
    out << "TOTAL," << csv::number(c.total_before) << ',' << csv::number(c.total_after) << '\n';
}

void write_waiting_svg(std::ostream& out, const WaitingComparison& c, std::size_t max_bars) {
    std::vector<WaitingRow> rows = c.rows;
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.before > b.before; });
    if (rows.size() > max_bars) rows.resize(max_bars);

    double top = 1.0;
    for (const auto& r : rows) top = std::max({top, r.before, r.after});
    const double width = 960, height = 420, left = 70, right = 20, upper = 50, lower = 70;
    const double plot_w = width - left - right, plot_h = height - upper - lower;
    const double slot = rows.empty() ? plot_w : plot_w / static_cast<double>(rows.size());
    const double bar = std::max(1.0, slot * 0.38);

    auto y = [&](double v) { return upper + plot_h * (1.0 - v / top); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << left << "\" y=\"22\" font-size=\"14\">Anchorage waiting before/after ETA prediction (total "
        << csv::number(std::round(c.total_before)) << " -> " << csv::number(std::round(c.total_after)) << " min, "
        << csv::number(std::round(c.reduction_percent * 10.0) / 10.0) << "% less)</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << upper + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << upper + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << upper << "\" x2=\"" << left << "\" y2=\"" << upper + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = top * i / 4.0;
        out << "<text x=\"" << left - 6 << "\" y=\"" << y(v) + 4 << "\" text-anchor=\"end\">"
            << csv::number(std::round(v)) << "</text>\n";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x = left + slot * static_cast<double>(i) + slot * 0.1;
        const auto& r = rows[i];
        out << "<rect x=\"" << x << "\" y=\"" << y(r.before) << "\" width=\"" << bar << "\" height=\""
            << upper + plot_h - y(r.before) << "\" fill=\"#c0504d\"/>\n";
        out << "<rect x=\"" << x + bar << "\" y=\"" << y(r.after) << "\" width=\"" << bar << "\" height=\""
            << upper + plot_h - y(r.after) << "\" fill=\"#4f81bd\"/>\n";
        out << "<text transform=\"translate(" << x + bar << "," << upper + plot_h + 8
            << ") rotate(60)\" font-size=\"8\">" << r.vessel_id << "</text>\n";
    }
    out << "<rect x=\"" << width - 230 << "\" y=\"34\" width=\"10\" height=\"10\" fill=\"#c0504d\"/>"
        << "<text x=\"" << width - 215 << "\" y=\"43\">without prediction</text>\n";
    out << "<rect x=\"" << width - 110 << "\" y=\"34\" width=\"10\" height=\"10\" fill=\"#4f81bd\"/>"
        << "<text x=\"" << width - 95 << "\" y=\"43\">with prediction</text>\n";
    out << "</svg>\n";
}

void write_punctuality_csv(std::ostream& out, const PunctualityStats& without, const PunctualityStats& with) {
    out << "strategy,mean_minutes,median_minutes,std_minutes,n\n";
    out << "WithoutPrediction," << csv::number(without.mean) << ',' << csv::number(without.median) << ','
        << csv::number(without.std) << ',' << without.n << '\n';
    out << "WithPrediction," << csv::number(with.mean) << ',' << csv::number(with.median) << ','
        << csv::number(with.std) << ',' << with.n << '\n';
    const double reduction = without.mean != 0.0 ? 100.0 * (without.mean - with.mean) / without.mean : 0.0;
    out << "reduction_percent," << csv::number(reduction) << ",,,\n";
}

}  // namespace harbor
