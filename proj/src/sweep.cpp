#include "harbor/sweep.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "harbor/csv.hpp"

namespace harbor {

std::vector<double> parse_rate_list(const std::string& text) {
    auto number = [&](const std::string& token) {
        double v = 0.0;
        if (!csv::parse_double(token, v)) throw Error(ErrorCode::InvalidConfig, "bad rate '" + token + "'", "rates");
        return v;
    };
    auto percent = [&](const std::string& token) {
        const double v = number(token);
        if (!(v >= 0.0 && v <= 100.0)) throw Error(ErrorCode::InvalidConfig, "rate " + token + " outside 0..100", "rates");
        return v;
    };
    std::vector<double> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const auto colon = text.find(':', dots);
        const double lo = percent(text.substr(0, dots));
        const double hi = percent(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
        const double step = colon == std::string::npos ? 1.0 : number(text.substr(colon + 1));
        if (!(step > 0.0) || hi < lo) throw Error(ErrorCode::InvalidConfig, "bad rate range '" + text + "'", "rates");
        const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
        for (int i = 0; i <= n; ++i) out.push_back((lo + i * step) / 100.0);
    } else {
        std::stringstream ss(text);
        std::string token;
        while (std::getline(ss, token, ',')) out.push_back(percent(token) / 100.0);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidConfig, "no rates in '" + text + "'", "rates");
    return out;
}

namespace {

constexpr Strategy kStrategies[] = {Strategy::WithoutPrediction, Strategy::WithPrediction};

struct Prepared {
    std::vector<SimConfig> per_seed;  // schedule generated, strategy/rate unset
    std::vector<BerthPlan> plans;
};

Prepared prepare(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds) {
    if (rates.empty()) throw Error(ErrorCode::Empty, "no RTA rates to sweep");
    if (seeds.empty()) throw Error(ErrorCode::Empty, "no seeds to sweep");
    Prepared p;
    for (std::uint64_t seed : seeds) {
        SimConfig c = base;
        c.seed = seed;
        if (base.vessels.empty()) c.vessels = generate_schedule(c);
        p.plans.push_back(plan_schedule(c, c.vessels).plan);
        p.per_seed.push_back(std::move(c));
    }
    return p;
}

SimReport run_cell(const Prepared& p, std::span<const double> rates, std::size_t cell) {
    const std::size_t n_seeds = p.per_seed.size();
    const std::size_t seed_i = cell % n_seeds;
    const std::size_t strategy_i = (cell / n_seeds) % 2;
    const std::size_t rate_i = cell / (2 * n_seeds);
    SimConfig c = p.per_seed[seed_i];
    c.rta_rate = rates[rate_i];
    c.strategy = kStrategies[strategy_i];
    return run_simulation(c, p.plans[seed_i]);
}

std::vector<SweepRow> summarize(std::span<const double> rates, std::size_t n_seeds, const std::vector<SimReport>& cells) {
    std::vector<SweepRow> rows;
    for (std::size_t r = 0; r < rates.size(); ++r) {
        for (std::size_t s = 0; s < 2; ++s) {
            SweepRow row;
            row.rta_rate = rates[r];
            row.strategy = kStrategies[s];
            row.seeds = static_cast<int>(n_seeds);
            std::vector<double> deviations;
            for (std::size_t k = 0; k < n_seeds; ++k) {
                const SimReport& rep = cells[(r * 2 + s) * n_seeds + k];
                row.mean_throughput += rep.throughput_vans_per_crane_hour / static_cast<double>(n_seeds);
                row.mean_waiting_minutes += rep.total_waiting_minutes / static_cast<double>(n_seeds);
                row.mean_emission += rep.emission_proxy / static_cast<double>(n_seeds);
                deviations.insert(deviations.end(), rep.punctuality_deviations.begin(), rep.punctuality_deviations.end());
            }
            row.seconds_per_van = row.mean_throughput > 0.0 ? 3600.0 / row.mean_throughput : 0.0;
            if (!deviations.empty()) row.punctuality_mean = punctuality_stats(deviations).mean;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace

SweepResult sweep_serial(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds) {
    const Prepared p = prepare(base, rates, seeds);
    const std::size_t n = rates.size() * 2 * seeds.size();
    SweepResult out;
    out.cells.reserve(n);
    for (std::size_t cell = 0; cell < n; ++cell) out.cells.push_back(run_cell(p, rates, cell));
    out.rows = summarize(rates, seeds.size(), out.cells);
    return out;
}

SweepResult sweep_parallel(const SimConfig& base, std::span<const double> rates, std::span<const std::uint64_t> seeds) {
    const Prepared p = prepare(base, rates, seeds);
    const auto n = static_cast<long long>(rates.size() * 2 * seeds.size());
    SweepResult out;
    out.cells.resize(static_cast<std::size_t>(n));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long long cell = 0; cell < n; ++cell) {
        try {
            out.cells[static_cast<std::size_t>(cell)] = run_cell(p, rates, static_cast<std::size_t>(cell));
        } catch (...) {
#pragma omp critical(harbor_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    out.rows = summarize(rates, seeds.size(), out.cells);
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
    out << "rta_rate_percent,strategy,seeds,throughput_vans_per_hour,seconds_per_van,punctuality_mean_minutes,"
           "waiting_mean_minutes,emission_mean\n";
    for (const auto& row : r.rows) {
        out << csv::number(std::round(row.rta_rate * 1e6) / 1e4) << ',' << to_string(row.strategy) << ','
            << row.seeds << ',' << csv::number(row.mean_throughput) << ',' << csv::number(row.seconds_per_van) << ','
            << (row.punctuality_mean ? csv::number(*row.punctuality_mean) : std::string()) << ','
            << csv::number(row.mean_waiting_minutes) << ',' << csv::number(row.mean_emission) << '\n';
    }
}

nlohmann::json sweep_to_json(const SweepResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"rta_rate", row.rta_rate},
                        {"strategy", to_string(row.strategy)},
                        {"seeds", row.seeds},
                        {"throughput_vans_per_hour", row.mean_throughput},
                        {"seconds_per_van", row.seconds_per_van},
                        {"punctuality_mean_minutes",
                         row.punctuality_mean ? nlohmann::json(*row.punctuality_mean) : nlohmann::json(nullptr)},
                        {"waiting_mean_minutes", row.mean_waiting_minutes},
                        {"emission_mean", row.mean_emission}});
    }
    return {{"rows", rows}};
}

}  // namespace harbor
