#include "harbor/calibrate.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "harbor/csv.hpp"
#include "harbor/dataset.hpp"
#include "harbor/synth.hpp"

namespace harbor {

CalibrationGrid default_coarse_grid() {
    CalibrationGrid g;
    for (double hs = 126.0; hs <= 131.0 + 1e-9; hs += 0.5) g.handling_seconds.push_back(hs);
    for (int v = 500; v <= 1000; v += 100) g.van_means.push_back(v);
    g.vessels_per_day = {6.0, 6.8, 7.6};
    return g;
}

CalibrationGrid refine_grid(const SimConfig& best, const CalibrationGrid& coarse) {
    CalibrationGrid g;
    g.van_half_width = coarse.van_half_width;
    for (int i = -5; i <= 5; ++i) g.handling_seconds.push_back(best.handling_seconds_per_van + 0.1 * i);
    const int mean = (best.van_min + best.van_max) / 2;
    for (int i = -5; i <= 5; ++i) {
        if (mean + 20 * i - g.van_half_width >= 1) g.van_means.push_back(mean + 20 * i);
    }
    g.vessels_per_day = {best.vessels_per_day};
    return g;
}

double mean_throughput(const SimConfig& cfg, double rate, std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw Error(ErrorCode::Empty, "no calibration seeds");
    std::vector<double> thr(seeds.size());
    std::exception_ptr failure;
    const auto n = static_cast<long long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) {
        try {
            SimConfig c = cfg;
            c.seed = seeds[static_cast<std::size_t>(i)];
            c.rta_rate = rate;
            c.strategy = Strategy::WithoutPrediction;
            c.vessels.clear();
            thr[static_cast<std::size_t>(i)] = run_simulation(c).throughput_vans_per_crane_hour;
        } catch (...) {
#pragma omp critical(harbor_calibrate_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    double sum = 0.0;
    for (double t : thr) sum += t;
    return sum / static_cast<double>(thr.size());
}

namespace {

SimConfig apply(const SimConfig& base, double hs, int van_mean, double vpd, int half_width) {
    SimConfig c = base;
    c.handling_seconds_per_van = std::round(hs * 1000.0) / 1000.0;
    c.van_min = van_mean - half_width;
    c.van_max = van_mean + half_width;
    c.vessels_per_day = vpd;
    return c;
}

}  // namespace

CalibrationPoint evaluate_point(const SimConfig& base, double hs, int van_mean, double vpd, int half_width,
                                const CalibrationTargets& t, std::span<const std::uint64_t> seeds) {
    const SimConfig c = apply(base, hs, van_mean, vpd, half_width);
    CalibrationPoint p;
    p.handling_seconds = c.handling_seconds_per_van;
    p.van_mean = van_mean;
    p.vessels_per_day = vpd;
    p.throughput_low = mean_throughput(c, t.rate_low, seeds);
    p.throughput_high = mean_throughput(c, t.rate_high, seeds);
    p.max_rel_error = std::max(std::abs(p.throughput_low - t.throughput_low) / t.throughput_low,
                               std::abs(p.throughput_high - t.throughput_high) / t.throughput_high);
    return p;
}

CalibrationResult calibrate(const SimConfig& base, std::span<const std::uint64_t> seeds, const CalibrationTargets& t) {
    CalibrationResult r;
    auto search = [&](const CalibrationGrid& g) {
        for (double vpd : g.vessels_per_day) {
            for (int vm : g.van_means) {
                for (double hs : g.handling_seconds) {
                    const CalibrationPoint p = evaluate_point(base, hs, vm, vpd, g.van_half_width, t, seeds);
                    if (r.evaluated.empty() || p.max_rel_error < r.best.max_rel_error) r.best = p;
                    r.evaluated.push_back(p);
                }
            }
        }
    };
    const CalibrationGrid coarse = default_coarse_grid();
    search(coarse);
    SimConfig mid = apply(base, r.best.handling_seconds, r.best.van_mean, r.best.vessels_per_day, coarse.van_half_width);
    search(refine_grid(mid, coarse));
    r.config = apply(base, r.best.handling_seconds, r.best.van_mean, r.best.vessels_per_day, coarse.van_half_width);
    return r;
}

double measure_predictor_mape(std::span<const std::uint64_t> train_seeds, std::span<const std::uint64_t> test_seeds) {
    if (train_seeds.empty() || test_seeds.empty()) throw Error(ErrorCode::Empty, "no predictor seeds");
    DatasetOptions opt;
    std::vector<EtaExample> train;
    for (std::uint64_t s : train_seeds) {
        SynthConfig c;
        c.seed = s;
        c.n_vessels = 40;
        auto ex = build_examples(generate_traffic(c), opt);
        train.insert(train.end(), ex.begin(), ex.end());
    }
    TensorRidgePredictor ridge(opt.grid);
    fit_predictor(ridge, train);
    std::vector<EtaExample> test;
    for (std::uint64_t s : test_seeds) {
        SynthConfig c;
        c.seed = s;
        c.n_vessels = 20;
        auto ex = build_examples(generate_traffic(c), opt);
        test.insert(test.end(), ex.begin(), ex.end());
    }
    return evaluate_predictor(ridge, test).mape_percent;
}

std::string calibration_artifact(const CalibrationResult& r, std::span<const std::uint64_t> seeds) {
    std::ostringstream out;
    out << "# written by `harbor calibrate`\n";
    out << "# seeds";
    for (auto s : seeds) out << ' ' << s;
    out << "\n# throughput WithoutPrediction: " << csv::number(r.best.throughput_low) << " @ low rate, "
        << csv::number(r.best.throughput_high) << " @ high rate; max relative error "
        << csv::number(r.best.max_rel_error) << "\n";
    out << "# grid points evaluated: " << r.evaluated.size() << "\n";
    SimConfig c = r.config;
    c.seed = 1;
    c.rta_rate = 0.0;
    c.strategy = Strategy::WithoutPrediction;
    c.vessels.clear();
    c.predictor_mape = std::round(r.predictor_mape * 1000.0) / 1000.0;
    out << sim_config_canonical(c);
    return out.str();
}

}  // namespace harbor
