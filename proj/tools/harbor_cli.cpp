// harbor: command-line front end for the ETA / berth-planning / port
// simulation pipeline. Exit codes: 0 ok, 1 runtime failure, 2 usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "harbor/analysis.hpp"
#include "harbor/berth_planner.hpp"
#include "harbor/calibrate.hpp"
#include "harbor/config.hpp"
#include "harbor/csv.hpp"
#include "harbor/dataset.hpp"
#include "harbor/port_sim.hpp"
#include "harbor/sweep.hpp"
#include "harbor/synth.hpp"

namespace fs = std::filesystem;
using namespace harbor;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kDefaultCalibration = "config/calibration.kv";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    std::string config;
};

/// Collects what a command wrote so the manifest can list it.
class Output {
public:
    Output(const Common& common, std::vector<std::string> argv) : common_(common), argv_(std::move(argv)) {
        if (!common_.out.empty()) fs::create_directories(common_.out);
    }

    bool to_dir() const { return !common_.out.empty(); }

    /// Writes to <out>/<name>, or to stdout when no directory was given.
    void emit(const std::string& name, const std::string& content) {
        if (!to_dir()) {
            std::cout << content;
            return;
        }
        const fs::path path = fs::path(common_.out) / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error(ErrorCode::Io, "cannot write " + path.string());
        f << content;
        artifacts_.push_back({name, hex64(fnv1a64(content))});
    }

    void add_file(const fs::path& path) {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        artifacts_.push_back({fs::relative(path, common_.out).generic_string(), hex64(fnv1a64(ss.str()))});
    }

    void manifest(std::optional<std::uint64_t> config_hash, const std::vector<std::uint64_t>& seeds) {
        if (!to_dir()) return;
        nlohmann::json j;
        j["tool"] = "harbor";
        j["version"] = kVersion;
        j["command"] = argv_;
        j["config_hash"] = config_hash ? nlohmann::json(hex64(*config_hash)) : nlohmann::json(nullptr);
        j["seeds"] = seeds;
        nlohmann::json arts = nlohmann::json::array();
        for (const auto& [name, hash] : artifacts_) arts.push_back({{"path", name}, {"fnv1a64", hash}});
        j["artifacts"] = arts;
        std::ofstream f(fs::path(common_.out) / "manifest.json", std::ios::binary);
        f << j.dump(2) << '\n';
    }

private:
    const Common& common_;
    std::vector<std::string> argv_;
    std::vector<std::pair<std::string, std::string>> artifacts_;
};

const std::set<std::string> kKnownKeys = {
    "synth.seed", "synth.n_vessels", "synth.horizon_hours", "synth.port_lat", "synth.port_lon", "synth.route_count",
    "synth.route_min_nm", "synth.route_max_nm", "synth.speed_min_knots", "synth.speed_max_knots", "synth.van_min",
    "synth.van_max", "synth.weather_perturbation", "synth.sampling_minutes", "synth.weather_cell_deg",
    "synth.weather_step_hours", "synth.epoch", "grid.half_extent_cells", "grid.cell_size_deg", "grid.t_steps",
    "grid.step_minutes", "grid.binary_occupancy", "dataset.stride_minutes", "dataset.min_remaining_minutes",
    "planner.crane_pool", "planner.handling_rate", "planner.cranes_per_vessel", "planner.freeze_by_clock",
    "planner.horizon", "sim.seed", "sim.rta_rate", "sim.delay.family", "sim.delay.mean_minutes",
    "sim.delay.sd_minutes", "sim.strategy", "sim.predictor_id", "sim.predictor_mape", "sim.n_berths",
    "sim.cranes_per_vessel", "sim.crane_pool", "sim.cranes_active_low", "sim.cranes_active_high",
    "sim.handling_seconds_per_van", "sim.horizon_days", "sim.vessels_per_day", "sim.van_min", "sim.van_max",
    "sim.leg_min_nm", "sim.leg_max_nm", "sim.speed_min_knots", "sim.speed_max_knots", "sim.rta_lead_min_hours",
    "sim.rta_lead_max_hours", "sim.emission_k_cubic", "sim.emission_hotel_rate", "sim.epoch", "sim.validate_plans",
};

/// Loads the config file; a missing file is a usage error.
std::optional<KvConfig> load_config(const std::string& path, bool required) {
    if (path.empty()) {
        if (required) throw UsageError("--config is required");
        return std::nullopt;
    }
    if (!fs::exists(path)) throw UsageError("config file not found: " + path);
    KvConfig kv = KvConfig::load(path);
    std::vector<std::string> unknown;
    for (const auto& [key, value] : kv.values()) {
        if (!kKnownKeys.count(key) && key.rfind("synth.route.", 0) != 0) unknown.push_back(key);
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
        throw Error(ErrorCode::InvalidConfig, "unknown keys: " + list);
    }
    return kv;
}

std::optional<std::uint64_t> hash_of(const std::optional<KvConfig>& kv) {
    return kv ? std::optional<std::uint64_t>(kv->hash()) : std::nullopt;
}

void check_format(const Common& c) {
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
}

std::vector<std::uint64_t> seed_list(std::uint64_t first, int count) {
    if (count < 1) throw UsageError("--seeds must be at least 1");
    std::vector<std::uint64_t> s;
    for (int i = 0; i < count; ++i) s.push_back(first + static_cast<std::uint64_t>(i));
    return s;
}

Traffic load_traffic_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "data directory not found: " + dir);
    return read_traffic(dir);
}

std::string metrics_csv(const std::vector<std::pair<std::string, MetricReport>>& rows) {
    std::ostringstream out;
    out << "model,rmse_minutes,mape_percent,n\n";
    for (const auto& [label, m] : rows) {
        out << label << ',' << csv::number(m.rmse_minutes) << ',' << csv::number(m.mape_percent) << ',' << m.n << '\n';
    }
    return out.str();
}

std::string metrics_json(const std::vector<std::pair<std::string, MetricReport>>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [label, m] : rows) {
        j.push_back({{"model", label}, {"rmse_minutes", m.rmse_minutes}, {"mape_percent", m.mape_percent}, {"n", m.n}});
    }
    return nlohmann::json{{"rows", j}}.dump(2) + "\n";
}

std::string label_for(const Predictor& p) {
    return p.id() == "kinematic" ? "Without model application (kinematic)" : p.id();
}

SimConfig sim_config_or_default(const std::optional<KvConfig>& kv) {
    return kv ? sim_config_from(*kv) : SimConfig{};
}

/// Without/With runs at one rate over the seed list.
struct PairedRuns {
    std::vector<SimReport> without, with;
};

PairedRuns paired_runs(const SimConfig& base, double rate, const std::vector<std::uint64_t>& seeds) {
    const std::vector<double> rates{rate};
    SweepResult r = sweep(base, rates, seeds);
    PairedRuns out;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        out.without.push_back(std::move(r.cells[i]));
        out.with.push_back(std::move(r.cells[seeds.size() + i]));
    }
    return out;
}

std::vector<double> pooled_deviations(const std::vector<SimReport>& runs) {
    std::vector<double> d;
    for (const auto& r : runs) d.insert(d.end(), r.punctuality_deviations.begin(), r.punctuality_deviations.end());
    return d;
}

WaitingSample pooled_waiting(const std::vector<SimReport>& runs) {
    WaitingSample w;
    for (const auto& r : runs) {
        auto s = waiting_sample(r);
        w.insert(w.end(), s.begin(), s.end());
    }
    return w;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> argv_echo(argv + 1, argv + argc);
    CLI::App app{"Port call ETA prediction, berth planning and terminal simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "Root seed (first seed for multi-seed commands)");
        sub->add_option("--out", common.out, "Output directory (stdout when omitted)");
        sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--config", common.config, "Key-value config file");
    };

    auto* generate = app.add_subcommand("generate", "Generate synthetic AIS, voyage and weather files");
    add_common(generate);

    std::vector<std::string> data_dirs;
    std::string predictor_id = "tensor-ridge";
    auto* fit = app.add_subcommand("fit", "Fit an ETA predictor on generated data");
    add_common(fit);
    fit->add_option("--data", data_dirs, "Generated data directory (repeatable)")->required();
    fit->add_option("--predictor", predictor_id, "Predictor id");

    std::vector<std::string> model_files;
    std::vector<std::string> eval_predictors;
    double bucket_min = -1.0, bucket_max = -1.0;
    auto* eval = app.add_subcommand("eval", "Evaluate predictors against the kinematic baseline");
    add_common(eval);
    eval->add_option("--data", data_dirs, "Generated data directory (repeatable)")->required();
    eval->add_option("--model", model_files, "Fitted model JSON (repeatable)");
    eval->add_option("--predictor", eval_predictors, "Predictor id that needs no fitting (repeatable)");
    eval->add_option("--min-nm", bucket_min, "Only instants at least this far out");
    eval->add_option("--max-nm", bucket_max, "Only instants closer than this");

    auto* plan = app.add_subcommand("plan", "Berth plans: build, replan, validate");
    plan->require_subcommand(1);
    std::string plan_data, plan_file, replan_vessel, replan_eta, replan_mode = "strict";
    int plan_berths = 6, plan_slots = 2;
    auto* plan_build = plan->add_subcommand("build", "FCFS plan for the voyages of a data directory");
    add_common(plan_build);
    plan_build->add_option("--data", plan_data, "Generated data directory")->required();
    plan_build->add_option("--berths", plan_berths, "Number of berths");
    plan_build->add_option("--crane-slots", plan_slots, "Crane slots per berth");
    auto* plan_replan = plan->add_subcommand("replan", "Apply one ETA update to a plan");
    add_common(plan_replan);
    plan_replan->add_option("--plan", plan_file, "Plan JSON")->required();
    plan_replan->add_option("--vessel", replan_vessel, "Vessel id")->required();
    plan_replan->add_option("--eta", replan_eta, "New ETA (RFC 3339)")->required();
    plan_replan->add_option("--mode", replan_mode, "strict or lenient")->check(CLI::IsMember({"strict", "lenient"}));
    auto* plan_validate = plan->add_subcommand("validate", "Check a plan for overlaps and early starts");
    add_common(plan_validate);
    plan_validate->add_option("--plan", plan_file, "Plan JSON")->required();

    double sim_rate = -1.0;
    std::string sim_strategy;
    auto* simulate = app.add_subcommand("simulate", "Run one terminal simulation");
    add_common(simulate);
    simulate->add_option("--rate", sim_rate, "RTA rate as a fraction in [0, 1]");
    simulate->add_option("--strategy", sim_strategy, "with or without prediction");

    std::string rates_text = "5..30:5";
    int n_seeds = 30;
    bool serial = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "RTA-rate sweep over seeds for both strategies");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--rates", rates_text, "Percent list: 5..30:5 or 5,10,30");
    sweep_cmd->add_option("--seeds", n_seeds, "Number of seeds, starting at --seed (default 1)");
    sweep_cmd->add_flag("--serial", serial, "Use the single-threaded reference path");

    int cal_seeds = 10;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit handling time, vessel size and density to the sweep endpoints");
    add_common(calibrate_cmd);
    calibrate_cmd->add_option("--seeds", cal_seeds, "Number of calibration seeds, starting at --seed (default 101)");

    auto* report = app.add_subcommand("report", "Revenue, punctuality and waiting-time reports");
    report->require_subcommand(1);
    double thr_without = 0.0, thr_with = 0.0, van_value = 70.0;
    int max_cranes = 15;
    auto* report_revenue = report->add_subcommand("revenue", "Crane-count revenue expansion");
    add_common(report_revenue);
    report_revenue->add_option("--without", thr_without, "Throughput without prediction, vans/h")->required();
    report_revenue->add_option("--with", thr_with, "Throughput with prediction, vans/h")->required();
    report_revenue->add_option("--cranes", max_cranes, "Largest crane count");
    report_revenue->add_option("--value", van_value, "Revenue per van");
    double report_rate = 0.30;
    auto* report_punct = report->add_subcommand("punctuality", "Mean/median/std arrival deviation per strategy");
    add_common(report_punct);
    report_punct->add_option("--rate", report_rate, "RTA rate as a fraction");
    report_punct->add_option("--seeds", n_seeds, "Number of seeds");
    auto* report_wait = report->add_subcommand("waiting", "Per-vessel anchorage waiting before/after, CSV and SVG");
    add_common(report_wait);
    report_wait->add_option("--rate", report_rate, "RTA rate as a fraction");
    report_wait->add_option("--seeds", n_seeds, "Number of seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        check_format(common);
        Output out(common, argv_echo);
        const bool json = common.format == "json";

        if (*generate) {
            auto kv = load_config(common.config, true);
            SynthConfig cfg = synth_config_from(*kv);
            if (common.seed) cfg.seed = *common.seed;
            const Traffic traffic = generate_traffic(cfg);
            if (!out.to_dir()) throw UsageError("generate needs --out");
            for (const auto& p : write_traffic(traffic, common.out)) out.add_file(p);
            out.manifest(hash_of(kv), {cfg.seed});
            std::cerr << "generated " << traffic.voyages.size() << " voyages, " << traffic.ais.size()
                      << " AIS records\n";
        } else if (*fit) {
            auto kv = load_config(common.config, false);
            const DatasetOptions opt = kv ? dataset_options_from(*kv) : DatasetOptions{};
            auto predictor = make_predictor(predictor_id, opt.grid);
            std::vector<EtaExample> examples;
            for (const auto& d : data_dirs) {
                auto ex = build_examples(load_traffic_dir(d), opt);
                examples.insert(examples.end(), ex.begin(), ex.end());
            }
            fit_predictor(*predictor, examples);
            out.emit("model.json", predictor->to_json().dump(2) + "\n");
            out.manifest(hash_of(kv), {});
            std::cerr << "fitted " << predictor->id() << " on " << examples.size() << " examples\n";
        } else if (*eval) {
            auto kv = load_config(common.config, false);
            const DatasetOptions opt = kv ? dataset_options_from(*kv) : DatasetOptions{};
            std::vector<std::unique_ptr<Predictor>> models;
            models.push_back(std::make_unique<KinematicPredictor>());
            for (const auto& id : eval_predictors) {
                if (id == "kinematic") continue;
                auto p = make_predictor(id, opt.grid);
                if (!p->fitted()) throw Error(ErrorCode::NotFitted, id + " needs --model");
                models.push_back(std::move(p));
            }
            for (const auto& f : model_files) {
                std::ifstream in(f);
                if (!in) throw Error(ErrorCode::Io, "cannot read " + f);
                auto m = load_predictor(nlohmann::json::parse(in));
                if (const auto* ridge = dynamic_cast<const TensorRidgePredictor*>(m.get());
                    ridge && !ridge->spec().same_shape(opt.grid)) {
                    throw Error(ErrorCode::SpecMismatch, f + " was fitted on a different grid than --config describes");
                }
                models.push_back(std::move(m));
            }
            std::vector<EtaExample> examples;
            for (const auto& d : data_dirs) {
                auto ex = build_examples(load_traffic_dir(d), opt);
                examples.insert(examples.end(), ex.begin(), ex.end());
            }
            std::optional<DistanceBucket> bucket;
            if (bucket_min >= 0.0 || bucket_max >= 0.0) {
                bucket = DistanceBucket{};
                if (bucket_min >= 0.0) bucket->min_nm = bucket_min;
                if (bucket_max >= 0.0) bucket->max_nm = bucket_max;
            }
            std::vector<std::pair<std::string, MetricReport>> rows;
            for (const auto& m : models) rows.emplace_back(label_for(*m), evaluate_predictor(*m, examples, bucket));
            out.emit(json ? "metrics.json" : "metrics.csv", json ? metrics_json(rows) : metrics_csv(rows));
            out.manifest(hash_of(kv), {});
        } else if (*plan_build) {
            auto kv = load_config(common.config, false);
            const PlannerOptions opt = kv ? planner_options_from(*kv) : PlannerOptions{};
            if (plan_berths < 1) throw UsageError("--berths must be at least 1");
            std::vector<Berth> berths;
            for (int i = 0; i < plan_berths; ++i) {
                char id[16];
                std::snprintf(id, sizeof id, "B%02d", i + 1);
                berths.push_back({id, plan_slots});
            }
            const BerthPlan p = build_initial_plan(load_traffic_dir(plan_data).voyages, berths, opt);
            validate_plan(p);
            out.emit("plan.json", plan_to_json(p).dump(2) + "\n");
            out.manifest(hash_of(kv), {});
        } else if (*plan_replan || *plan_validate) {
            std::ifstream in(plan_file);
            if (!in) throw Error(ErrorCode::Io, "cannot read " + plan_file);
            const BerthPlan p = plan_from_json(nlohmann::json::parse(in));
            if (*plan_validate) {
                const auto problems = plan_violations(p);
                for (const auto& v : problems) std::cout << v << '\n';
                if (!problems.empty()) throw Error(ErrorCode::InfeasiblePlan, std::to_string(problems.size()) + " violations");
                std::cout << "plan ok: " << p.assignments.size() << " assignments\n";
            } else {
                const auto mode = replan_mode == "lenient" ? ReplanMode::Lenient : ReplanMode::Strict;
                const BerthPlan next = replan_on_eta_update(p, replan_vessel, parse_instant(replan_eta), mode);
                validate_plan(next);
                out.emit("plan.json", plan_to_json(next).dump(2) + "\n");
                out.manifest(std::nullopt, {});
            }
        } else if (*simulate) {
            auto kv = load_config(common.config, false);
            SimConfig cfg = sim_config_or_default(kv);
            if (common.seed) cfg.seed = *common.seed;
            if (sim_rate >= 0.0) cfg.rta_rate = sim_rate;
            if (!sim_strategy.empty()) cfg.strategy = parse_strategy(sim_strategy);
            validate(cfg);
            const SimReport r = run_simulation(cfg);
            out.emit(json ? "report.json" : "report.csv",
                     json ? report_to_json(r).dump(2) + "\n" : report_csv_header() + "\n" + report_csv_row(r) + "\n");
            out.manifest(hash_of(kv), {cfg.seed});
        } else if (*sweep_cmd) {
            if (common.config.empty()) {
                if (!fs::exists(kDefaultCalibration)) {
                    throw UsageError(std::string("no --config and no calibration artifact at ") + kDefaultCalibration +
                                     "; run `harbor calibrate` first");
                }
                common.config = kDefaultCalibration;
            }
            auto kv = load_config(common.config, true);
            const SimConfig base = sim_config_from(*kv);
            const auto rates = parse_rate_list(rates_text);
            const auto seeds = seed_list(common.seed.value_or(1), n_seeds);
            const SweepResult r = serial ? sweep_serial(base, rates, seeds) : sweep_parallel(base, rates, seeds);
            std::ostringstream s;
            if (json) s << sweep_to_json(r).dump(2) << '\n';
            else write_sweep_csv(s, r);
            out.emit(json ? "sweep.json" : "sweep.csv", s.str());
            out.manifest(hash_of(kv), seeds);
        } else if (*calibrate_cmd) {
            auto kv = load_config(common.config, false);
            const SimConfig base = sim_config_or_default(kv);
            const auto seeds = seed_list(common.seed.value_or(101), cal_seeds);
            std::vector<std::uint64_t> train, test;
            for (std::uint64_t s = 1000; s < 1016; ++s) train.push_back(s);
            for (std::uint64_t s = 2000; s < 2010; ++s) test.push_back(s);
            CalibrationResult r = calibrate(base, seeds);
            r.predictor_mape = measure_predictor_mape(train, test);
            std::ostringstream grid;
            grid << "handling_seconds,van_mean,vessels_per_day,throughput_low,throughput_high,max_rel_error\n";
            for (const auto& p : r.evaluated) {
                grid << csv::number(p.handling_seconds) << ',' << p.van_mean << ',' << csv::number(p.vessels_per_day)
                     << ',' << csv::number(p.throughput_low) << ',' << csv::number(p.throughput_high) << ','
                     << csv::number(p.max_rel_error) << '\n';
            }
            out.emit("calibration.kv", calibration_artifact(r, seeds));
            if (out.to_dir()) out.emit("calibration_grid.csv", grid.str());
            out.manifest(hash_of(kv), seeds);
            std::cerr << "best: handling " << r.best.handling_seconds << " s/van, van mean " << r.best.van_mean
                      << ", " << r.best.vessels_per_day << " vessels/day, max rel error " << r.best.max_rel_error
                      << ", predictor MAPE " << r.predictor_mape << "%\n";
        } else if (*report_revenue) {
            RevenueOptions opt;
            opt.value_per_van = van_value;
            const auto rows = revenue_analysis(thr_without, thr_with, max_cranes, opt);
            std::ostringstream s;
            if (json) s << revenue_to_json(rows).dump(2) << '\n';
            else write_revenue_csv(s, rows);
            out.emit(json ? "revenue.json" : "revenue.csv", s.str());
            out.manifest(std::nullopt, {});
        } else if (*report_punct || *report_wait) {
            if (common.config.empty() && fs::exists(kDefaultCalibration)) common.config = kDefaultCalibration;
            auto kv = load_config(common.config, false);
            const SimConfig base = sim_config_or_default(kv);
            const auto seeds = seed_list(common.seed.value_or(1), n_seeds);
            const PairedRuns runs = paired_runs(base, report_rate, seeds);
            if (*report_punct) {
                const auto a = punctuality_stats(pooled_deviations(runs.without));
                const auto b = punctuality_stats(pooled_deviations(runs.with));
                std::ostringstream s;
                if (json) {
                    auto stats = [](const PunctualityStats& p) {
                        return nlohmann::json{{"mean_minutes", p.mean}, {"median_minutes", p.median},
                                              {"std_minutes", p.std}, {"n", p.n}};
                    };
                    s << nlohmann::json{{"WithoutPrediction", stats(a)}, {"WithPrediction", stats(b)},
                                        {"reduction_percent", 100.0 * (a.mean - b.mean) / a.mean}}
                             .dump(2)
                      << '\n';
                } else {
                    write_punctuality_csv(s, a, b);
                }
                out.emit(json ? "punctuality.json" : "punctuality.csv", s.str());
                std::cerr << "mean deviation " << a.mean << " -> " << b.mean << " min ("
                          << 100.0 * (a.mean - b.mean) / a.mean << "% reduction)\n";
            } else {
                const WaitingComparison c = waiting_time_report(pooled_waiting(runs.without), pooled_waiting(runs.with));
                std::ostringstream s;
                write_waiting_csv(s, c);
                out.emit("waiting.csv", s.str());
                if (out.to_dir()) {
                    std::ostringstream svg;
                    write_waiting_svg(svg, c);
                    out.emit("waiting.svg", svg.str());
                }
                std::cerr << "total waiting " << c.total_before << " -> " << c.total_after << " min ("
                          << c.reduction_percent << "% reduction)\n";
            }
            out.manifest(hash_of(kv), seeds);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
