#include "harbor/dataset.hpp"

#include <algorithm>
#include <exception>
#include <map>

namespace harbor {

DatasetOptions dataset_options_from(const KvConfig& kv) {
    DatasetOptions o;
    o.grid.half_extent_cells = static_cast<int>(kv.get_int("grid.half_extent_cells", o.grid.half_extent_cells));
    o.grid.cell_size_deg = kv.get_double("grid.cell_size_deg", o.grid.cell_size_deg);
    o.grid.t_steps = static_cast<int>(kv.get_int("grid.t_steps", o.grid.t_steps));
    o.grid.step_minutes = kv.get_double("grid.step_minutes", o.grid.step_minutes);
    o.grid.binary_occupancy = kv.get_bool("grid.binary_occupancy", o.grid.binary_occupancy);
    o.stride_minutes = kv.get_double("dataset.stride_minutes", o.stride_minutes);
    o.min_remaining_minutes = kv.get_double("dataset.min_remaining_minutes", o.min_remaining_minutes);
    validate(o.grid);
    if (!(o.stride_minutes > 0.0)) throw Error(ErrorCode::InvalidConfig, "must be positive", "dataset.stride_minutes");
    if (!(o.min_remaining_minutes >= 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "must be non-negative", "dataset.min_remaining_minutes");
    }
    return o;
}

namespace {

struct Task {
    std::size_t voyage = 0;
    std::size_t first = 0;  // window start within the vessel's trace
    std::size_t last = 0;   // prediction record (inclusive)
};

struct Prepared {
    std::vector<std::vector<AisRecord>> traces;  // per voyage
    std::vector<Instant> arrivals;
    std::vector<Task> tasks;
};

Prepared prepare(const Traffic& traffic, const DatasetOptions& opt) {
    validate(opt.grid);
    Prepared p;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < traffic.voyages.size(); ++i) index[traffic.voyages[i].vessel_id] = i;
    p.traces.resize(traffic.voyages.size());
    p.arrivals.resize(traffic.voyages.size());
    for (const auto& r : traffic.ais) {
        auto it = index.find(r.mmsi);
        if (it != index.end()) p.traces[it->second].push_back(r);
    }
    std::vector<bool> known(traffic.voyages.size(), false);
    for (const auto& o : traffic.outcomes) {
        auto it = index.find(o.vessel_id);
        if (it == index.end()) continue;
        p.arrivals[it->second] = o.actual_arrival;
        known[it->second] = true;
    }

    const double window = opt.grid.t_steps * opt.grid.step_minutes;
    for (std::size_t v = 0; v < p.traces.size(); ++v) {
        auto& trace = p.traces[v];
        if (trace.empty() || !known[v]) continue;
        std::stable_sort(trace.begin(), trace.end(),
                         [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
        const Instant start = trace.front().timestamp;
        double next_at = window;
        std::size_t first = 0;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            const double elapsed = minutes_between(start, trace[i].timestamp);
            if (elapsed < next_at) continue;
            if (minutes_between(trace[i].timestamp, p.arrivals[v]) < opt.min_remaining_minutes) break;
            while (minutes_between(trace[first].timestamp, trace[i].timestamp) >= window) ++first;
            p.tasks.push_back({v, first, i});
            next_at = elapsed + opt.stride_minutes;
        }
    }
    return p;
}

EtaExample run_task(const Traffic& traffic, const Prepared& p, const Task& task, const DatasetOptions& opt) {
    const auto& trace = p.traces[task.voyage];
    const std::span<const AisRecord> window(trace.data() + task.first, task.last - task.first + 1);
    const AisRecord& here = trace[task.last];
    const Voyage& voyage = traffic.voyages[task.voyage];

    const GridSample sample =
        build_grid_sequence(window, traffic.weather, opt.grid.centered_on(here.position), p.arrivals[task.voyage]);
    EtaExample ex;
    ex.vessel_id = voyage.vessel_id;
    ex.now = here.timestamp;
    ex.tensor = summarize_tensor(sample.tensor);
    ex.kinematics = summarize_kinematics(window, voyage.route, opt.grid.t_steps * opt.grid.step_minutes);
    ex.label_minutes = sample.label->remaining_minutes;
    return ex;
}

}  // namespace

std::vector<EtaExample> build_examples_serial(const Traffic& traffic, const DatasetOptions& options) {
    const Prepared p = prepare(traffic, options);
    std::vector<EtaExample> out;
    out.reserve(p.tasks.size());
    for (const auto& task : p.tasks) out.push_back(run_task(traffic, p, task, options));
    return out;
}

std::vector<EtaExample> build_examples_parallel(const Traffic& traffic, const DatasetOptions& options) {
    const Prepared p = prepare(traffic, options);
    std::vector<EtaExample> out(p.tasks.size());
    const auto n = static_cast<long long>(p.tasks.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = run_task(traffic, p, p.tasks[static_cast<std::size_t>(i)], options);
        } catch (...) {
#pragma omp critical(harbor_dataset_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

void fit_predictor(Predictor& predictor, std::span<const EtaExample> examples) {
    std::vector<TensorSummary> tensors;
    std::vector<KinematicSummary> kin;
    std::vector<double> labels;
    tensors.reserve(examples.size());
    kin.reserve(examples.size());
    labels.reserve(examples.size());
    for (const auto& e : examples) {
        tensors.push_back(e.tensor);
        kin.push_back(e.kinematics);
        labels.push_back(e.label_minutes);
    }
    predictor.fit(tensors, kin, labels);
}

MetricReport evaluate_predictor(const Predictor& predictor, std::span<const EtaExample> examples,
                                std::optional<DistanceBucket> bucket) {
    std::vector<double> predicted, actual;
    for (const auto& e : examples) {
        if (bucket && (e.kinematics.remaining_nm < bucket->min_nm || e.kinematics.remaining_nm >= bucket->max_nm)) {
            continue;
        }
        predicted.push_back(predictor.predict_minutes(e.tensor, e.kinematics));
        actual.push_back(e.label_minutes);
    }
    return evaluate(predicted, actual);
}

}  // namespace harbor
