#include "harbor/port_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>

#include "harbor/csv.hpp"
#include "harbor/rng.hpp"

namespace harbor {

namespace {

enum Stream : std::uint64_t { kScheduleStream = 11, kVesselStream = 12, kCraneStream = 13 };

constexpr double kMinutesPerDay = 1440.0;

}  // namespace

std::string to_string(Strategy s) {
    return s == Strategy::WithPrediction ? "WithPrediction" : "WithoutPrediction";
}

Strategy parse_strategy(const std::string& text) {
    if (text == "with" || text == "WithPrediction") return Strategy::WithPrediction;
    if (text == "without" || text == "WithoutPrediction") return Strategy::WithoutPrediction;
    throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + text + "' (with, without)", "strategy");
}

SimConfig sim_config_from(const KvConfig& kv) {
    SimConfig c;
    c.seed = static_cast<std::uint64_t>(kv.get_int("sim.seed", static_cast<long long>(c.seed)));
    c.rta_rate = kv.get_double("sim.rta_rate", c.rta_rate);
    c.delay.family = kv.get_string("sim.delay.family", c.delay.family);
    c.delay.mean_minutes = kv.get_double("sim.delay.mean_minutes", c.delay.mean_minutes);
    c.delay.sd_minutes = kv.get_double("sim.delay.sd_minutes", c.delay.sd_minutes);
    c.strategy = parse_strategy(kv.get_string("sim.strategy", to_string(c.strategy)));
    c.predictor_id = kv.get_string("sim.predictor_id", c.predictor_id);
    c.predictor_mape = kv.get_double("sim.predictor_mape", c.predictor_mape);
    c.n_berths = static_cast<int>(kv.get_int("sim.n_berths", c.n_berths));
    c.cranes_per_vessel = static_cast<int>(kv.get_int("sim.cranes_per_vessel", c.cranes_per_vessel));
    c.crane_pool = static_cast<int>(kv.get_int("sim.crane_pool", c.crane_pool));
    c.cranes_active_low = static_cast<int>(kv.get_int("sim.cranes_active_low", c.cranes_active_low));
    c.cranes_active_high = static_cast<int>(kv.get_int("sim.cranes_active_high", c.cranes_active_high));
    c.handling_seconds_per_van = kv.get_double("sim.handling_seconds_per_van", c.handling_seconds_per_van);
    c.horizon_days = kv.get_double("sim.horizon_days", c.horizon_days);
    c.vessels_per_day = kv.get_double("sim.vessels_per_day", c.vessels_per_day);
    c.van_min = static_cast<int>(kv.get_int("sim.van_min", c.van_min));
    c.van_max = static_cast<int>(kv.get_int("sim.van_max", c.van_max));
    c.leg_min_nm = kv.get_double("sim.leg_min_nm", c.leg_min_nm);
    c.leg_max_nm = kv.get_double("sim.leg_max_nm", c.leg_max_nm);
    c.speed_min_knots = kv.get_double("sim.speed_min_knots", c.speed_min_knots);
    c.speed_max_knots = kv.get_double("sim.speed_max_knots", c.speed_max_knots);
    c.rta_lead_min_hours = kv.get_double("sim.rta_lead_min_hours", c.rta_lead_min_hours);
    c.rta_lead_max_hours = kv.get_double("sim.rta_lead_max_hours", c.rta_lead_max_hours);
    c.emission_k_cubic = kv.get_double("sim.emission_k_cubic", c.emission_k_cubic);
    c.emission_hotel_rate = kv.get_double("sim.emission_hotel_rate", c.emission_hotel_rate);
    if (kv.has("sim.epoch")) c.epoch = parse_instant(kv.get_string("sim.epoch", ""));
    c.validate_plans = kv.get_bool("sim.validate_plans", c.validate_plans);
    validate(c);
    return c;
}

std::string sim_config_canonical(const SimConfig& c) {
    KvConfig kv;
    kv.set("sim.seed", std::to_string(c.seed));
    kv.set("sim.rta_rate", csv::number(c.rta_rate));
    kv.set("sim.delay.family", c.delay.family);
    kv.set("sim.delay.mean_minutes", csv::number(c.delay.mean_minutes));
    kv.set("sim.delay.sd_minutes", csv::number(c.delay.sd_minutes));
    kv.set("sim.strategy", to_string(c.strategy));
    kv.set("sim.predictor_id", c.predictor_id);
    kv.set("sim.predictor_mape", csv::number(c.predictor_mape));
    kv.set("sim.n_berths", std::to_string(c.n_berths));
    kv.set("sim.cranes_per_vessel", std::to_string(c.cranes_per_vessel));
    kv.set("sim.crane_pool", std::to_string(c.crane_pool));
    kv.set("sim.cranes_active_low", std::to_string(c.cranes_active_low));
    kv.set("sim.cranes_active_high", std::to_string(c.cranes_active_high));
    kv.set("sim.handling_seconds_per_van", csv::number(c.handling_seconds_per_van));
    kv.set("sim.horizon_days", csv::number(c.horizon_days));
    kv.set("sim.vessels_per_day", csv::number(c.vessels_per_day));
    kv.set("sim.van_min", std::to_string(c.van_min));
    kv.set("sim.van_max", std::to_string(c.van_max));
    kv.set("sim.leg_min_nm", csv::number(c.leg_min_nm));
    kv.set("sim.leg_max_nm", csv::number(c.leg_max_nm));
    kv.set("sim.speed_min_knots", csv::number(c.speed_min_knots));
    kv.set("sim.speed_max_knots", csv::number(c.speed_max_knots));
    kv.set("sim.rta_lead_min_hours", csv::number(c.rta_lead_min_hours));
    kv.set("sim.rta_lead_max_hours", csv::number(c.rta_lead_max_hours));
    kv.set("sim.emission_k_cubic", csv::number(c.emission_k_cubic));
    kv.set("sim.emission_hotel_rate", csv::number(c.emission_hotel_rate));
    kv.set("sim.epoch", format_instant_rfc3339(c.epoch));
    return kv.canonical();
}

void validate(const SimConfig& c) {
    auto bad = [](const std::string& field, const std::string& why) {
        throw Error(ErrorCode::InvalidConfig, field + " " + why, field);
    };
    if (!(c.rta_rate >= 0.0 && c.rta_rate <= 1.0)) bad("sim.rta_rate", "must be in [0, 1]");
    if (!(c.handling_seconds_per_van > 0.0)) bad("sim.handling_seconds_per_van", "must be positive");
    if (c.delay.family != "lognormal") bad("sim.delay.family", "must be lognormal");
    if (!(c.delay.mean_minutes > 0.0) || !(c.delay.sd_minutes >= 0.0)) bad("sim.delay", "needs mean > 0, sd >= 0");
    if (!(c.predictor_mape >= 0.0)) bad("sim.predictor_mape", "must be non-negative");
    if (c.n_berths < 1) bad("sim.n_berths", "must be at least 1");
    if (c.cranes_per_vessel < 1) bad("sim.cranes_per_vessel", "must be at least 1");
    if (c.cranes_active_low < c.cranes_per_vessel) bad("sim.cranes_active_low", "cannot serve a single vessel");
    if (c.cranes_active_high < c.cranes_active_low) bad("sim.cranes_active_high", "is below cranes_active_low");
    if (c.crane_pool < c.cranes_active_high) bad("sim.crane_pool", "is smaller than the active crane count");
    if (!(c.horizon_days > 0.0)) bad("sim.horizon_days", "must be positive");
    if (!(c.vessels_per_day > 0.0)) bad("sim.vessels_per_day", "must be positive");
    if (c.van_min < 1 || c.van_max < c.van_min) bad("sim.van_min", "needs 1 <= van_min <= van_max");
    if (!(c.leg_min_nm > 0.0) || c.leg_max_nm < c.leg_min_nm) bad("sim.leg_min_nm", "needs 0 < min <= max");
    if (!(c.speed_min_knots > 0.0) || c.speed_max_knots < c.speed_min_knots) {
        bad("sim.speed_min_knots", "needs 0 < min <= max");
    }
    if (!(c.rta_lead_min_hours >= 0.0) || c.rta_lead_max_hours < c.rta_lead_min_hours) {
        bad("sim.rta_lead_min_hours", "needs 0 <= min <= max");
    }
    if (!(c.emission_k_cubic >= 0.0) || !(c.emission_hotel_rate >= 0.0)) bad("sim.emission", "rates must be >= 0");
}

std::vector<SimVessel> generate_schedule(const SimConfig& cfg) {
    validate(cfg);
    Rng rng(derive_seed(cfg.seed, {kScheduleStream}));
    const double horizon = cfg.horizon_days * kMinutesPerDay;
    const double mean_gap = kMinutesPerDay / cfg.vessels_per_day;
    std::vector<SimVessel> out;
    double t = 0.0;
    while (true) {
        t += -std::log1p(-rng.uniform()) * mean_gap;
        if (t >= horizon) break;
        SimVessel v;
        char id[16];
        std::snprintf(id, sizeof id, "S%04zu", out.size() + 1);
        v.vessel_id = id;
        v.requested_arrival = std::round(t);
        v.van_count = static_cast<int>(rng.uniform_int(cfg.van_min, cfg.van_max));
        v.distance_nm = rng.uniform(cfg.leg_min_nm, cfg.leg_max_nm);
        v.speed_knots = rng.uniform(cfg.speed_min_knots, cfg.speed_max_knots);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Berth> sim_berths(const SimConfig& cfg) {
    std::vector<Berth> out;
    for (int b = 0; b < cfg.n_berths; ++b) {
        char id[16];
        std::snprintf(id, sizeof id, "B%02d", b + 1);
        out.push_back({id, cfg.cranes_per_vessel});
    }
    return out;
}

PlannerOptions sim_planner_options(const SimConfig& cfg) {
    PlannerOptions o;
    o.crane_pool = cfg.cranes_active_low;
    o.handling_rate = 3600.0 / cfg.handling_seconds_per_van;
    o.cranes_per_vessel = cfg.cranes_per_vessel;
    o.freeze_by_clock = false;
    return o;
}

InitialPlan plan_schedule(const SimConfig& cfg, std::span<const SimVessel> vessels) {
    std::vector<Voyage> voyages;
    voyages.reserve(vessels.size());
    for (const auto& v : vessels) {
        Voyage y;
        y.vessel_id = v.vessel_id;
        y.promised_eta = add_minutes(cfg.epoch, v.requested_arrival);
        y.departure = add_minutes(y.promised_eta, -v.distance_nm / v.speed_knots * 60.0);
        y.max_speed = v.speed_knots;
        y.van_count = v.van_count;
        voyages.push_back(std::move(y));
    }
    const auto berths = sim_berths(cfg);
    InitialPlan out{build_initial_plan(voyages, berths, sim_planner_options(cfg)), std::move(voyages)};
    // The port answers each request with a berthing time, which becomes the
    // ETA the vessel sails to.
    for (const auto& a : out.plan.assignments) out.plan.eta_map[a.vessel_id] = a.service_start;
    for (auto& v : out.voyages) v.promised_eta = out.plan.eta_map.at(v.vessel_id);
    return out;
}

PunctualityStats punctuality_stats(std::span<const double> deviations) {
    if (deviations.empty()) throw Error(ErrorCode::Empty, "no punctuality deviations");
    PunctualityStats s;
    s.n = deviations.size();
    double sum = 0.0;
    for (double d : deviations) sum += d;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double d : deviations) ss += (d - s.mean) * (d - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n));
    std::vector<double> sorted(deviations.begin(), deviations.end());
    std::sort(sorted.begin(), sorted.end());
    s.median = sorted[(s.n - 1) / 2];
    return s;
}

double emission_proxy(std::span<const Leg> legs, double waiting_minutes, double hotel_rate, double k_cubic) {
    double fuel = 0.0;
    for (const auto& leg : legs) {
        if (leg.distance_nm == 0.0) continue;
        if (!(leg.speed_knots > 0.0)) {
            throw Error(ErrorCode::ZeroSpeedLeg, "sailing leg of " + csv::number(leg.distance_nm) + " nm at zero speed");
        }
        fuel += k_cubic * leg.distance_nm * leg.speed_knots * leg.speed_knots;
    }
    return fuel + hotel_rate * waiting_minutes;
}

// ---------------------------------------------------------------------------
// Event loop
// ---------------------------------------------------------------------------

namespace {

enum class EventType {
    CraneShiftChange,
    ServiceComplete,
    VesselDeparture,
    RtaRealized,
    EtaUpdated,
    VesselArrival,
    BerthingStart,
};

struct Event {
    double time = 0.0;
    EventType type = EventType::VesselDeparture;
    std::uint64_t seq = 0;
    int vessel = -1;
    int berth = -1;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        if (a.type != b.type) return static_cast<int>(a.type) > static_cast<int>(b.type);
        return a.seq > b.seq;
    }
};

class EventQueue {
public:
    void push(double time, EventType type, int vessel = -1, int berth = -1) {
        heap_.push({time, type, next_seq_++, vessel, berth});
    }
    bool empty() const { return heap_.empty(); }
    Event pop() {
        Event e = heap_.top();
        heap_.pop();
        return e;
    }

private:
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

struct VesselState {
    const SimVessel* spec = nullptr;
    double promised = 0.0;
    double duration = 0.0;  // minutes of crane work
    bool rta = false;
    double delay = 0.0;
    double detect_at = 0.0;
    double z_predict = 0.0;
    double believed = 0.0;
    double actual_arrival = 0.0;
    bool arrived = false;
    bool berthing = false;
    bool started = false;
    bool done = false;
    double start = -1.0, end = -1.0, charge_start = -1.0;
    double planned_start = 0.0;  // belief when the vessel was called in
    int berth = -1;
};

class Simulation {
public:
    Simulation(const SimConfig& cfg, const BerthPlan& plan0) : cfg_(cfg), plan_(plan0) {
        if (cfg.vessels.empty()) throw Error(ErrorCode::EmptySchedule, "no vessels to simulate");
        const auto violations = plan_violations(plan0);
        if (!violations.empty()) throw Error(ErrorCode::InfeasiblePlan, "initial plan: " + violations.front());
        for (std::size_t b = 0; b < plan0.berths.size(); ++b) berth_index_[plan0.berths[b].berth_id] = static_cast<int>(b);
        plan_.options.freeze_by_clock = false;

        const LognormalParams delay = LognormalParams::from_moments(cfg.delay.mean_minutes, cfg.delay.sd_minutes);
        // A zero-mean normal relative error with this spread has the configured MAPE.
        sigma_rel_ = cfg.predictor_mape / 100.0 * std::sqrt(kPi / 2.0);
        remaining_ = static_cast<long long>(cfg.vessels.size());

        vessels_.resize(cfg.vessels.size());
        for (std::size_t i = 0; i < cfg.vessels.size(); ++i) {
            const SimVessel& sv = cfg.vessels[i];
            VesselState& v = vessels_[i];
            v.spec = &sv;
            auto eta = plan0.eta_map.find(sv.vessel_id);
            if (eta == plan0.eta_map.end() || !plan0.find(sv.vessel_id)) {
                throw Error(ErrorCode::InfeasiblePlan, sv.vessel_id + " is not in the initial plan");
            }
            index_[sv.vessel_id] = static_cast<int>(i);
            v.promised = to_minutes(eta->second);
            v.believed = v.promised;
            v.duration = sv.van_count * cfg.handling_seconds_per_van / cfg.cranes_per_vessel / 60.0;

            // Fixed draw order per vessel, so RTA sets are nested across rates.
            Rng rng(derive_seed(cfg.seed, {kVesselStream, static_cast<std::uint64_t>(i)}));
            const double u_rta = rng.uniform();
            const double z_delay = rng.normal();
            const double u_lead = rng.uniform();
            v.z_predict = rng.normal();

            const double sail = sv.distance_nm / sv.speed_knots * 60.0;
            v.rta = u_rta < cfg.rta_rate;
            v.delay = v.rta ? delay.sample(z_delay) : 0.0;
            const double lead =
                std::min(sail, 60.0 * (cfg.rta_lead_min_hours +
                                       u_lead * (cfg.rta_lead_max_hours - cfg.rta_lead_min_hours)));
            v.detect_at = v.promised - lead;
            v.actual_arrival = v.promised + v.delay;

            queue_.push(v.promised - sail, EventType::VesselDeparture, static_cast<int>(i));
            if (v.rta) queue_.push(v.detect_at, EventType::RtaRealized, static_cast<int>(i));
            queue_.push(v.actual_arrival, EventType::VesselArrival, static_cast<int>(i));
        }
        for (const auto& a : plan0.assignments) {
            if (!index_.count(a.vessel_id)) {
                throw Error(ErrorCode::InfeasiblePlan, a.vessel_id + " is planned but not scheduled");
            }
        }

        Rng crane_rng(derive_seed(cfg.seed, {kCraneStream}));
        first_day_high_ = crane_rng.uniform() < 0.5;
        berth_busy_.assign(plan0.berths.size(), -1);
        berth_free_since_.assign(plan0.berths.size(), -std::numeric_limits<double>::infinity());
        rebuild_queues();

        double first = std::numeric_limits<double>::infinity();
        for (const auto& v : vessels_) first = std::min(first, v.promised - v.spec->distance_nm / v.spec->speed_knots * 60.0);
        day_ = static_cast<long long>(std::floor(std::min(0.0, first) / kMinutesPerDay));
        active_cranes_ = cranes_on_day(day_);
        queue_.push(static_cast<double>(day_ + 1) * kMinutesPerDay, EventType::CraneShiftChange);
    }

    SimReport run() {
        while (!queue_.empty()) {
            const Event e = queue_.pop();
            now_ = e.time;
            handle(e);
            dispatch();
        }
        return report();
    }

private:
    double to_minutes(Instant t) const { return minutes_between(cfg_.epoch, t); }
    Instant to_instant(double m) const { return add_minutes(cfg_.epoch, m); }

    int cranes_on_day(long long day) const {
        const bool high = ((day % 2 + 2) % 2 == 0) == first_day_high_;
        return high ? cfg_.cranes_active_high : cfg_.cranes_active_low;
    }

    void handle(const Event& e) {
        switch (e.type) {
            case EventType::CraneShiftChange:
                ++day_;
                active_cranes_ = cranes_on_day(day_);
                if (remaining_ > 0) queue_.push(static_cast<double>(day_ + 1) * kMinutesPerDay, EventType::CraneShiftChange);
                break;
            case EventType::VesselDeparture:
                break;
            case EventType::RtaRealized:
                if (cfg_.strategy == Strategy::WithPrediction) queue_.push(now_, EventType::EtaUpdated, e.vessel);
                break;
            case EventType::EtaUpdated:
                update_eta(e.vessel);
                break;
            case EventType::VesselArrival: {
                VesselState& v = vessels_[e.vessel];
                v.arrived = true;
                if (cfg_.strategy == Strategy::WithPrediction) plan_.eta_map[v.spec->vessel_id] = to_instant(now_);
                break;
            }
            case EventType::BerthingStart:
                start_service(e.vessel, e.berth);
                break;
            case EventType::ServiceComplete: {
                VesselState& v = vessels_[e.vessel];
                v.done = true;
                --remaining_;
                berth_busy_[v.berth] = -1;
                berth_free_since_[v.berth] = now_;
                cranes_in_use_ -= cfg_.cranes_per_vessel;
                break;
            }
        }
    }

    // Oracle-with-noise prediction: the remaining time to arrival, scaled by a
    // relative error whose mean absolute value is the configured MAPE.
    void update_eta(int i) {
        VesselState& v = vessels_[i];
        const double remaining = v.actual_arrival - now_;
        const double predicted = now_ + std::max(0.0, remaining * (1.0 + sigma_rel_ * v.z_predict));
        v.believed = predicted;

        for (const auto& w : vessels_) {
            if (!w.started) continue;
            sync_started(w);
        }
        plan_ = advance_to(plan_, to_instant(now_));
        plan_ = replan_on_eta_update(plan_, v.spec->vessel_id, to_instant(predicted), ReplanMode::Lenient);
        ++replans_;
        if (cfg_.validate_plans) validate_plan(plan_);
        rebuild_queues();
    }

    void sync_started(const VesselState& w) {
        const std::string& id = w.spec->vessel_id;
        if (plan_.started.count(id)) return;
        for (auto& a : plan_.assignments) {
            if (a.vessel_id != id) continue;
            const auto length = a.service_end - a.service_start;
            a.berth_id = plan_.berths[w.berth].berth_id;
            a.service_start = to_instant(w.start);
            a.service_end = a.service_start + length;
        }
        plan_.started.insert(id);
    }

    void rebuild_queues() {
        berth_queue_.assign(plan_.berths.size(), {});
        for (const auto& a : plan_.assignments) {
            const int i = index_.at(a.vessel_id);
            if (vessels_[i].started || vessels_[i].berthing) continue;
            berth_queue_[berth_index_.at(a.berth_id)].push_back({to_minutes(a.service_start), i});
        }
        for (auto& q : berth_queue_) std::sort(q.begin(), q.end());
    }

    void dispatch() {
        for (std::size_t b = 0; b < berth_queue_.size(); ++b) {
            if (berth_busy_[b] != -1 || berth_queue_[b].empty()) continue;
            const auto [planned, i] = berth_queue_[b].front();
            VesselState& v = vessels_[i];
            if (!v.arrived || v.berthing) continue;
            if (cranes_in_use_ + cfg_.cranes_per_vessel > active_cranes_) continue;
            v.berthing = true;
            v.planned_start = planned;
            berth_busy_[b] = i;
            cranes_in_use_ += cfg_.cranes_per_vessel;
            queue_.push(now_, EventType::BerthingStart, i, static_cast<int>(b));
        }
    }

    void start_service(int i, int b) {
        VesselState& v = vessels_[i];
        auto& q = berth_queue_[b];
        q.erase(std::remove_if(q.begin(), q.end(), [i](const auto& entry) { return entry.second == i; }), q.end());
        v.started = true;
        v.berth = b;
        v.start = now_;
        v.end = now_ + v.duration;
        // Cranes are held for the vessel from its planned slot (or from when
        // the berth emptied, if later) until it actually berths.
        v.charge_start = std::min(v.start, std::max(v.planned_start, berth_free_since_[b]));
        queue_.push(v.end, EventType::ServiceComplete, i);
    }

    SimReport report() const {
        SimReport r;
        r.seed = cfg_.seed;
        r.strategy = cfg_.strategy;
        r.rta_rate = cfg_.rta_rate;
        r.config_echo = sim_config_canonical(cfg_);
        r.replans = replans_;
        const double horizon = cfg_.horizon_days * kMinutesPerDay;

        double waiting = 0.0;
        std::vector<Leg> legs;
        for (const auto& v : vessels_) {
            VesselOutcome o;
            o.vessel_id = v.spec->vessel_id;
            o.rta = v.rta;
            o.delay_minutes = v.delay;
            o.promised_eta = v.promised;
            o.believed_eta = v.believed;
            o.actual_arrival = v.actual_arrival;
            o.service_start = v.start;
            o.service_end = v.end;
            o.charge_start = v.charge_start;
            if (v.berth >= 0) o.berth_id = plan_.berths[v.berth].berth_id;
            o.van_count = v.spec->van_count;
            o.completed = v.end <= horizon;
            o.anchorage_minutes = v.start - v.actual_arrival;
            r.vessels.push_back(o);

            r.vans_scheduled += v.spec->van_count;
            if (o.completed) {
                r.vans_handled += v.spec->van_count;
                r.charged_crane_hours += cfg_.cranes_per_vessel * (v.end - v.charge_start) / 60.0;
                ++r.vessels_completed;
            } else {
                ++r.vessels_backlog;
            }
            if (v.rta) {
                ++r.rta_count;
                r.punctuality_deviations.push_back(v.actual_arrival - v.believed);
            }
            waiting += o.anchorage_minutes;
            legs.push_back({v.spec->distance_nm, v.spec->speed_knots});
        }
        r.total_waiting_minutes = waiting;
        r.emission_proxy = emission_proxy(legs, waiting, cfg_.emission_hotel_rate, cfg_.emission_k_cubic);
        if (r.charged_crane_hours > 0.0) {
            r.throughput_vans_per_crane_hour = static_cast<double>(r.vans_handled) / r.charged_crane_hours;
            r.effective_seconds_per_van = 3600.0 / r.throughput_vans_per_crane_hour;
        }
        if (!r.punctuality_deviations.empty()) r.punctuality = punctuality_stats(r.punctuality_deviations);
        return r;
    }

    const SimConfig& cfg_;
    BerthPlan plan_;
    EventQueue queue_;
    std::vector<VesselState> vessels_;
    std::map<std::string, int> index_;
    std::map<std::string, int> berth_index_;
    std::vector<std::vector<std::pair<double, int>>> berth_queue_;
    std::vector<int> berth_busy_;
    std::vector<double> berth_free_since_;
    double now_ = 0.0;
    double sigma_rel_ = 0.0;
    long long day_ = 0;
    bool first_day_high_ = false;
    int active_cranes_ = 0;
    int cranes_in_use_ = 0;
    int replans_ = 0;
    long long remaining_ = 0;
};

}  // namespace

SimReport run_simulation(const SimConfig& cfg, const BerthPlan& plan0) {
    validate(cfg);
    Simulation sim(cfg, plan0);
    return sim.run();
}

SimReport run_simulation(const SimConfig& cfg) {
    SimConfig c = cfg;
    if (c.vessels.empty()) c.vessels = generate_schedule(c);
    if (c.vessels.empty()) throw Error(ErrorCode::EmptySchedule, "schedule generated no vessels");
    const InitialPlan p = plan_schedule(c, c.vessels);
    return run_simulation(c, p.plan);
}

// ---------------------------------------------------------------------------
// Serialisation
// ---------------------------------------------------------------------------

nlohmann::json report_to_json(const SimReport& r) {
    nlohmann::json j;
    j["seed"] = r.seed;
    j["strategy"] = to_string(r.strategy);
    j["rta_rate"] = r.rta_rate;
    j["config_hash"] = hex64(fnv1a64(r.config_echo));
    j["config"] = r.config_echo;
    j["throughput_vans_per_crane_hour"] = r.throughput_vans_per_crane_hour;
    j["effective_seconds_per_van"] = r.effective_seconds_per_van;
    j["charged_crane_hours"] = r.charged_crane_hours;
    j["vans_handled"] = r.vans_handled;
    j["vans_scheduled"] = r.vans_scheduled;
    j["vessels_completed"] = r.vessels_completed;
    j["vessels_backlog"] = r.vessels_backlog;
    j["rta_count"] = r.rta_count;
    j["replans"] = r.replans;
    if (r.punctuality) {
        j["punctuality"] = {{"mean", r.punctuality->mean},
                            {"median", r.punctuality->median},
                            {"std", r.punctuality->std},
                            {"n", r.punctuality->n}};
    } else {
        j["punctuality"] = nullptr;
    }
    j["total_waiting_minutes"] = r.total_waiting_minutes;
    j["emission_proxy"] = r.emission_proxy;
    j["vessels"] = nlohmann::json::array();
    for (const auto& v : r.vessels) {
        j["vessels"].push_back({{"vessel", v.vessel_id},
                                {"rta", v.rta},
                                {"delay_minutes", v.delay_minutes},
                                {"promised_eta", v.promised_eta},
                                {"believed_eta", v.believed_eta},
                                {"actual_arrival", v.actual_arrival},
                                {"service_start", v.service_start},
                                {"service_end", v.service_end},
                                {"charge_start", v.charge_start},
                                {"berth", v.berth_id},
                                {"vans", v.van_count},
                                {"completed", v.completed},
                                {"anchorage_minutes", v.anchorage_minutes}});
    }
    return j;
}

std::string report_csv_header() {
    return "seed,strategy,rta_rate,throughput_vans_per_crane_hour,effective_seconds_per_van,vans_handled,"
           "vans_scheduled,vessels_completed,vessels_backlog,rta_count,replans,punctuality_mean,punctuality_median,"
           "punctuality_std,total_waiting_minutes,emission_proxy";
}

std::string report_csv_row(const SimReport& r) {
    std::ostringstream out;
    out << r.seed << ',' << to_string(r.strategy) << ',' << csv::number(r.rta_rate) << ','
        << csv::number(r.throughput_vans_per_crane_hour) << ',' << csv::number(r.effective_seconds_per_van) << ','
        << r.vans_handled << ',' << r.vans_scheduled << ',' << r.vessels_completed << ',' << r.vessels_backlog << ','
        << r.rta_count << ',' << r.replans << ',';
    if (r.punctuality) {
        out << csv::number(r.punctuality->mean) << ',' << csv::number(r.punctuality->median) << ','
            << csv::number(r.punctuality->std);
    } else {
        out << ",,";
    }
    out << ',' << csv::number(r.total_waiting_minutes) << ',' << csv::number(r.emission_proxy);
    return out.str();
}

}  // namespace harbor
