#include "harbor/berth_planner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace harbor {

PlannerOptions planner_options_from(const KvConfig& kv) {
    PlannerOptions o;
    o.crane_pool = static_cast<int>(kv.get_int("planner.crane_pool", o.crane_pool));
    o.handling_rate = kv.get_double("planner.handling_rate", o.handling_rate);
    o.cranes_per_vessel = static_cast<int>(kv.get_int("planner.cranes_per_vessel", o.cranes_per_vessel));
    o.freeze_by_clock = kv.get_bool("planner.freeze_by_clock", o.freeze_by_clock);
    if (kv.has("planner.horizon")) o.horizon = parse_instant(kv.get_string("planner.horizon", ""));
    if (o.crane_pool < 1) throw Error(ErrorCode::InvalidConfig, "need at least one crane", "planner.crane_pool");
    if (!(o.handling_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "must be positive", "planner.handling_rate");
    if (o.cranes_per_vessel < 1) throw Error(ErrorCode::InvalidConfig, "must be at least 1", "planner.cranes_per_vessel");
    return o;
}

namespace {

struct Pending {
    std::string vessel_id;
    Instant eta{};
    int vans = 0;
};

bool eta_order(const Pending& a, const Pending& b) {
    return std::tie(a.eta, a.vessel_id) < std::tie(b.eta, b.vessel_id);
}

void check_inputs(std::span<const Berth> berths, const PlannerOptions& o) {
    if (berths.empty()) throw Error(ErrorCode::NoBerths, "at least one berth is required");
    std::set<std::string> ids;
    for (const auto& b : berths) {
        if (b.crane_slots < 1) throw Error(ErrorCode::InvalidConfig, "berth " + b.berth_id + " has no crane slots");
        if (!ids.insert(b.berth_id).second) throw Error(ErrorCode::InvalidConfig, "duplicate berth " + b.berth_id);
    }
    if (o.crane_pool < 1) throw Error(ErrorCode::InvalidConfig, "crane pool must be at least 1", "crane_pool");
    if (!(o.handling_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "handling rate must be positive");
    if (o.cranes_per_vessel < 1) throw Error(ErrorCode::InvalidConfig, "cranes per vessel must be at least 1");
}

// Places vessels one at a time behind whatever is already on the quay.
class Scheduler {
public:
    Scheduler(std::span<const Berth> berths, const PlannerOptions& o, std::optional<Instant> now)
        : berths_(berths), o_(o), now_(now), free_(berths.size(), Instant::min()) {
        int most = 0;
        for (const auto& b : berths) most += cranes_at(b);
        pool_binds_ = most > o.crane_pool;
    }

    int cranes_at(const Berth& b) const { return std::min({o_.cranes_per_vessel, b.crane_slots, o_.crane_pool}); }

    void occupy(const BerthAssignment& a) {
        for (std::size_t b = 0; b < berths_.size(); ++b) {
            if (berths_[b].berth_id == a.berth_id) free_[b] = std::max(free_[b], a.service_end);
        }
        placed_.push_back(a);
    }

    Instant earliest_on(std::size_t b, const Pending& p, std::chrono::microseconds& length, int& cranes) const {
        cranes = cranes_at(berths_[b]);
        length = std::chrono::microseconds{std::llround(p.vans / (cranes * o_.handling_rate) * 3600e6)};
        if (length.count() < 1) length = std::chrono::microseconds{1};
        Instant start = std::max(p.eta, free_[b]);
        if (now_) start = std::max(start, *now_);
        return pool_binds_ ? fit_pool(start, length, cranes) : start;
    }

    /// Earliest start over all berths; ties go to `keep` (the vessel's
    /// current berth) and then to the lower index.
    BerthAssignment place(const Pending& p, std::optional<std::size_t> keep = std::nullopt) {
        std::size_t best = 0;
        Instant best_start = Instant::max();
        std::chrono::microseconds best_len{};
        int best_cranes = 0;
        for (std::size_t b = 0; b < berths_.size(); ++b) {
            std::chrono::microseconds len{};
            int cranes = 0;
            const Instant s = earliest_on(b, p, len, cranes);
            if (s < best_start || (s == best_start && keep == b)) {
                best = b;
                best_start = s;
                best_len = len;
                best_cranes = cranes;
            }
        }
        return place_on(best, p, best_start, best_len, best_cranes);
    }

    BerthAssignment place_on(std::size_t b, const Pending& p) {
        std::chrono::microseconds len{};
        int cranes = 0;
        const Instant s = earliest_on(b, p, len, cranes);
        return place_on(b, p, s, len, cranes);
    }

    const std::vector<BerthAssignment>& placed() const { return placed_; }

private:
    BerthAssignment place_on(std::size_t b, const Pending& p, Instant start, std::chrono::microseconds len,
                             int cranes) {
        if (o_.horizon && start > *o_.horizon) {
            throw Error(ErrorCode::InfeasibleVessel, p.vessel_id + " cannot start before the planning horizon");
        }
        BerthAssignment a{p.vessel_id, berths_[b].berth_id, start, start + len, cranes};
        occupy(a);
        return a;
    }

    int usage_over(Instant from, Instant to) const {
        // Peak crane use inside [from, to): usage only rises at a start.
        int peak = 0;
        std::vector<Instant> probes{from};
        for (const auto& a : placed_) {
            if (a.service_start > from && a.service_start < to) probes.push_back(a.service_start);
        }
        for (Instant t : probes) {
            int used = 0;
            for (const auto& a : placed_) {
                if (a.service_start <= t && t < a.service_end) used += a.cranes_assigned;
            }
            peak = std::max(peak, used);
        }
        return peak;
    }

    Instant fit_pool(Instant start, std::chrono::microseconds len, int cranes) const {
        std::vector<Instant> candidates{start};
        for (const auto& a : placed_) {
            if (a.service_end > start) candidates.push_back(a.service_end);
        }
        std::sort(candidates.begin(), candidates.end());
        for (Instant t : candidates) {
            if (usage_over(t, t + len) + cranes <= o_.crane_pool) return t;
        }
        return candidates.back();  // unreachable: after every end the quay is empty
    }

    std::span<const Berth> berths_;
    const PlannerOptions& o_;
    std::optional<Instant> now_;
    std::vector<Instant> free_;
    std::vector<BerthAssignment> placed_;
    bool pool_binds_ = false;
};

void sort_assignments(std::vector<BerthAssignment>& v) {
    std::sort(v.begin(), v.end(), [](const BerthAssignment& a, const BerthAssignment& b) {
        return std::tie(a.service_start, a.berth_id, a.vessel_id) < std::tie(b.service_start, b.berth_id, b.vessel_id);
    });
}

std::vector<Pending> pending_from(std::span<const Voyage> voyages) {
    std::vector<Pending> out;
    std::set<std::string> seen;
    for (const auto& v : voyages) {
        if (!seen.insert(v.vessel_id).second) {
            throw Error(ErrorCode::InvalidConfig, "duplicate vessel " + v.vessel_id, "vessel_id");
        }
        if (v.van_count < 0) throw Error(ErrorCode::OutOfRange, "negative van count", "van_count");
        out.push_back({v.vessel_id, v.promised_eta, v.van_count});
    }
    std::sort(out.begin(), out.end(), eta_order);
    return out;
}

BerthPlan empty_plan(std::span<const Voyage> voyages, std::span<const Berth> berths, const PlannerOptions& o) {
    BerthPlan plan;
    plan.berths.assign(berths.begin(), berths.end());
    plan.options = o;
    for (const auto& v : voyages) {
        plan.eta_map[v.vessel_id] = v.promised_eta;
        plan.van_counts[v.vessel_id] = v.van_count;
    }
    return plan;
}

// Keeps frozen services and list-schedules everything else.
BerthPlan rebuild(BerthPlan plan) {
    std::vector<BerthAssignment> frozen;
    std::set<std::string> frozen_ids;
    for (const auto& a : plan.assignments) {
        if (plan.is_started(a)) {
            frozen.push_back(a);
            frozen_ids.insert(a.vessel_id);
        }
    }
    std::vector<Pending> queue;
    for (const auto& [id, eta] : plan.eta_map) {
        const int vans = plan.van_counts.count(id) ? plan.van_counts.at(id) : 0;
        if (vans > 0 && !frozen_ids.count(id)) queue.push_back({id, eta, vans});
    }
    std::sort(queue.begin(), queue.end(), eta_order);

    std::map<std::string, std::size_t> current;
    for (const auto& a : plan.assignments) {
        for (std::size_t b = 0; b < plan.berths.size(); ++b) {
            if (plan.berths[b].berth_id == a.berth_id) current[a.vessel_id] = b;
        }
    }

    Scheduler s(plan.berths, plan.options, plan.now);
    for (const auto& a : frozen) s.occupy(a);
    for (const auto& p : queue) {
        auto it = current.find(p.vessel_id);
        s.place(p, it == current.end() ? std::nullopt : std::optional<std::size_t>(it->second));
    }
    plan.assignments = s.placed();
    sort_assignments(plan.assignments);
    return plan;
}

}  // namespace

const BerthAssignment* BerthPlan::find(const std::string& vessel_id) const {
    for (const auto& a : assignments) {
        if (a.vessel_id == vessel_id) return &a;
    }
    return nullptr;
}

bool BerthPlan::is_started(const BerthAssignment& a) const {
    return started.count(a.vessel_id) > 0 || (options.freeze_by_clock && now && a.service_start < *now);
}

BerthPlan build_initial_plan(std::span<const Voyage> voyages, std::span<const Berth> berths,
                             const PlannerOptions& options) {
    check_inputs(berths, options);
    pending_from(voyages);  // duplicate and range checks
    return rebuild(empty_plan(voyages, berths, options));
}

BerthPlan replan_on_eta_update(const BerthPlan& plan, const std::string& vessel_id, Instant new_eta,
                               ReplanMode mode) {
    if (!plan.eta_map.count(vessel_id)) throw Error(ErrorCode::UnknownVessel, vessel_id, "vessel_id");
    BerthPlan next = plan;
    next.plan_version = plan.plan_version + 1;
    if (plan.now && new_eta < *plan.now) {
        if (mode == ReplanMode::Strict) {
            throw Error(ErrorCode::PastEta, vessel_id + " ETA " + format_instant_rfc3339(new_eta) +
                                                " is before the plan clock " + format_instant_rfc3339(*plan.now));
        }
        next.warnings.push_back(vessel_id + ": ETA " + format_instant_rfc3339(new_eta) + " clamped to " +
                                format_instant_rfc3339(*plan.now));
        new_eta = *plan.now;
    }
    const BerthAssignment* current = plan.find(vessel_id);
    if (current && plan.is_started(*current)) {
        next.warnings.push_back(vessel_id + ": service already started, ETA update ignored");
        return next;
    }
    next.eta_map[vessel_id] = new_eta;
    return rebuild(std::move(next));
}

BerthPlan advance_to(const BerthPlan& plan, Instant now) {
    BerthPlan next = plan;
    next.now = plan.now ? std::max(*plan.now, now) : now;
    return next;
}

BerthPlan mark_started(const BerthPlan& plan, const std::string& vessel_id, Instant actual_start) {
    const BerthAssignment* current = plan.find(vessel_id);
    if (!current) throw Error(ErrorCode::UnknownVessel, vessel_id + " has no assignment", "vessel_id");
    BerthPlan next = plan;
    if (next.eta_map.at(vessel_id) > actual_start) next.eta_map[vessel_id] = actual_start;
    for (auto& a : next.assignments) {
        if (a.vessel_id != vessel_id) continue;
        const auto length = a.service_end - a.service_start;
        a.service_start = actual_start;
        a.service_end = actual_start + length;
    }
    next.started.insert(vessel_id);
    next.now = next.now ? std::max(*next.now, actual_start) : actual_start;
    return rebuild(std::move(next));
}

BerthPlan brute_force_optimal(std::span<const Voyage> voyages, std::span<const Berth> berths,
                              const PlannerOptions& options) {
    check_inputs(berths, options);
    auto all = pending_from(voyages);
    std::vector<Pending> work;
    for (const auto& p : all) {
        if (p.vans > 0) work.push_back(p);
    }
    if (work.size() > 8 || berths.size() > 2) {
        throw Error(ErrorCode::TooLarge, std::to_string(work.size()) + " vessels on " + std::to_string(berths.size()) +
                                             " berths exceeds the 8 x 2 enumeration limit");
    }

    BerthPlan best = empty_plan(voyages, berths, options);
    const std::size_t n = work.size();
    if (n == 0) return best;

    std::size_t choices = 1;
    for (std::size_t i = 0; i < n; ++i) choices *= berths.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    double best_wait = std::numeric_limits<double>::infinity();
    std::vector<BerthAssignment> best_assignments;
    do {
        for (std::size_t code = 0; code < choices; ++code) {
            Scheduler s(berths, options, std::nullopt);
            double wait = 0.0;
            std::size_t c = code;
            try {
                for (std::size_t k = 0; k < n; ++k) {
                    const Pending& p = work[order[k]];
                    const auto a = s.place_on(c % berths.size(), p);
                    c /= berths.size();
                    wait += minutes_between(p.eta, a.service_start);
                    if (wait >= best_wait) break;
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::InfeasibleVessel) throw;
                continue;
            }
            if (wait < best_wait && s.placed().size() == n) {
                best_wait = wait;
                best_assignments = s.placed();
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));

    if (best_assignments.empty()) throw Error(ErrorCode::InfeasibleVessel, "no order fits inside the horizon");
    best.assignments = std::move(best_assignments);
    sort_assignments(best.assignments);
    return best;
}

double total_waiting_minutes(const BerthPlan& plan) {
    double total = 0.0;
    for (const auto& a : plan.assignments) total += minutes_between(plan.eta_map.at(a.vessel_id), a.service_start);
    return total;
}

std::vector<std::string> plan_violations(const BerthPlan& plan) {
    std::vector<std::string> out;
    std::map<std::string, int> slots;
    for (const auto& b : plan.berths) slots[b.berth_id] = b.crane_slots;

    std::set<std::string> seen;
    for (const auto& a : plan.assignments) {
        const std::string who = a.vessel_id + "@" + a.berth_id;
        if (!seen.insert(a.vessel_id).second) out.push_back(a.vessel_id + " is assigned more than once");
        if (!(a.service_start < a.service_end)) out.push_back(who + " has an empty service window");
        if (a.cranes_assigned < 1) out.push_back(who + " has no cranes");
        auto s = slots.find(a.berth_id);
        if (s == slots.end()) {
            out.push_back(who + " names an unknown berth");
        } else if (a.cranes_assigned > s->second) {
            out.push_back(who + " exceeds the berth's crane slots");
        }
        auto eta = plan.eta_map.find(a.vessel_id);
        if (eta == plan.eta_map.end()) {
            out.push_back(who + " has no believed ETA");
        } else if (a.service_start < eta->second) {
            out.push_back(who + " starts before its ETA");
        }
    }
    for (const auto& [id, vans] : plan.van_counts) {
        if (vans > 0 && !seen.count(id)) out.push_back(id + " has vans but no assignment");
    }

    std::map<std::string, std::vector<const BerthAssignment*>> by_berth;
    for (const auto& a : plan.assignments) by_berth[a.berth_id].push_back(&a);
    for (auto& [berth, list] : by_berth) {
        std::sort(list.begin(), list.end(), [](auto* x, auto* y) { return x->service_start < y->service_start; });
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i]->service_start < list[i - 1]->service_end) {
                out.push_back(list[i - 1]->vessel_id + " and " + list[i]->vessel_id + " overlap at " + berth);
            }
        }
    }

    for (const auto& a : plan.assignments) {
        int used = 0;
        for (const auto& b : plan.assignments) {
            if (b.service_start <= a.service_start && a.service_start < b.service_end) used += b.cranes_assigned;
        }
        if (used > plan.options.crane_pool) {
            out.push_back("crane pool exceeded at " + format_instant_rfc3339(a.service_start));
            break;
        }
    }
    return out;
}

void validate_plan(const BerthPlan& plan) {
    const auto v = plan_violations(plan);
    if (v.empty()) return;
    std::string msg = v.front();
    if (v.size() > 1) msg += " (+" + std::to_string(v.size() - 1) + " more)";
    throw Error(ErrorCode::InfeasiblePlan, msg);
}

nlohmann::json plan_to_json(const BerthPlan& plan) {
    nlohmann::json j;
    j["plan_version"] = plan.plan_version;
    j["now"] = plan.now ? nlohmann::json(format_instant_rfc3339(*plan.now)) : nlohmann::json(nullptr);
    j["crane_pool"] = plan.options.crane_pool;
    j["handling_rate"] = plan.options.handling_rate;
    j["cranes_per_vessel"] = plan.options.cranes_per_vessel;
    j["freeze_by_clock"] = plan.options.freeze_by_clock;
    j["berths"] = nlohmann::json::array();
    for (const auto& b : plan.berths) j["berths"].push_back({{"berth", b.berth_id}, {"crane_slots", b.crane_slots}});
    j["vessels"] = nlohmann::json::array();
    for (const auto& [id, eta] : plan.eta_map) {
        const int vans = plan.van_counts.count(id) ? plan.van_counts.at(id) : 0;
        j["vessels"].push_back({{"vessel", id}, {"eta", format_instant_rfc3339(eta)}, {"vans", vans},
                                {"started", plan.started.count(id) > 0}});
    }
    j["assignments"] = nlohmann::json::array();
    for (const auto& a : plan.assignments) {
        j["assignments"].push_back({{"vessel", a.vessel_id},
                                    {"berth", a.berth_id},
                                    {"start", format_instant_rfc3339(a.service_start)},
                                    {"end", format_instant_rfc3339(a.service_end)},
                                    {"cranes", a.cranes_assigned}});
    }
    j["warnings"] = plan.warnings;
    return j;
}

BerthPlan plan_from_json(const nlohmann::json& j) {
    try {
        BerthPlan p;
        p.plan_version = j.at("plan_version").get<int>();
        if (j.contains("now") && !j.at("now").is_null()) p.now = parse_instant(j.at("now").get<std::string>());
        p.options.crane_pool = j.value("crane_pool", p.options.crane_pool);
        p.options.handling_rate = j.value("handling_rate", p.options.handling_rate);
        p.options.cranes_per_vessel = j.value("cranes_per_vessel", p.options.cranes_per_vessel);
        p.options.freeze_by_clock = j.value("freeze_by_clock", true);
        for (const auto& b : j.at("berths")) {
            p.berths.push_back({b.at("berth").get<std::string>(), b.at("crane_slots").get<int>()});
        }
        if (j.contains("vessels")) {
            for (const auto& v : j.at("vessels")) {
                const auto id = v.at("vessel").get<std::string>();
                p.eta_map[id] = parse_instant(v.at("eta").get<std::string>());
                p.van_counts[id] = v.value("vans", 0);
                if (v.value("started", false)) p.started.insert(id);
            }
        }
        for (const auto& a : j.at("assignments")) {
            p.assignments.push_back({a.at("vessel").get<std::string>(), a.at("berth").get<std::string>(),
                                     parse_instant(a.at("start").get<std::string>()),
                                     parse_instant(a.at("end").get<std::string>()), a.at("cranes").get<int>()});
        }
        if (j.contains("warnings")) p.warnings = j.at("warnings").get<std::vector<std::string>>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("plan document: ") + e.what());
    }
}

}  // namespace harbor
