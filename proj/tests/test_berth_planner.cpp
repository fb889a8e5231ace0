#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "harbor/berth_planner.hpp"
#include "support.hpp"

using namespace harbor;
using testing::Gen;

namespace {

const Instant kT0 = parse_instant("2021-06-01T00:00:00Z");

Voyage vessel(const std::string& id, double eta_minutes, int vans) {
    Voyage v;
    v.vessel_id = id;
    v.route = {{35.0, 129.5}, {35.08, 129.08}};
    v.departure = add_minutes(kT0, eta_minutes - 600);
    v.promised_eta = add_minutes(kT0, eta_minutes);
    v.max_speed = 18;
    v.van_count = vans;
    return v;
}

PlannerOptions opts() {
    PlannerOptions o;
    o.crane_pool = 13;
    o.handling_rate = 30.0;  // 2 cranes: 60 vans per hour
    o.cranes_per_vessel = 2;
    return o;
}

std::vector<Berth> berths(int n, int slots = 2) {
    std::vector<Berth> b;
    for (int i = 0; i < n; ++i) b.push_back({"B" + std::to_string(i + 1), slots});
    return b;
}

double start_min(const BerthPlan& p, const std::string& id) { return minutes_between(kT0, p.find(id)->service_start); }
double end_min(const BerthPlan& p, const std::string& id) { return minutes_between(kT0, p.find(id)->service_end); }

std::vector<Voyage> random_instance(Gen& g, int n) {
    std::vector<Voyage> v;
    for (int i = 0; i < n; ++i) {
        v.push_back(vessel("V" + std::to_string(i), std::round(g.range(0, 1440)), g.integer(100, 900)));
    }
    return v;
}

// Waiting when every vessel keeps its original FCFS order but starts no
// earlier than its new ETA.
double keep_order_waiting(std::vector<std::pair<double, double>> eta_and_duration_in_old_order) {
    double free = -1e18, wait = 0.0;
    for (auto [eta, dur] : eta_and_duration_in_old_order) {
        const double start = std::max(free, eta);
        wait += start - eta;
        free = start + dur;
    }
    return wait;
}

}  // namespace

TEST_CASE("initial plan hand cases") {
    const std::vector<Voyage> one{vessel("A", 120, 600)};
    const BerthPlan p1 = build_initial_plan(one, berths(1), opts());
    REQUIRE(p1.assignments.size() == 1);
    CHECK(start_min(p1, "A") == 120);
    CHECK(end_min(p1, "A") == doctest::Approx(120 + 600));
    CHECK(p1.assignments[0].cranes_assigned == 2);
    CHECK(p1.plan_version == 0);

    const std::vector<Voyage> two{vessel("B", 60, 300), vessel("A", 60, 300)};
    const BerthPlan p2 = build_initial_plan(two, berths(1), opts());
    CHECK(start_min(p2, "A") == 60);
    CHECK(start_min(p2, "B") == doctest::Approx(end_min(p2, "A")));
    // both service orders tie on total waiting; the oracle agrees with greedy
    CHECK(total_waiting_minutes(p2) == doctest::Approx(total_waiting_minutes(brute_force_optimal(two, berths(1), opts()))));

    const std::vector<Voyage> none;
    const BerthPlan p0 = build_initial_plan(none, berths(2), opts());
    CHECK(p0.assignments.empty());
    CHECK(total_waiting_minutes(p0) == 0.0);

    try {
        build_initial_plan(one, {}, opts());
        FAIL("expected NoBerths");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoBerths);
    }
}

TEST_CASE("crane count respects slots and pool") {
    const std::vector<Voyage> v{vessel("A", 0, 600)};
    PlannerOptions o = opts();
    CHECK(build_initial_plan(v, berths(1, 1), o).assignments[0].cranes_assigned == 1);
    o.crane_pool = 1;
    CHECK(build_initial_plan(v, berths(1, 4), o).assignments[0].cranes_assigned == 1);

    // pool of 3 with two-crane vessels: two berths cannot both work at once
    PlannerOptions tight = opts();
    tight.crane_pool = 3;
    const std::vector<Voyage> pair{vessel("A", 0, 600), vessel("B", 0, 600)};
    const BerthPlan p = build_initial_plan(pair, berths(2), tight);
    validate_plan(p);
    CHECK(start_min(p, "B") == doctest::Approx(end_min(p, "A")));
}

TEST_CASE("horizon makes a vessel infeasible") {
    PlannerOptions o = opts();
    o.horizon = add_minutes(kT0, 500);
    const std::vector<Voyage> v{vessel("A", 0, 600), vessel("B", 10, 600)};
    try {
        build_initial_plan(v, berths(1), o);
        FAIL("expected InfeasibleVessel");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InfeasibleVessel);
    }
}

TEST_CASE("zero-van vessels keep an eta but get no berth") {
    const std::vector<Voyage> v{vessel("A", 0, 0), vessel("B", 10, 60)};
    const BerthPlan p = build_initial_plan(v, berths(1), opts());
    CHECK(p.find("A") == nullptr);
    CHECK(p.eta_map.count("A") == 1);
    CHECK(start_min(p, "B") == 10);
}

TEST_CASE("replan without conflict shifts only the updated vessel") {
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 60, 120)};
    const BerthPlan p = build_initial_plan(v, berths(2), opts());
    const BerthPlan q = replan_on_eta_update(p, "A", add_minutes(kT0, 90));
    validate_plan(q);
    CHECK(q.plan_version == p.plan_version + 1);
    CHECK(start_min(q, "A") == 90);
    CHECK(*q.find("B") == *p.find("B"));
}

TEST_CASE("replan promotes the successor into the vacated slot") {
    // one berth, three vessels each needing 2 h; A slips past both others
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 60, 120), vessel("C", 120, 120)};
    const BerthPlan p = build_initial_plan(v, berths(1), opts());
    CHECK(start_min(p, "A") == 0);
    CHECK(start_min(p, "B") == 120);
    CHECK(start_min(p, "C") == 240);

    const BerthPlan q = replan_on_eta_update(p, "A", add_minutes(kT0, 150));
    validate_plan(q);
    CHECK(start_min(q, "B") == 60);
    const double untouched = keep_order_waiting({{150, 120}, {60, 120}, {120, 120}});
    CHECK(total_waiting_minutes(q) < untouched);

    std::vector<Voyage> shifted = v;
    shifted[0].promised_eta = add_minutes(kT0, 150);
    CHECK(total_waiting_minutes(q) == doctest::Approx(total_waiting_minutes(brute_force_optimal(shifted, berths(1), opts()))));
}

TEST_CASE("replan errors and lenient clamping") {
    const std::vector<Voyage> v{vessel("A", 100, 120), vessel("B", 200, 120)};
    const BerthPlan p = advance_to(build_initial_plan(v, berths(1), opts()), add_minutes(kT0, 50));
    try {
        replan_on_eta_update(p, "Z", kT0);
        FAIL("expected UnknownVessel");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownVessel);
    }
    try {
        replan_on_eta_update(p, "A", add_minutes(kT0, 10));
        FAIL("expected PastEta");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PastEta);
    }
    const BerthPlan q = replan_on_eta_update(p, "A", add_minutes(kT0, 10), ReplanMode::Lenient);
    validate_plan(q);
    CHECK(q.eta_map.at("A") == add_minutes(kT0, 50));
    CHECK(q.warnings.size() == 1);
}

TEST_CASE("started services are never moved") {
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 30, 120)};
    const BerthPlan p = build_initial_plan(v, berths(1), opts());
    const BerthPlan s = mark_started(p, "A", add_minutes(kT0, 5));
    validate_plan(s);
    CHECK(start_min(s, "A") == 5);
    CHECK(start_min(s, "B") == 125);
    const BerthPlan q = replan_on_eta_update(s, "A", add_minutes(kT0, 400));
    CHECK(*q.find("A") == *s.find("A"));
    CHECK_FALSE(q.warnings.empty());
    // B now wants to come earlier than A's service end: it must wait
    const BerthPlan r = replan_on_eta_update(s, "B", add_minutes(kT0, 10));
    validate_plan(r);
    CHECK(start_min(r, "A") == 5);
    CHECK(start_min(r, "B") == 125);
}

TEST_CASE("clock freezing") {
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 30, 120)};
    const BerthPlan p = advance_to(build_initial_plan(v, berths(1), opts()), add_minutes(kT0, 60));
    const BerthPlan q = replan_on_eta_update(p, "A", add_minutes(kT0, 300));
    CHECK(*q.find("A") == *p.find("A"));

    PlannerOptions loose = opts();
    loose.freeze_by_clock = false;
    const BerthPlan p2 = advance_to(build_initial_plan(v, berths(1), loose), add_minutes(kT0, 60));
    const BerthPlan q2 = replan_on_eta_update(p2, "A", add_minutes(kT0, 300));
    CHECK(start_min(q2, "B") == 60);
    CHECK(start_min(q2, "A") == 300);
}

TEST_CASE("validator catches broken plans") {
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 30, 120)};
    BerthPlan p = build_initial_plan(v, berths(1), opts());
    CHECK(plan_violations(p).empty());

    BerthPlan overlap = p;
    overlap.assignments[1].service_start = overlap.assignments[0].service_start + std::chrono::minutes(60);
    overlap.assignments[1].service_end = overlap.assignments[1].service_start + std::chrono::minutes(120);
    CHECK_FALSE(plan_violations(overlap).empty());
    CHECK_THROWS_AS(validate_plan(overlap), Error);

    BerthPlan early = p;
    early.eta_map["A"] = add_minutes(kT0, 30);
    CHECK_FALSE(plan_violations(early).empty());

    BerthPlan cranes = p;
    cranes.assignments[0].cranes_assigned = 5;
    CHECK_FALSE(plan_violations(cranes).empty());

    BerthPlan pool = build_initial_plan(std::vector<Voyage>{vessel("A", 0, 120), vessel("B", 0, 120)}, berths(2), opts());
    pool.options.crane_pool = 3;
    CHECK_FALSE(plan_violations(pool).empty());
}

TEST_CASE("oracle hand cases") {
    const std::vector<Voyage> one{vessel("A", 100, 300)};
    CHECK(brute_force_optimal(one, berths(1), opts()).assignments == build_initial_plan(one, berths(1), opts()).assignments);

    // staggered ETAs that never collide: FCFS is optimal with zero waiting
    const std::vector<Voyage> staggered{vessel("A", 0, 60), vessel("B", 90, 60), vessel("C", 200, 60)};
    const BerthPlan greedy = build_initial_plan(staggered, berths(1), opts());
    CHECK(total_waiting_minutes(brute_force_optimal(staggered, berths(1), opts())) == total_waiting_minutes(greedy));
    CHECK(total_waiting_minutes(greedy) == 0.0);

    const std::vector<Voyage> none;
    const BerthPlan empty = brute_force_optimal(none, berths(2), opts());
    CHECK(empty.assignments.empty());
    CHECK(total_waiting_minutes(empty) == 0.0);

    Gen g(1);
    try {
        brute_force_optimal(random_instance(g, 9), berths(1), opts());
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
    CHECK_THROWS_AS(brute_force_optimal(random_instance(g, 2), berths(3), opts()), Error);
}

TEST_CASE("oracle never loses to greedy and both plans are feasible") {
    Gen g(404);
    for (int trial = 0; trial < 150; ++trial) {
        const auto v = random_instance(g, g.integer(1, 6));
        const auto b = berths(g.integer(1, 2));
        const BerthPlan greedy = build_initial_plan(v, b, opts());
        const BerthPlan best = brute_force_optimal(v, b, opts());
        validate_plan(greedy);
        validate_plan(best);
        CHECK(total_waiting_minutes(best) <= total_waiting_minutes(greedy) + 1e-6);
    }
}

TEST_CASE("replan is idempotent, monotone and keeps plans feasible") {
    Gen g(808);
    for (int trial = 0; trial < 300; ++trial) {
        const auto v = random_instance(g, g.integer(1, 10));
        const auto b = berths(g.integer(1, 3));
        BerthPlan p = build_initial_plan(v, b, opts());
        validate_plan(p);
        for (int step = 0; step < 4; ++step) {
            const Voyage& target = v[static_cast<std::size_t>(g.integer(0, static_cast<int>(v.size()) - 1))];
            const Instant old_eta = p.eta_map.at(target.vessel_id);
            const Instant later = add_minutes(old_eta, std::round(g.range(0, 600)));
            const BerthPlan once = replan_on_eta_update(p, target.vessel_id, later);
            validate_plan(once);
            const BerthPlan twice = replan_on_eta_update(once, target.vessel_id, later);
            CHECK(twice.assignments == once.assignments);
            CHECK(twice.eta_map == once.eta_map);
            if (const auto* before = p.find(target.vessel_id)) {
                CHECK(once.find(target.vessel_id)->service_start >= before->service_start);
            }
            p = once;
        }
    }
}

TEST_CASE("plan json round trip") {
    const std::vector<Voyage> v{vessel("A", 0, 120), vessel("B", 30, 240), vessel("C", 45, 0)};
    BerthPlan p = mark_started(build_initial_plan(v, berths(2), opts()), "A", add_minutes(kT0, 3));
    p = replan_on_eta_update(p, "B", add_minutes(kT0, 50));
    const nlohmann::json j = plan_to_json(p);
    CHECK(j.contains("plan_version"));
    CHECK(j["assignments"][0].contains("vessel"));
    CHECK(j["assignments"][0].contains("berth"));
    const BerthPlan back = plan_from_json(j);
    CHECK(back.assignments == p.assignments);
    CHECK(back.eta_map == p.eta_map);
    CHECK(back.started == p.started);
    CHECK(back.plan_version == p.plan_version);
    CHECK(plan_to_json(back).dump() == j.dump());
    CHECK_THROWS_AS(plan_from_json(nlohmann::json{{"plan_version", "x"}}), Error);
}
