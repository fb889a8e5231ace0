#include "doctest.h"

#include <array>
#include <sstream>

#include "harbor/config.hpp"
#include "harbor/core.hpp"
#include "harbor/geo.hpp"
#include "harbor/ingest.hpp"
#include "harbor/rng.hpp"
#include "support.hpp"

using namespace harbor;
using testing::Gen;

namespace {

// Arc length by summing chords of a finely subdivided great circle, built from
// 3-D unit vectors without any haversine term.
double arc_by_chords(LatLon a, LatLon b, int pieces) {
    auto unit = [](LatLon p) {
        const double la = p.lat * kPi / 180.0, lo = p.lon * kPi / 180.0;
        return std::array<double, 3>{std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
    };
    const auto u = unit(a), v = unit(b);
    const double omega = std::acos(u[0] * v[0] + u[1] * v[1] + u[2] * v[2]);
    double total = 0.0;
    std::array<double, 3> prev = u;
    for (int i = 1; i <= pieces; ++i) {
        const double f = static_cast<double>(i) / pieces;
        const double sa = std::sin((1 - f) * omega) / std::sin(omega), sb = std::sin(f * omega) / std::sin(omega);
        const std::array<double, 3> p{sa * u[0] + sb * v[0], sa * u[1] + sb * v[1], sa * u[2] + sb * v[2]};
        total += std::sqrt((p[0] - prev[0]) * (p[0] - prev[0]) + (p[1] - prev[1]) * (p[1] - prev[1]) +
                           (p[2] - prev[2]) * (p[2] - prev[2]));
        prev = p;
    }
    return total * 6371.0;
}

double nm_to_equator_deg(double nm) { return nm * 1.852 / (6371.0 * kPi / 180.0); }

FieldMap sample_row1() {
    return {{"Timestamp", "2019-07-03 00:00:15.015121 UTC"},
            {"MMSI", "Ship1"},
            {"Latitude", "35.09359667"},
            {"Longitude", "129.0357483"},
            {"SOG", "0"},
            {"COG", "0"},
            {"Heading", "137"},
            {"ROT", "0"},
            {"Draught", "4.4"},
            {"Ship Type", "52"},
            {"Ship Length", "30"},
            {"Ship Width", "10"}};
}

}  // namespace

TEST_CASE("unit constants") {
    CHECK(kMetersPerSecondPerKnot == 0.514444);
    CHECK(kMetersPerNauticalMile == 1852.0);
    CHECK(kEarthRadiusKm == 6371.0);
    CHECK(km_to_nm(1.852) == doctest::Approx(1.0));
}

TEST_CASE("haversine hand cases") {
    CHECK(haversine_km({35.0, 129.0}, {35.0, 129.0}) == 0.0);
    CHECK(haversine_km({0.0, 0.0}, {0.0, 1.0}) == doctest::Approx(6371.0 * kPi / 180.0).epsilon(1e-12));
    CHECK(haversine_km({0.0, 0.0}, {0.0, 1.0}) == doctest::Approx(111.195).epsilon(1e-5));
    const double d = haversine_km({35.0, 129.0}, {35.0, 130.0});
    CHECK(d == doctest::Approx(91.085).epsilon(1e-5));
    CHECK(d == doctest::Approx(arc_by_chords({35.0, 129.0}, {35.0, 130.0}, 20000)).epsilon(1e-7));
    // the parallel is longer than the great circle between the same points
    CHECK(d < 6371.0 * kPi / 180.0 * std::cos(35.0 * kPi / 180.0));
}

TEST_CASE("haversine agrees with the chord oracle on random pairs") {
    Gen g(7);
    for (int i = 0; i < 200; ++i) {
        const LatLon a = g.point(), b = g.point();
        if (haversine_km(a, b) > 19000.0) continue;  // near-antipodal pairs make the oracle ill-conditioned
        CHECK(haversine_km(a, b) == doctest::Approx(arc_by_chords(a, b, 4000)).epsilon(1e-6));
    }
}

TEST_CASE("haversine symmetry, identity and triangle inequality") {
    Gen g(11);
    for (int i = 0; i < 1000; ++i) {
        const LatLon a = g.point(), b = g.point(), c = g.point();
        const double ab = haversine_km(a, b), ba = haversine_km(b, a);
        CHECK(ab == ba);
        CHECK(ab >= 0.0);
        CHECK(haversine_km(a, a) == 0.0);
        CHECK(ab <= haversine_km(a, c) + haversine_km(c, b) + 1e-9);
    }
}

TEST_CASE("route remaining distance") {
    const std::vector<LatLon> straight{{0.0, 0.0}, {0.0, nm_to_equator_deg(12.0)}};
    CHECK(route_remaining_nm(straight, straight.back()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(route_remaining_nm(straight, straight.front()) == doctest::Approx(12.0).epsilon(1e-9));

    const std::vector<LatLon> bent{{0.0, 0.0}, {0.0, nm_to_equator_deg(10.0)}, {0.0, nm_to_equator_deg(16.0)}};
    CHECK(route_remaining_nm(bent, bent[1]) == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(route_length_nm(bent) == doctest::Approx(16.0).epsilon(1e-9));

    const std::vector<LatLon> none;
    CHECK_THROWS_AS(route_remaining_nm(none, {0, 0}), Error);
}

TEST_CASE("route remaining is monotone along the route") {
    Gen g(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<LatLon> route{{g.range(30, 40), g.range(120, 130)}};
        for (int k = 0; k < g.integer(1, 5); ++k) {
            route.push_back({route.back().lat + g.range(-0.5, 0.5), route.back().lon + g.range(0.2, 0.8)});
        }
        const double total = route_length_nm(route);
        double prev = 1e18;
        for (int s = 0; s <= 40; ++s) {
            const double r = route_remaining_nm(route, point_along_route(route, total * s / 40.0));
            CHECK(r <= prev + 1e-6);
            prev = r;
        }
    }
}

TEST_CASE("timestamps in both input spellings") {
    const Instant a = parse_instant("2019-07-03 00:00:15.015121 UTC");
    CHECK(format_instant_ais(a) == "2019-07-03 00:00:15.015121 UTC");
    CHECK(format_instant_rfc3339(a) == "2019-07-03T00:00:15.015121Z");
    const Instant b = parse_instant("2021-10-31T20:59:59Z");
    CHECK(parse_instant("2021-10-31 T20:59:59Z") == b);
    CHECK(format_instant_rfc3339(b) == "2021-10-31T20:59:59Z");
    CHECK(minutes_between(b, add_minutes(b, 90.5)) == doctest::Approx(90.5));
    CHECK_THROWS_AS(parse_instant("yesterday"), Error);
}

TEST_CASE("ais record validation") {
    const AisRecord r = validate_ais_record(sample_row1());
    REQUIRE(r.heading.has_value());
    CHECK(*r.heading == 137);
    CHECK(r.rot == 0.0);
    CHECK(r.draught == 4.4);

    FieldMap sentinels = sample_row1();
    sentinels["Heading"] = "511";
    sentinels["ROT"] = "-128";
    const AisRecord s = validate_ais_record(sentinels);
    CHECK_FALSE(s.heading.has_value());
    CHECK_FALSE(s.rot.has_value());

    FieldMap bad = sample_row1();
    bad["Latitude"] = "95.0";
    try {
        validate_ais_record(bad);
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfRange);
        CHECK(e.field() == "Latitude");
    }
    FieldMap missing = sample_row1();
    missing.erase("SOG");
    CHECK_THROWS_WITH_AS(validate_ais_record(missing), doctest::Contains("SOG"), Error);
    FieldMap when = sample_row1();
    when["Timestamp"] = "2019-13-45";
    try {
        validate_ais_record(when);
        FAIL("expected UnparsableTimestamp");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnparsableTimestamp);
    }
}

TEST_CASE("ais validation is idempotent") {
    Gen g(5);
    for (int i = 0; i < 200; ++i) {
        FieldMap raw = sample_row1();
        raw["Latitude"] = std::to_string(g.range(-90, 90));
        raw["Longitude"] = std::to_string(g.range(-180, 180));
        raw["SOG"] = std::to_string(g.range(0, 25));
        raw["Heading"] = g.unit() < 0.3 ? "511" : std::to_string(g.integer(0, 359));
        raw["ROT"] = g.unit() < 0.3 ? "-128" : std::to_string(g.integer(-20, 20));
        const AisRecord once = validate_ais_record(raw);
        CHECK(validate_ais_record(to_field_map(once)) == once);
    }
}

TEST_CASE("voyage invariants") {
    Voyage v;
    v.vessel_id = "V1";
    v.route = {{35.0, 129.0}, {35.1, 129.1}};
    v.departure = parse_instant("2021-01-01T00:00:00Z");
    v.promised_eta = parse_instant("2021-01-01T10:00:00Z");
    v.max_speed = 15;
    CHECK_NOTHROW(validate_voyage(v));
    Voyage dup = v;
    dup.route.push_back(dup.route.back());
    CHECK_THROWS_AS(validate_voyage(dup), Error);
    Voyage early = v;
    early.promised_eta = early.departure;
    CHECK_THROWS_AS(validate_voyage(early), Error);
    Voyage one = v;
    one.route.resize(1);
    CHECK_THROWS_AS(validate_voyage(one), Error);
}

TEST_CASE("seed derivation and rng are reproducible") {
    CHECK(derive_seed(42, {1, 2}) == derive_seed(42, {1, 2}));
    CHECK(derive_seed(42, {1, 2}) != derive_seed(42, {2, 1}));
    CHECK(derive_seed(42, {1}) != derive_seed(43, {1}));
    Rng a(9), b(9);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    Rng c(1);
    for (int i = 0; i < 1000; ++i) {
        const auto k = c.uniform_int(3, 7);
        CHECK(k >= 3);
        CHECK(k <= 7);
    }
}

TEST_CASE("lognormal moments") {
    const auto p = LognormalParams::from_moments(121.9, 265.1);
    const double mean = std::exp(p.mu + p.sigma * p.sigma / 2);
    const double var = (std::exp(p.sigma * p.sigma) - 1) * std::exp(2 * p.mu + p.sigma * p.sigma);
    CHECK(mean == doctest::Approx(121.9));
    CHECK(std::sqrt(var) == doctest::Approx(265.1));
}

TEST_CASE("key-value config") {
    const KvConfig kv = KvConfig::parse("# comment\nb = 2\na = x y  # trailing\n\n");
    CHECK(kv.get_string("a", "") == "x y");
    CHECK(kv.get_int("b", 0) == 2);
    CHECK(kv.get_double("missing", 1.5) == 1.5);
    CHECK(kv.canonical() == KvConfig::parse("a = x y\nb = 2").canonical());
    CHECK(kv.hash() == KvConfig::parse("b=2\na=x y").hash());
    CHECK_THROWS_AS(KvConfig::parse("no equals sign"), Error);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
