#include "doctest.h"

#include <sstream>

#include "harbor/feature_grid.hpp"
#include "harbor/weather.hpp"
#include "support.hpp"

using namespace harbor;
using testing::Gen;

namespace {

const Instant kT0 = parse_instant("2021-03-01T12:00:00Z");

WeatherSeries uniform_weather(double v) {
    WeatherField f;
    f.origin = {30.0, 120.0};
    f.cell_size_deg = 0.25;
    f.rows = 40;
    f.cols = 60;
    f.valid_at = kT0 - std::chrono::hours(48);
    WeatherCell c;
    c.wind_direction = v;
    c.wind_speed = v;
    c.humidity = v;
    c.air_quality.fill(v);
    f.cells.assign(static_cast<std::size_t>(f.rows * f.cols), c);
    return WeatherSeries({f});
}

AisRecord rec(LatLon p, double minutes_before_now) {
    AisRecord r;
    r.timestamp = add_minutes(kT0, -minutes_before_now);
    r.mmsi = "V1";
    r.position = p;
    r.ship_length = 100;
    r.ship_width = 20;
    return r;
}

// Brute force: scan every cell's bounds.
std::optional<GridCell> scan_cells(const GridSpec& s, LatLon p) {
    for (int r = 0; r < s.side(); ++r) {
        for (int c = 0; c < s.side(); ++c) {
            const double lat0 = s.center.lat + (r - s.half_extent_cells) * s.cell_size_deg;
            const double lon0 = s.center.lon + (c - s.half_extent_cells) * s.cell_size_deg;
            if (p.lat >= lat0 && p.lat < lat0 + s.cell_size_deg && p.lon >= lon0 && p.lon < lon0 + s.cell_size_deg) {
                return GridCell{r, c};
            }
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("cell index") {
    GridSpec s;
    s.center = {35.0, 129.0};
    s.half_extent_cells = 2;
    s.cell_size_deg = 0.1;
    CHECK(cell_index(s, s.center) == GridCell{2, 2});
    const auto east = cell_index(s, {35.05, 129.15});
    REQUIRE(east);
    CHECK(*east == *scan_cells(s, {35.05, 129.15}));
    CHECK(east->col == 3);
    CHECK(east->row == 2);
    CHECK_FALSE(cell_index(s, {35.0, 129.0 + 12 * 0.1}));
}

TEST_CASE("cell index agrees with the exhaustive scan") {
    Gen g(21);
    for (int i = 0; i < 2000; ++i) {
        GridSpec s;
        s.center = {g.range(-60, 60), g.range(-170, 170)};
        s.half_extent_cells = g.integer(1, 4);
        s.cell_size_deg = 0.125 * g.integer(1, 4);  // binary fractions keep bounds exact
        const double reach = (s.half_extent_cells + 1.5) * s.cell_size_deg;
        const LatLon p{s.center.lat + g.range(-reach, reach), s.center.lon + g.range(-reach, reach)};
        CHECK(cell_index(s, p) == scan_cells(s, p));
    }
}

TEST_CASE("grid sequence hand cases") {
    GridSpec s;
    s.half_extent_cells = 1;
    s.cell_size_deg = 0.1;
    s.t_steps = 1;
    s.step_minutes = 30;
    const LatLon here{35.0, 129.0};
    s.center = here;

    const std::vector<AisRecord> one{rec(here, 0)};
    const GridSample a = build_grid_sequence(one, uniform_weather(3.0), s);
    CHECK(a.tensor.steps() == 1);
    CHECK(a.tensor.height() == 3);
    CHECK(a.tensor.width() == 3);
    CHECK(a.tensor.occupancy_total(0) == 1.0);
    CHECK(a.tensor.at(0, 1, 1, 0) == 1.0);
    CHECK_FALSE(a.label);

    // one cell west of the centre, inside the window
    const std::vector<AisRecord> two{rec({35.05, 128.95}, 10), rec(here, 0)};
    const GridSample b = build_grid_sequence(two, uniform_weather(3.0), s);
    CHECK(b.tensor.at(0, 1, 1, 0) == 1.0);
    CHECK(b.tensor.at(0, 1, 0, 0) == 1.0);
    CHECK(b.tensor.occupancy_total(0) == 2.0);

    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            for (int ch = 1; ch < b.tensor.channel_count(); ++ch) CHECK(b.tensor.at(0, r, c, ch) == 3.0);
        }
    }

    const GridSample labelled = build_grid_sequence(one, uniform_weather(3.0), s, add_minutes(kT0, 125));
    REQUIRE(labelled.label);
    CHECK(labelled.label->remaining_minutes == doctest::Approx(125.0));
}

TEST_CASE("grid sequence errors") {
    GridSpec s;
    s.center = {35.0, 129.0};
    const std::vector<AisRecord> none;
    CHECK_THROWS_AS(build_grid_sequence(none, uniform_weather(1.0), s), Error);
    const std::vector<AisRecord> off{rec({35.2, 129.0}, 0)};
    try {
        build_grid_sequence(off, uniform_weather(1.0), s);
        FAIL("expected SpecMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SpecMismatch);
    }
    GridSpec bad = s;
    bad.t_steps = 0;
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("occupancy properties on random tracks") {
    Gen g(99);
    for (int trial = 0; trial < 100; ++trial) {
        GridSpec s;
        s.half_extent_cells = g.integer(2, 6);
        s.cell_size_deg = 0.05;
        s.t_steps = g.integer(1, 6);
        s.step_minutes = 20;
        const int n = g.integer(1, 40);
        std::vector<AisRecord> track;
        LatLon p{g.range(33, 36), g.range(126, 130)};
        for (int i = n - 1; i >= 0; --i) {
            p = {p.lat + g.range(-0.03, 0.03), p.lon + g.range(-0.03, 0.03)};
            track.push_back(rec(p, i * g.range(1.0, 15.0)));
        }
        std::stable_sort(track.begin(), track.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
        s.center = track.back().position;
        const GridSample x = build_grid_sequence(track, uniform_weather(2.0), s);

        double total = 0.0;
        for (int t = 0; t < x.tensor.steps(); ++t) {
            for (int r = 0; r < x.tensor.height(); ++r) {
                for (int c = 0; c < x.tensor.width(); ++c) {
                    const double v = x.tensor.at(t, r, c, 0);
                    CHECK(v >= 0.0);
                    CHECK(v == std::floor(v));
                }
            }
            total += x.tensor.occupancy_total(t);
        }
        CHECK(total == x.samples_in_window);

        // shift everything by a whole number of cells
        const double dlat = 0.05 * g.integer(-20, 20), dlon = 0.05 * g.integer(-20, 20);
        std::vector<AisRecord> moved = track;
        for (auto& r : moved) r.position = {r.position.lat + dlat, r.position.lon + dlon};
        GridSpec ms = s;
        ms.center = moved.back().position;
        const GridSample y = build_grid_sequence(moved, uniform_weather(2.0), ms);
        for (int t = 0; t < x.tensor.steps(); ++t) {
            for (int r = 0; r < x.tensor.height(); ++r) {
                for (int c = 0; c < x.tensor.width(); ++c) CHECK(y.tensor.at(t, r, c, 0) == x.tensor.at(t, r, c, 0));
            }
        }

        // input order does not matter
        std::vector<AisRecord> shuffled = track;
        for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[g.next() % i]);
        const GridSample z = build_grid_sequence(shuffled, uniform_weather(2.0), s);
        CHECK(std::equal(z.tensor.values().begin(), z.tensor.values().end(), x.tensor.values().begin()));
    }
}

TEST_CASE("binary occupancy toggle and csv export") {
    GridSpec s;
    s.half_extent_cells = 1;
    s.cell_size_deg = 0.1;
    s.t_steps = 1;
    s.center = {35.0, 129.0};
    const std::vector<AisRecord> repeat{rec(s.center, 2), rec(s.center, 1), rec(s.center, 0)};
    CHECK(build_grid_sequence(repeat, uniform_weather(1.0), s).tensor.at(0, 1, 1, 0) == 3.0);
    s.binary_occupancy = true;
    const GridSample b = build_grid_sequence(repeat, uniform_weather(1.0), s);
    CHECK(b.tensor.at(0, 1, 1, 0) == 1.0);

    std::ostringstream out;
    b.tensor.write_csv(out);
    const std::string text = out.str();
    CHECK(text.rfind("t,row,col,occupancy,wind_direction,wind_speed", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 9);
}
