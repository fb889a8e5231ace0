#include "harbor/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "harbor/csv.hpp"
#include "harbor/geo.hpp"
#include "harbor/ingest.hpp"
#include "harbor/rng.hpp"

namespace harbor {

namespace {

constexpr double kReferenceWind = 8.0;   // m/s at which weather neither helps nor hurts
constexpr double kWindSensitivity = 16.0;
constexpr double kSogNoise = 0.12;       // relative SOG jitter at perturbation 1
constexpr double kWindMeanReversion = 0.97;
constexpr double kWindRegionalSd = 3.0;

enum Stream : std::uint64_t { kWeatherStream = 1, kRouteStream = 2, kVesselStream = 3 };

struct WeatherPattern {
    double phase_lat = 0.0, phase_lon = 0.0, drift = 0.0;
    std::array<double, kAirQualityIndices.size()> aq_base{};
    std::array<double, kAirQualityIndices.size()> aq_phase{};
};

double wrap_degrees(double d) {
    d = std::fmod(d, 360.0);
    return d < 0.0 ? d + 360.0 : d;
}

std::vector<std::vector<LatLon>> draw_templates(const SynthConfig& cfg) {
    if (!cfg.route_templates.empty()) return cfg.route_templates;
    Rng rng(derive_seed(cfg.seed, {kRouteStream}));
    std::vector<std::vector<LatLon>> out;
    for (int i = 0; i < cfg.route_count; ++i) {
        const double bearing = rng.uniform(100.0, 250.0);
        const double dist = rng.uniform(cfg.route_min_nm, cfg.route_max_nm);
        const double bend = rng.uniform(-15.0, 15.0);
        const LatLon start = destination_point(cfg.port, bearing, dist);
        const LatLon mid = destination_point(cfg.port, bearing + bend, dist * 0.5);
        out.push_back({start, mid, cfg.port});
    }
    return out;
}

WeatherSeries draw_weather(const SynthConfig& cfg, const std::vector<std::vector<LatLon>>& templates,
                           double span_hours) {
    double lat_lo = cfg.port.lat, lat_hi = cfg.port.lat, lon_lo = cfg.port.lon, lon_hi = cfg.port.lon;
    for (const auto& route : templates) {
        for (const auto& p : route) {
            lat_lo = std::min(lat_lo, p.lat);
            lat_hi = std::max(lat_hi, p.lat);
            lon_lo = std::min(lon_lo, p.lon);
            lon_hi = std::max(lon_hi, p.lon);
        }
    }
    const double margin = 1.5;
    const double cell = cfg.weather_cell_deg;
    const LatLon origin{std::floor((lat_lo - margin) / cell) * cell, std::floor((lon_lo - margin) / cell) * cell};
    const int rows = static_cast<int>(std::ceil((lat_hi + margin - origin.lat) / cell));
    const int cols = static_cast<int>(std::ceil((lon_hi + margin - origin.lon) / cell));

    Rng rng(derive_seed(cfg.seed, {kWeatherStream}));
    WeatherPattern pat;
    pat.phase_lat = rng.uniform(0.0, 2.0 * kPi);
    pat.phase_lon = rng.uniform(0.0, 2.0 * kPi);
    pat.drift = rng.uniform(-0.1, 0.1);
    for (std::size_t i = 0; i < pat.aq_base.size(); ++i) {
        pat.aq_base[i] = rng.uniform(5.0, 60.0);
        pat.aq_phase[i] = rng.uniform(0.0, 2.0 * kPi);
    }

    const double warmup_hours = 6.0;
    const int steps = static_cast<int>(std::ceil((span_hours + warmup_hours) / cfg.weather_step_hours)) + 1;
    double regional = kReferenceWind + kWindRegionalSd * rng.normal();
    std::vector<WeatherField> fields;
    fields.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        if (k > 0) {
            regional = kReferenceWind + kWindMeanReversion * (regional - kReferenceWind) +
                       std::sqrt(1.0 - kWindMeanReversion * kWindMeanReversion) * kWindRegionalSd * rng.normal();
        }
        WeatherField f;
        f.origin = origin;
        f.cell_size_deg = cell;
        f.rows = rows;
        f.cols = cols;
        f.valid_at = add_minutes(cfg.epoch, (k * cfg.weather_step_hours - warmup_hours) * 60.0);
        f.cells.resize(static_cast<std::size_t>(rows) * cols);
        for (int r = 0; r < rows; ++r) {
            const double lat = origin.lat + (r + 0.5) * cell;
            for (int c = 0; c < cols; ++c) {
                const double lon = origin.lon + (c + 0.5) * cell;
                const double wave_lat = std::cos(2.0 * kPi * (lat - origin.lat) / 4.0 + pat.phase_lat);
                const double wave_lon = std::sin(2.0 * kPi * (lon - origin.lon) / 5.0 + pat.phase_lon + pat.drift * k);
                WeatherCell& w = f.cells[static_cast<std::size_t>(r) * cols + c];
                w.wind_speed = std::max(0.0, regional + 4.0 * wave_lat * wave_lon);
                w.wind_direction = wrap_degrees(200.0 + 60.0 * wave_lon + 10.0 * (regional - kReferenceWind));
                w.humidity = std::clamp(70.0 + 12.0 * wave_lat + 1.5 * (regional - kReferenceWind), 0.0, 100.0);
                for (std::size_t i = 0; i < w.air_quality.size(); ++i) {
                    const double swing = std::sin(2.0 * kPi * (lat + lon) / 6.0 + pat.aq_phase[i]);
                    w.air_quality[i] = pat.aq_base[i] * (1.0 + 0.3 * swing);
                }
            }
        }
        fields.push_back(std::move(f));
    }
    return WeatherSeries(std::move(fields));
}

}  // namespace

void validate(const SynthConfig& cfg) {
    auto bad = [](const std::string& what, const std::string& key) { return Error(ErrorCode::InvalidConfig, what, key); };
    if (cfg.n_vessels < 0) throw bad("must be >= 0", "n_vessels");
    if (!(cfg.horizon_hours > 0.0)) throw bad("must be positive", "horizon_hours");
    if (!(cfg.speed_min_knots > 0.0) || cfg.speed_max_knots < cfg.speed_min_knots) throw bad("empty range", "speed");
    if (cfg.van_min < 0 || cfg.van_max < cfg.van_min) throw bad("empty range", "van_count");
    if (!(cfg.route_min_nm > 0.0) || cfg.route_max_nm < cfg.route_min_nm) throw bad("empty range", "route_nm");
    if (cfg.route_templates.empty() && cfg.route_count < 1) throw bad("need at least one route", "route_count");
    for (const auto& r : cfg.route_templates) {
        if (r.size() < 2) throw bad("route needs two waypoints", "route");
    }
    if (cfg.weather_perturbation < 0.0) throw bad("must be >= 0", "weather_perturbation");
    if (!(cfg.sampling_minutes > 0.0)) throw bad("must be positive", "sampling_minutes");
    if (!(cfg.weather_cell_deg > 0.0)) throw bad("must be positive", "weather_cell_deg");
    if (!(cfg.weather_step_hours > 0.0)) throw bad("must be positive", "weather_step_hours");
}

SynthConfig synth_config_from(const KvConfig& kv) {
    SynthConfig c;
    c.seed = static_cast<std::uint64_t>(kv.get_int("synth.seed", static_cast<long long>(c.seed)));
    c.n_vessels = static_cast<int>(kv.get_int("synth.n_vessels", c.n_vessels));
    c.horizon_hours = kv.get_double("synth.horizon_hours", c.horizon_hours);
    c.port.lat = kv.get_double("synth.port_lat", c.port.lat);
    c.port.lon = kv.get_double("synth.port_lon", c.port.lon);
    c.route_count = static_cast<int>(kv.get_int("synth.route_count", c.route_count));
    c.route_min_nm = kv.get_double("synth.route_min_nm", c.route_min_nm);
    c.route_max_nm = kv.get_double("synth.route_max_nm", c.route_max_nm);
    c.speed_min_knots = kv.get_double("synth.speed_min_knots", c.speed_min_knots);
    c.speed_max_knots = kv.get_double("synth.speed_max_knots", c.speed_max_knots);
    c.van_min = static_cast<int>(kv.get_int("synth.van_min", c.van_min));
    c.van_max = static_cast<int>(kv.get_int("synth.van_max", c.van_max));
    c.weather_perturbation = kv.get_double("synth.weather_perturbation", c.weather_perturbation);
    c.sampling_minutes = kv.get_double("synth.sampling_minutes", c.sampling_minutes);
    c.weather_cell_deg = kv.get_double("synth.weather_cell_deg", c.weather_cell_deg);
    c.weather_step_hours = kv.get_double("synth.weather_step_hours", c.weather_step_hours);
    if (kv.has("synth.epoch")) c.epoch = parse_instant(kv.get_string("synth.epoch", ""));

    // synth.route.<name> = lat lon; lat lon; ...
    for (const auto& [key, value] : kv.values()) {
        if (key.rfind("synth.route.", 0) != 0) continue;
        std::vector<LatLon> route;
        std::stringstream ss(value);
        std::string point;
        while (std::getline(ss, point, ';')) {
            std::istringstream ps(point);
            LatLon p;
            if (!(ps >> p.lat >> p.lon)) throw Error(ErrorCode::InvalidConfig, "bad waypoint '" + point + "'", key);
            route.push_back(p);
        }
        c.route_templates.push_back(std::move(route));
    }
    validate(c);
    return c;
}

double weather_speed_factor(double wind_speed, double perturbation) {
    return std::max(0.3, 1.0 - perturbation * (wind_speed - kReferenceWind) / kWindSensitivity);
}

std::vector<AisRecord> Traffic::trace(const std::string& vessel_id) const {
    std::vector<AisRecord> out;
    for (const auto& r : ais) {
        if (r.mmsi == vessel_id) out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const AisRecord& a, const AisRecord& b) { return a.timestamp < b.timestamp; });
    return out;
}

Traffic generate_traffic(const SynthConfig& cfg) {
    validate(cfg);
    Traffic traffic;
    const auto templates = draw_templates(cfg);

    double longest_nm = 0.0;
    for (const auto& r : templates) longest_nm = std::max(longest_nm, route_length_nm(r));
    const double slowest = cfg.speed_min_knots * weather_speed_factor(40.0, cfg.weather_perturbation);
    const double span_hours = cfg.horizon_hours + longest_nm / slowest + 1.0;
    traffic.weather = draw_weather(cfg, templates, span_hours);

    for (int i = 0; i < cfg.n_vessels; ++i) {
        Rng rng(derive_seed(cfg.seed, {kVesselStream, static_cast<std::uint64_t>(i)}));
        Voyage v;
        char id[16];
        std::snprintf(id, sizeof id, "V%04d", i + 1);
        v.vessel_id = id;
        v.route = templates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(templates.size()) - 1))];
        const double planned = rng.uniform(cfg.speed_min_knots, cfg.speed_max_knots);
        v.max_speed = planned * 1.25;
        v.van_count = static_cast<int>(rng.uniform_int(cfg.van_min, cfg.van_max));
        v.draught = std::round(rng.uniform(6.0, 14.0) * 10.0) / 10.0;
        v.departure = add_minutes(cfg.epoch, std::round(rng.uniform(0.0, cfg.horizon_hours * 60.0)));
        const double length_nm = route_length_nm(v.route);
        v.promised_eta = add_minutes(v.departure, length_nm / planned * 60.0);

        const int ship_type = static_cast<int>(rng.uniform_int(70, 79));
        const double ship_length = std::round(rng.uniform(150.0, 366.0));
        const double ship_width = std::round(ship_length * 0.14);

        // Piecewise-constant speed over sampling intervals; the arrival
        // instant is solved exactly inside the final interval.
        double sailed = 0.0;
        double t = 0.0;  // minutes since departure
        const double dt = cfg.sampling_minutes;
        while (true) {
            const Instant now = add_minutes(v.departure, t);
            const LatLon pos = point_along_route(v.route, sailed);
            const double wind = traffic.weather.at(now).nearest(pos).wind_speed;
            const double speed = std::min(v.max_speed, planned * weather_speed_factor(wind, cfg.weather_perturbation));
            const double jitter = rng.normal();

            const auto proj = project_onto_route(v.route, pos);
            const LatLon ahead = interpolate_great_circle(v.route[proj.segment], v.route[proj.segment + 1],
                                                          std::min(1.0, proj.fraction + 1e-3));
            double cog = 0.0;
            if (!(ahead == pos)) {
                const double y = std::sin(deg_to_rad(ahead.lon - pos.lon)) * std::cos(deg_to_rad(ahead.lat));
                const double x = std::cos(deg_to_rad(pos.lat)) * std::sin(deg_to_rad(ahead.lat)) -
                                 std::sin(deg_to_rad(pos.lat)) * std::cos(deg_to_rad(ahead.lat)) *
                                     std::cos(deg_to_rad(ahead.lon - pos.lon));
                cog = wrap_degrees(rad_to_deg(std::atan2(y, x)));
                if (cog >= 360.0) cog = 0.0;
            }

            AisRecord rec;
            rec.timestamp = now;
            rec.mmsi = v.vessel_id;
            rec.position = pos;
            rec.sog = std::clamp(speed * (1.0 + cfg.weather_perturbation * kSogNoise * jitter), 0.0, v.max_speed);
            rec.cog = cog;
            rec.heading = static_cast<int>(std::lround(cog)) % 360;
            rec.rot = 0.0;
            rec.draught = v.draught;
            rec.ship_type = ship_type;
            rec.ship_length = ship_length;
            rec.ship_width = ship_width;
            traffic.ais.push_back(rec);

            const double step_nm = speed * dt / 60.0;
            if (sailed + step_nm >= length_nm) {
                t += (length_nm - sailed) / speed * 60.0;
                break;
            }
            sailed += step_nm;
            t += dt;
        }
        traffic.outcomes.push_back({v.vessel_id, add_minutes(v.departure, t), planned});
        validate_voyage(v);
        traffic.voyages.push_back(std::move(v));
    }
    return traffic;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
    return in;
}

double to_double(const std::string& s, const char* what) {
    double v = 0.0;
    if (!csv::parse_double(s, v)) throw Error(ErrorCode::OutOfRange, "bad number '" + s + "'", what);
    return v;
}

}  // namespace

std::vector<std::filesystem::path> write_traffic(const Traffic& traffic, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;

    {
        const auto p = dir / "voyages.csv";
        auto out = open_out(p);
        out << "vessel_id,departure,promised_eta,max_speed,van_count,draught,route\n";
        for (const auto& v : traffic.voyages) {
            std::string route;
            for (const auto& w : v.route) {
                route += (route.empty() ? "" : ";") + csv::number(w.lat) + " " + csv::number(w.lon);
            }
            out << v.vessel_id << ',' << format_instant_ais(v.departure) << ',' << format_instant_ais(v.promised_eta)
                << ',' << csv::number(v.max_speed) << ',' << v.van_count << ',' << csv::number(v.draught) << ','
                << route << '\n';
        }
        written.push_back(p);
    }
    {
        const auto p = dir / "ais.csv";
        auto out = open_out(p);
        write_ais_csv(out, traffic.ais);
        written.push_back(p);
    }
    {
        const auto p = dir / "arrivals.csv";
        auto out = open_out(p);
        out << "vessel_id,actual_arrival,planned_speed\n";
        for (const auto& o : traffic.outcomes) {
            out << o.vessel_id << ',' << format_instant_ais(o.actual_arrival) << ',' << csv::number(o.planned_speed)
                << '\n';
        }
        written.push_back(p);
    }
    if (!traffic.weather.empty()) {
        const auto& first = traffic.weather.fields().front();
        const auto meta = dir / "weather_grid.kv";
        auto mo = open_out(meta);
        mo << "origin_lat = " << csv::number(first.origin.lat) << "\norigin_lon = " << csv::number(first.origin.lon)
           << "\ncell_size_deg = " << csv::number(first.cell_size_deg) << "\nrows = " << first.rows
           << "\ncols = " << first.cols << '\n';
        written.push_back(meta);

        const auto p = dir / "weather.csv";
        auto out = open_out(p);
        out << "valid_at,row,col";
        for (const char* ch : kWeatherChannels) out << ',' << ch;
        out << '\n';
        for (const auto& f : traffic.weather.fields()) {
            const std::string stamp = format_instant_ais(f.valid_at);
            for (int r = 0; r < f.rows; ++r) {
                for (int c = 0; c < f.cols; ++c) {
                    const auto& cell = f.at(r, c);
                    out << stamp << ',' << r << ',' << c;
                    for (std::size_t ch = 0; ch < kWeatherChannels.size(); ++ch) out << ',' << csv::number(cell.channel(ch));
                    out << '\n';
                }
            }
        }
        written.push_back(p);
    }
    return written;
}

Traffic read_traffic(const std::filesystem::path& dir) {
    Traffic traffic;
    std::string line;
    std::size_t line_no = 0;

    {
        auto in = open_in(dir / "voyages.csv");
        csv::next_line(in, line, line_no);
        while (csv::next_line(in, line, line_no)) {
            const auto cells = csv::split_line(line);
            if (cells.size() != 7) throw Error(ErrorCode::RowError, "voyages.csv line " + std::to_string(line_no));
            Voyage v;
            v.vessel_id = cells[0];
            v.departure = parse_instant(cells[1]);
            v.promised_eta = parse_instant(cells[2]);
            v.max_speed = to_double(cells[3], "max_speed");
            v.van_count = static_cast<int>(to_double(cells[4], "van_count"));
            v.draught = to_double(cells[5], "draught");
            std::stringstream ss(cells[6]);
            std::string point;
            while (std::getline(ss, point, ';')) {
                std::istringstream ps(point);
                LatLon p;
                ps >> p.lat >> p.lon;
                v.route.push_back(p);
            }
            validate_voyage(v);
            traffic.voyages.push_back(std::move(v));
        }
    }
    traffic.ais = parse_ais_csv(dir / "ais.csv").records;
    {
        auto in = open_in(dir / "arrivals.csv");
        line_no = 0;
        csv::next_line(in, line, line_no);
        while (csv::next_line(in, line, line_no)) {
            const auto cells = csv::split_line(line);
            if (cells.size() != 3) throw Error(ErrorCode::RowError, "arrivals.csv line " + std::to_string(line_no));
            traffic.outcomes.push_back({cells[0], parse_instant(cells[1]), to_double(cells[2], "planned_speed")});
        }
    }
    {
        const KvConfig meta = KvConfig::load(dir / "weather_grid.kv");
        WeatherField proto;
        proto.origin = {meta.get_double("origin_lat", 0.0), meta.get_double("origin_lon", 0.0)};
        proto.cell_size_deg = meta.get_double("cell_size_deg", 0.25);
        proto.rows = static_cast<int>(meta.get_int("rows", 0));
        proto.cols = static_cast<int>(meta.get_int("cols", 0));

        std::vector<WeatherField> fields;
        auto in = open_in(dir / "weather.csv");
        line_no = 0;
        csv::next_line(in, line, line_no);
        std::string current;
        while (csv::next_line(in, line, line_no)) {
            const auto cells = csv::split_line(line);
            if (cells.size() != 3 + kWeatherChannels.size()) {
                throw Error(ErrorCode::RowError, "weather.csv line " + std::to_string(line_no));
            }
            if (fields.empty() || cells[0] != current) {
                current = cells[0];
                fields.push_back(proto);
                fields.back().valid_at = parse_instant(current);
                fields.back().cells.resize(static_cast<std::size_t>(proto.rows) * proto.cols);
            }
            const int r = static_cast<int>(to_double(cells[1], "row"));
            const int c = static_cast<int>(to_double(cells[2], "col"));
            if (r < 0 || r >= proto.rows || c < 0 || c >= proto.cols) {
                throw Error(ErrorCode::OutOfRange, "cell outside grid", "weather.csv");
            }
            WeatherCell& w = fields.back().cells[static_cast<std::size_t>(r) * proto.cols + c];
            w.wind_direction = to_double(cells[3], "wind_direction");
            w.wind_speed = to_double(cells[4], "wind_speed");
            w.humidity = to_double(cells[5], "humidity");
            for (std::size_t i = 0; i < w.air_quality.size(); ++i) w.air_quality[i] = to_double(cells[6 + i], "aq");
        }
        for (const auto& f : fields) validate_weather_field(f);
        traffic.weather = WeatherSeries(std::move(fields));
    }
    return traffic;
}

}  // namespace harbor
