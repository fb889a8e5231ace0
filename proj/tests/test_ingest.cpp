#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harbor/geo.hpp"
#include "harbor/ingest.hpp"
#include "harbor/synth.hpp"
#include "support.hpp"

using namespace harbor;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double arrival_spread(double perturbation, std::uint64_t seed) {
    SynthConfig c;
    c.seed = seed;
    c.n_vessels = 12;
    c.weather_perturbation = perturbation;
    const Traffic t = generate_traffic(c);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < t.voyages.size(); ++i) {
        const double d = minutes_between(t.voyages[i].promised_eta, t.outcomes[i].actual_arrival);
        sum += d;
        sum2 += d * d;
    }
    const double n = static_cast<double>(t.voyages.size());
    return std::sqrt(std::max(0.0, sum2 / n - (sum / n) * (sum / n)));
}

}  // namespace

TEST_CASE("reference AIS sample") {
    const auto r = parse_ais_csv(testing::data_file("sample_ais.csv"));
    REQUIRE(r.records.size() == 10);
    const auto unavailable = std::count_if(r.records.begin(), r.records.end(), [](const AisRecord& a) { return !a.heading; });
    CHECK(unavailable == 6);
    const auto no_rot = std::count_if(r.records.begin(), r.records.end(), [](const AisRecord& a) { return !a.rot; });
    CHECK(no_rot == 7);
    CHECK(r.records[0].heading == 137);
    CHECK(r.records[0].mmsi == "Ship₁");
    CHECK(r.records[2].sog == 8.8);
    CHECK(r.records[2].cog == 226.4);
    CHECK(format_instant_ais(r.records[9].timestamp) == "2019-07-03 00:00:41.189244 UTC");
}

TEST_CASE("reference IoT sample") {
    const auto r = parse_iot_csv(testing::data_file("sample_iot.csv"));
    REQUIRE(r.records.size() == 10);
    const IotRecord& yt = r.records[0];
    CHECK(yt.equipment_index == "YT₁");
    CHECK(yt.device_id == 1);
    CHECK(yt.position == LatLon{35.1078, 129.0972});
    CHECK(yt.altitude == 14);
    CHECK(yt.velocity == 2);
    CHECK(yt.direction == 193);
    CHECK(yt.work_type == WorkType::Unloading);
    CHECK(yt.timestamp == parse_instant("2021-10-31T20:59:59Z"));
    const IotRecord& qc = r.records[3];
    CHECK(qc.equipment_index == "QC₁");
    CHECK(qc.velocity == 0);
    CHECK(qc.direction == 0);
    CHECK(r.records[1].work_type == WorkType::Loading);
}

TEST_CASE("parser edge cases") {
    const std::string header = "Timestamp,MMSI,Latitude,Longitude,SOG,COG,Heading,ROT,Draught,Ship Type,Ship Length,Ship Width\n";
    std::istringstream empty(header);
    CHECK(parse_ais_csv(empty).records.empty());

    std::istringstream text(header + "2019-07-03 00:00:15 UTC,S,35,129,fast,0,0,0,4,52,30,10\n");
    try {
        parse_ais_csv(text);
        FAIL("expected RowError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RowError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(e.field() == "SOG");
    }

    std::istringstream lenient(header + "2019-07-03 00:00:15 UTC,S,35,129,fast,0,0,0,4,52,30,10\n" +
                               "2019-07-03 00:00:16 UTC,S,35,129,1,0,0,0,4,52,30,10\n");
    const auto lr = parse_ais_csv(lenient, ParseMode::Lenient);
    CHECK(lr.records.size() == 1);
    REQUIRE(lr.issues.size() == 1);
    CHECK(lr.issues[0].line == 2);
    CHECK(lr.issues[0].cause == ErrorCode::OutOfRange);

    std::istringstream wrong("Timestamp,MMSI\n");
    CHECK_THROWS_AS(parse_ais_csv(wrong), Error);

    std::istringstream work("Timestamp,Equipment Index,Device Identify,Latitude,Longitude,Altitude,Velocity,Direction,Work Type\n"
                            "2021-10-31T20:59:59Z,YT1,1,35.1,129.1,14,2,193,X\n");
    const auto wr = parse_iot_csv(work, ParseMode::Lenient);
    REQUIRE(wr.issues.size() == 1);
    CHECK(wr.issues[0].cause == ErrorCode::InvalidWorkType);
}

TEST_CASE("csv round trip") {
    const auto ais = parse_ais_csv(testing::data_file("sample_ais.csv")).records;
    std::stringstream s;
    write_ais_csv(s, ais);
    CHECK(parse_ais_csv(s).records == ais);

    const auto iot = parse_iot_csv(testing::data_file("sample_iot.csv")).records;
    std::stringstream t;
    write_iot_csv(t, iot);
    CHECK(parse_iot_csv(t).records == iot);

    SynthConfig c;
    c.n_vessels = 3;
    const Traffic traffic = generate_traffic(c);
    std::stringstream u;
    write_ais_csv(u, traffic.ais);
    CHECK(parse_ais_csv(u).records == traffic.ais);
}

TEST_CASE("synthetic traffic is deterministic") {
    SynthConfig c;
    c.seed = 17;
    c.n_vessels = 5;
    const auto dir = std::filesystem::temp_directory_path() / "harbor_test_synth";
    std::filesystem::remove_all(dir);
    const auto a = write_traffic(generate_traffic(c), dir / "a");
    const auto b = write_traffic(generate_traffic(c), dir / "b");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(slurp(a[i]) == slurp(b[i]));

    const Traffic back = read_traffic(dir / "a");
    const Traffic orig = generate_traffic(c);
    CHECK(back.ais == orig.ais);
    CHECK(back.voyages.size() == orig.voyages.size());
    CHECK(back.weather.size() == orig.weather.size());
    std::filesystem::remove_all(dir);

    c.n_vessels = 0;
    const Traffic none = generate_traffic(c);
    CHECK(none.voyages.empty());
    CHECK(none.ais.empty());
}

TEST_CASE("unperturbed traffic arrives on the kinematic schedule") {
    SynthConfig c;
    c.seed = 4;
    c.n_vessels = 10;
    c.weather_perturbation = 0.0;
    const Traffic t = generate_traffic(c);
    for (std::size_t i = 0; i < t.voyages.size(); ++i) {
        const auto trace = t.trace(t.voyages[i].vessel_id);
        double mean_sog = 0.0;
        for (const auto& r : trace) mean_sog += r.sog / static_cast<double>(trace.size());
        const double predicted = route_length_nm(t.voyages[i].route) / mean_sog * 60.0;
        const double actual = minutes_between(t.voyages[i].departure, t.outcomes[i].actual_arrival);
        CHECK(std::abs(predicted - actual) <= c.sampling_minutes);
    }
}

TEST_CASE("arrival spread grows with the weather perturbation") {
    const double levels[] = {0.0, 0.5, 1.0, 2.0};
    double prev = -1.0;
    for (double p : levels) {
        double spread = 0.0;
        for (std::uint64_t s = 1; s <= 20; ++s) spread += arrival_spread(p, s) / 20.0;
        CHECK(spread > prev);
        prev = spread;
    }
}

TEST_CASE("traces respect the voyage speed cap") {
    SynthConfig c;
    c.seed = 8;
    c.n_vessels = 15;
    c.weather_perturbation = 2.0;
    const Traffic t = generate_traffic(c);
    for (const auto& v : t.voyages) {
        for (const auto& r : t.trace(v.vessel_id)) CHECK(r.sog <= v.max_speed);
    }
}

TEST_CASE("synth config validation") {
    CHECK_THROWS_AS(synth_config_from(KvConfig::parse("synth.speed_min_knots = 20\nsynth.speed_max_knots = 10")), Error);
    CHECK(synth_config_from(KvConfig::parse("synth.n_vessels = 3")).n_vessels == 3);
}
