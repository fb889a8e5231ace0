#include "doctest.h"

#include <cmath>
#include <limits>

#include "harbor/dataset.hpp"
#include "harbor/eta.hpp"
#include "harbor/geo.hpp"
#include "harbor/predictor.hpp"
#include "support.hpp"

using namespace harbor;
using testing::Gen;

namespace {

const Instant kNow = parse_instant("2021-05-01T08:00:00Z");

double equator_deg(double nm) { return nm * 1.852 / (6371.0 * kPi / 180.0); }

Voyage straight_voyage(double length_nm, double hours_to_eta, double max_speed) {
    Voyage v;
    v.vessel_id = "V1";
    v.route = {{0.0, 0.0}, {0.0, equator_deg(length_nm)}};
    v.departure = add_minutes(kNow, -60);
    v.promised_eta = add_minutes(kNow, hours_to_eta * 60.0);
    v.max_speed = max_speed;
    return v;
}

class Constant final : public Predictor {
public:
    explicit Constant(double m) : m_(m) {}
    std::string id() const override { return "constant"; }
    bool fitted() const override { return true; }
    void fit(std::span<const TensorSummary>, std::span<const KinematicSummary>, std::span<const double>) override {}
    double predict_minutes(const TensorSummary&, const KinematicSummary&) const override { return m_; }
    using Predictor::predict_minutes;
    nlohmann::json to_json() const override { return {}; }

private:
    double m_;
};

std::vector<EtaExample> examples_for(std::uint64_t seed, int vessels, double perturbation) {
    SynthConfig c;
    c.seed = seed;
    c.n_vessels = vessels;
    c.weather_perturbation = perturbation;
    return build_examples(generate_traffic(c), DatasetOptions{});
}

}  // namespace

TEST_CASE("rta detection") {
    const Voyage v = straight_voyage(100.0, 4.0, 20.0);
    CHECK_FALSE(is_rta(detect_rta(v.route.back(), kNow, v)));

    const RtaStatus late = detect_rta(v.route.front(), kNow, v);
    REQUIRE(is_rta(late));
    CHECK(std::get<RtaDetected>(late).required_speed == doctest::Approx(25.0).epsilon(1e-9));
    CHECK(std::get<RtaDetected>(late).deficit_minutes == doctest::Approx(60.0).epsilon(1e-9));

    CHECK_FALSE(is_rta(detect_rta(v.route.front(), kNow, straight_voyage(100.0, 10.0, 20.0))));

    // past the promised ETA with distance to go
    const Voyage overdue = straight_voyage(100.0, -1.0, 20.0);
    const RtaStatus gone = detect_rta(v.route.front(), kNow, overdue);
    REQUIRE(is_rta(gone));
    CHECK(std::get<RtaDetected>(gone).deficit_minutes == doctest::Approx(300.0).epsilon(1e-9));

    RtaOptions relaxed;
    relaxed.speed_bound_multiplier = 1.3;
    CHECK_FALSE(is_rta(detect_rta(v.route.front(), kNow, v, relaxed)));

    Voyage empty = v;
    empty.route.clear();
    CHECK_THROWS_AS(detect_rta({0, 0}, kNow, empty), Error);
}

TEST_CASE("rta detection is monotone in remaining distance") {
    Gen g(12);
    for (int trial = 0; trial < 300; ++trial) {
        const Voyage v = straight_voyage(g.range(20, 300), g.range(0.5, 20), g.range(8, 25));
        const double total = route_length_nm(v.route);
        bool seen = false;
        for (int k = 40; k >= 0; --k) {  // walk backwards: remaining distance grows
            const bool rta = is_rta(detect_rta(point_along_route(v.route, total * k / 40.0), kNow, v));
            if (seen) CHECK(rta);
            seen = seen || rta;
        }
    }
}

TEST_CASE("kinematic eta") {
    const Voyage v = straight_voyage(50.0, 10.0, 20.0);
    const EtaPrediction p = predict_eta_kinematic(v.route.front(), kNow, v, 10.0);
    CHECK(minutes_between(kNow, p.eta) == doctest::Approx(300.0).epsilon(1e-9));
    CHECK(p.predictor_id == "kinematic");
    CHECK(predict_eta_kinematic(v.route.back(), kNow, v, 10.0).eta == kNow);
    try {
        predict_eta_kinematic(v.route.front(), kNow, v, 0.0);
        FAIL("expected ZeroSpeed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroSpeed);
    }
}

TEST_CASE("evaluate hand cases") {
    const std::vector<double> same{10, 20, 30};
    const MetricReport zero = evaluate(same, same);
    CHECK(zero.rmse_minutes == 0.0);
    CHECK(zero.mape_percent == 0.0);
    CHECK(zero.n == 3);

    const std::vector<double> p{12, 18}, a{10, 20};
    const MetricReport two = evaluate(p, a);
    CHECK(two.rmse_minutes == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(two.mape_percent == doctest::Approx(15.0).epsilon(1e-12));

    const std::vector<double> p1{5}, a1{4};
    const MetricReport one = evaluate(p1, a1);
    CHECK(one.rmse_minutes == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.mape_percent == doctest::Approx(25.0).epsilon(1e-12));

    const std::vector<double> none;
    const std::vector<double> zeros{0, 1};
    auto code_of = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code_of([&] { evaluate(none, none); }) == ErrorCode::Empty);
    CHECK(code_of([&] { evaluate(p, a1); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { evaluate(p, zeros); }) == ErrorCode::ZeroActual);
}

TEST_CASE("evaluate scaling property") {
    Gen g(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = g.integer(1, 30);
        std::vector<double> p, a;
        for (int i = 0; i < n; ++i) {
            a.push_back(g.range(1, 500));
            p.push_back(a.back() + g.range(-100, 100));
        }
        const double k = g.range(0.1, 10);
        std::vector<double> ps, as;
        for (int i = 0; i < n; ++i) {
            ps.push_back(p[i] * k);
            as.push_back(a[i] * k);
        }
        const MetricReport base = evaluate(p, a), scaled = evaluate(ps, as);
        CHECK(scaled.mape_percent == doctest::Approx(base.mape_percent).epsilon(1e-9));
        CHECK(scaled.rmse_minutes == doctest::Approx(base.rmse_minutes * k).epsilon(1e-9));
        CHECK((base.rmse_minutes == 0.0) == (p == a));
    }
}

TEST_CASE("model eta is clamped to now") {
    GridTensor t(1, 3, 3, {"occupancy", "wind_direction"});
    const KinematicSummary kin{10, 10, 10};
    CHECK(predict_eta_model(Constant(-30), t, kin, kNow).eta == kNow);
    CHECK(minutes_between(kNow, predict_eta_model(Constant(45), t, kin, kNow).eta) == doctest::Approx(45));

    Gen g(2);
    for (int i = 0; i < 200; ++i) CHECK(predict_eta_model(Constant(g.range(-1e4, 1e4)), t, kin, kNow).eta >= kNow);
}

TEST_CASE("ridge predictor contract") {
    TensorRidgePredictor ridge;
    const std::vector<EtaExample> ex = examples_for(3, 6, 1.0);
    REQUIRE_FALSE(ex.empty());
    try {
        ridge.predict_minutes(ex[0].tensor, ex[0].kinematics);
        FAIL("expected NotFitted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFitted);
    }
    fit_predictor(ridge, ex);
    CHECK(ridge.fitted());

    TensorSummary wrong = ex[0].tensor;
    wrong.steps += 1;
    try {
        ridge.predict_minutes(wrong, ex[0].kinematics);
        FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }

    const auto back = load_predictor(ridge.to_json());
    for (const auto& e : ex) {
        CHECK(back->predict_minutes(e.tensor, e.kinematics) == ridge.predict_minutes(e.tensor, e.kinematics));
    }
    CHECK(load_predictor(KinematicPredictor().to_json())->id() == "kinematic");
}

TEST_CASE("predictor registry") {
    CHECK(available_predictors() == std::vector<std::string>{"kinematic", "tensor-ridge"});
    try {
        make_predictor("convlstm", GridSpec{});
        FAIL("expected UnknownPredictor");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownPredictor);
        CHECK(std::string(e.what()).find("tensor-ridge") != std::string::npos);
    }
}

TEST_CASE("ridge on unperturbed voyages is within one sampling interval") {
    std::vector<EtaExample> train;
    for (std::uint64_t s = 50; s < 54; ++s) {
        auto ex = examples_for(s, 10, 0.0);
        train.insert(train.end(), ex.begin(), ex.end());
    }
    TensorRidgePredictor ridge;
    fit_predictor(ridge, train);
    const std::vector<EtaExample> test = examples_for(60, 10, 0.0);
    REQUIRE_FALSE(test.empty());
    for (const auto& e : test) {
        CHECK(std::abs(ridge.predict_minutes(e.tensor, e.kinematics) - e.label_minutes) <= 5.0);
    }
}

TEST_CASE("kinematic predictor on unperturbed voyages") {
    const std::vector<EtaExample> test = examples_for(61, 10, 0.0);
    KinematicPredictor k;
    for (const auto& e : test) CHECK(std::abs(k.predict_minutes(e.tensor, e.kinematics) - e.label_minutes) <= 5.0);
}

TEST_CASE("parallel dataset builder matches the serial reference") {
    SynthConfig c;
    c.seed = 77;
    c.n_vessels = 8;
    const Traffic t = generate_traffic(c);
    const auto a = build_examples_serial(t, DatasetOptions{});
    const auto b = build_examples_parallel(t, DatasetOptions{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].vessel_id == b[i].vessel_id);
        CHECK(a[i].now == b[i].now);
        CHECK(a[i].label_minutes == b[i].label_minutes);
        CHECK(a[i].tensor.occupied_mean == b[i].tensor.occupied_mean);
        CHECK(a[i].tensor.ahead_ray == b[i].tensor.ahead_ray);
        CHECK(a[i].kinematics.remaining_nm == b[i].kinematics.remaining_nm);
    }
}

TEST_CASE("distance bucket filter") {
    const auto ex = examples_for(5, 8, 1.0);
    KinematicPredictor k;
    const MetricReport all = evaluate_predictor(k, ex);
    const MetricReport near = evaluate_predictor(k, ex, DistanceBucket{0.0, 54.0});
    const MetricReport far = evaluate_predictor(k, ex, DistanceBucket{54.0, 1e18});
    CHECK(near.n + far.n == all.n);
    CHECK(near.n > 0);
    CHECK(far.n > 0);
}
