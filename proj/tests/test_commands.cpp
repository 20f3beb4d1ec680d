#include <catch_amalgamated.hpp>

#include <sstream>

#include "tactile/bridge.hpp"
#include "tactile/chain.hpp"
#include "tactile/commands.hpp"
#include "tactile/error.hpp"
#include "tactile/text_format.hpp"

using namespace tactile;
using Catch::Matchers::WithinAbs;

namespace {

LoadScenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    return read_scenario(in);
}

std::vector<SampleLine> run_simulation(const ToolkitConfig& cfg, const LoadScenario& s) {
    std::ostringstream out;
    simulate(cfg, s, out);
    std::istringstream in(out.str());
    std::vector<SampleLine> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(parse_sample_line(line));
    return lines;
}

ToolkitConfig noiseless() {
    ToolkitConfig cfg;
    cfg.force_bridge.noise_fraction = 0.0;
    return cfg;
}

PolynomialModel calibrated_linear(const ToolkitConfig& cfg) {
    ToolkitConfig c = cfg;
    c.cv.min_order = c.cv.max_order = 1;
    return calibrate(c, simulate_protocol_dataset(c)).model;
}

}  // namespace

TEST_CASE("config parsing", "[config]") {
    std::istringstream in("seed=9\nbridge.gain=22\nsignal_units=adc_code\nestimator.filter_window=6\n"
                          "fabric.rest_resistance=50000\nelement3.trigger_threshold=0.12\n");
    const auto cfg = load_config(in);
    CHECK(cfg.seed == 9);
    CHECK(cfg.force_bridge.amplifier_gain == 22);
    CHECK(cfg.signal_units == "adc_code");
    CHECK(cfg.filter_window == 6);
    CHECK(cfg.force_bridge.rx_rest.value() == 50000);
    CHECK(cfg.force_bridge.r1.value() == 50000);
    CHECK(cfg.elements[2].trigger_threshold.value() == 0.12);
    CHECK(cfg.sensing_spec().range == 1.5);

    std::istringstream unknown("bogus=1\n");
    CHECK_THROWS_AS(load_config(unknown), ConfigError);
    std::istringstream unbalanced("bridge.r3=200000\n");
    CHECK_THROWS_AS(load_config(unbalanced), ConfigError);
    std::istringstream units("signal_units=amps\n");
    CHECK_THROWS_AS(load_config(units), ConfigError);
    std::istringstream notnum("bridge.gain=high\n");
    CHECK_THROWS_AS(load_config(notnum), ConfigError);
}

TEST_CASE("defaults carry the reference hardware values", "[config]") {
    const ToolkitConfig cfg;
    CHECK(cfg.force_bridge.amplifier_gain == 41.36);
    CHECK(cfg.filter_window == 4);
    CHECK(cfg.cv.folds == 5);
    CHECK(cfg.cv.repeats == 20);
    CHECK(cfg.adc.bits == 8);
    CHECK(cfg.adc.sample_rate == 9.6);
    CHECK(cfg.force_bridge.noise_fraction == 0.01);
    CHECK(cfg.fabric.rest_resistance.value() == 100e3);
    CHECK(cfg.fabric.max_fractional_delta == 0.35);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("sensor chain composes the module models", "[chain]") {
    const ToolkitConfig cfg = noiseless();
    const SensorChain chain(cfg);
    const Newtons f(0.49);
    const double expected = dequantize(
        cfg.adc, adc_sample(cfg.adc, amplify(cfg.force_bridge,
                                              bridge_output(cfg.force_bridge, fabric_delta_r(cfg.fabric, f)),
                                              0.0)))
                                .value();
    CHECK(chain.force_signal(f) == expected);
    CHECK(chain.force_signal(Newtons(0)) == 0.0);

    const auto thr = chain.element_thresholds();
    for (std::size_t i = 0; i < kElementCount; ++i) {
        CHECK(chain.element_signal(i, Newtons(0)) == 0.0);
        CHECK(chain.element_signal(i, cfg.elements[i].trigger_threshold) > thr[i]);
        CHECK(chain.element_signal(i, Newtons(cfg.elements[i].trigger_threshold.value() * 0.99)) < thr[i]);
    }

    ToolkitConfig counts = cfg;
    counts.signal_units = "adc_code";
    const SensorChain raw(counts);
    CHECK(raw.force_signal(f) == static_cast<double>(adc_sample(cfg.adc, Volts(expected))));
}

TEST_CASE("simulate emits the sample clock without drift", "[commands]") {
    const ToolkitConfig cfg;
    const auto lines = run_simulation(cfg, parse_scenario("t,force_n,quadrants\n0,0,\n1,0,\n"));
    REQUIRE(lines.size() == 10);
    for (std::size_t k = 0; k < lines.size(); ++k) {
        CHECK(lines[k].time == static_cast<double>(k) / 9.6);
        for (double c : lines[k].channels) CHECK(c == 0.0);
    }
    CHECK(lines.back().time == 0.9375);

    const auto long_run = run_simulation(cfg, parse_scenario("t,force_n,quadrants\n0,0,\n600,0,\n"));
    REQUIRE(long_run.size() == 5761);
    for (std::size_t k = 0; k < long_run.size(); ++k) {
        CHECK(long_run[k].time == static_cast<double>(k) / 9.6);
    }
    CHECK(sample_count(1.0, 10.0) == 11);
}

TEST_CASE("simulate a held 50 gw press on quadrant 2", "[commands]") {
    const ToolkitConfig cfg = noiseless();
    const auto lines = run_simulation(cfg, parse_scenario("t,force_n,quadrants\n0,0.49,2\n2,0.49,2\n"));
    const SensorChain chain(cfg);
    const auto thr = chain.element_thresholds();
    for (const auto& l : lines) {
        CHECK(l.channels[0] == chain.force_signal(Newtons(0.49)));
        CHECK(l.channels[1] == 0.0);
        CHECK(l.channels[2] >= thr[1]);
        CHECK(l.channels[3] == 0.0);
        CHECK(l.channels[4] == 0.0);
    }

    // Estimating the same stream lands on 50 gw within one resolution step.
    const auto est_cfg = make_estimator_config(cfg, calibrated_linear(cfg));
    Estimator est(est_cfg);
    EstimateFrame frame;
    for (const auto& l : lines) frame = est.process(l.time, l.channels);
    CHECK_THAT(frame.filtered_force, WithinAbs(0.49, est_cfg.resolution));
    CHECK(frame.element_state == ElementStates{false, true, false, false});
    CHECK(frame.pattern == ContactPattern::point);
}

TEST_CASE("simulate is deterministic under a seed", "[commands]") {
    ToolkitConfig cfg;
    const auto s = parse_scenario("t,force_n,quadrants\n0,0,\n0.5,0.3,1\n2,0,\n3,0,\n");
    std::ostringstream a, b, c;
    simulate(cfg, s, a);
    simulate(cfg, s, b);
    CHECK(a.str() == b.str());
    cfg.seed = 2;
    simulate(cfg, s, c);
    CHECK(a.str() != c.str());

    CHECK_THROWS_AS(simulate(cfg, parse_scenario("t,force_n,quadrants\n1,0,\n2,0,\n"), a), DomainError);
}

TEST_CASE("protocol dataset follows the weight protocol", "[commands]") {
    const auto data = simulate_protocol_dataset(ToolkitConfig{});
    REQUIRE(data.size() == 100);
    CHECK(data.signal_units == "volt");
    for (const auto& s : data.samples) {
        REQUIRE(s.weight_gw.has_value());
        CHECK_THAT(s.force, WithinAbs(*s.weight_gw * 0.0098, 1e-12));
        CHECK(s.signal > 0.0);
    }
}

TEST_CASE("calibrate persists a units-tagged model", "[commands]") {
    ToolkitConfig cfg;
    const auto outcome = calibrate(cfg, simulate_protocol_dataset(cfg));
    CHECK(outcome.report.scores.size() == 5);
    CHECK(outcome.model.order() == outcome.report.selected_order);
    CHECK(outcome.model.signal_units() == "volt");

    std::ostringstream table;
    write_fit_report(table, outcome.report);
    CHECK(table.str().rfind("order,mean_train_rmse_n,mean_test_rmse_n\n1,", 0) == 0);

    CalibrationDataset other = simulate_protocol_dataset(cfg);
    other.signal_units = "adc_code";
    CHECK_THROWS_AS(calibrate(cfg, other), ConfigError);
}

TEST_CASE("estimate streams one frame per sample", "[commands]") {
    ToolkitConfig cfg;
    const auto est_cfg = make_estimator_config(cfg, calibrated_linear(cfg));
    std::istringstream zeros("0,0,0,0,0,0\n0.1,0,0,0,0,0\n# note\n0.2,0,0,0,0,0\n");
    std::ostringstream frames;
    CHECK(estimate(est_cfg, zeros, frames) == 3);
    CHECK(frames.str() == "0,0,0,0,0,0,0,none\n0.1,0,0,0,0,0,0,none\n0.2,0,0,0,0,0,0,none\n");

    std::istringstream backwards("0,0,0,0,0,0\n0.2,0,0,0,0,0\n0.1,0,0,0,0,0\n");
    std::ostringstream sink;
    try {
        estimate(est_cfg, backwards, sink);
        FAIL("expected StreamError");
    } catch (const StreamError& e) {
        CHECK(e.line() == 3);
    }

    ToolkitConfig counts = cfg;
    counts.signal_units = "adc_code";
    CHECK_THROWS_AS(make_estimator_config(counts, calibrated_linear(cfg)), ConfigError);
}

TEST_CASE("report summarises frames", "[commands]") {
    const ToolkitConfig cfg;
    const auto truth = parse_scenario("t,force_n,quadrants\n0,0.5,1\n1,0,\n");
    std::string frames;
    for (int k = 0; k < 10; ++k) {
        EstimateFrame f;
        f.time = k * 0.1;
        f.raw_force = f.filtered_force = 0.5;
        f.element_state = {true, false, false, false};
        f.pattern = ContactPattern::point;
        frames += format_frame_line(f) + "\n";
    }
    std::istringstream in(frames);
    ReportOptions opt;
    opt.truth = truth;
    opt.require_rmse = true;
    const auto s = summarize(cfg, in, opt);
    CHECK(s.frames == 10);
    REQUIRE(s.rmse.has_value());
    CHECK(*s.rmse == 0.0);
    CHECK(s.rmse_frames == 7);
    CHECK(s.duty_cycle[0] == 1.0);
    CHECK(s.saturation_count == 0);

    std::istringstream clamped("0,1,1,0,0,0,0,none\n0.1,1,1,0,0,0,0,none\n0.2,0.3,0.3,0,0,0,0,none\n");
    const auto sat = summarize(cfg, clamped, {});
    CHECK(sat.saturation_count == 2);
    CHECK_FALSE(sat.rmse.has_value());

    std::istringstream any("0,0,0,0,0,0,0,none\n");
    ReportOptions need;
    need.require_rmse = true;
    CHECK_THROWS_AS(summarize(cfg, any, need), UsageError);

    std::ostringstream text;
    write_report(text, s);
    CHECK(text.str().find("rmse_n: 0.000000\n") != std::string::npos);
    CHECK(text.str().find("saturation_count: 0\n") != std::string::npos);
}
