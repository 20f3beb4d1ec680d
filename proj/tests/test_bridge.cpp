#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tactile/bridge.hpp"
#include "tactile/error.hpp"

using namespace tactile;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

BridgeConfig arms(double r1, double r2, double r3, double rx) {
    BridgeConfig c;
    c.r1 = Ohms(r1);
    c.r2 = Ohms(r2);
    c.r3 = Ohms(r3);
    c.rx_rest = Ohms(rx);
    return c;
}

}  // namespace

TEST_CASE("balance rule", "[bridge]") {
    CHECK(is_balanced(arms(100e3, 100e3, 100e3, 100e3)));
    CHECK(is_balanced(arms(200e3, 100e3, 200e3, 100e3)));
    CHECK_FALSE(is_balanced(arms(100e3, 100e3, 200e3, 100e3)));
}

TEST_CASE("thevenin resistance of the equal-arm bridge", "[bridge]") {
    CHECK_THAT(thevenin_resistance(Ohms(100e3), Ohms(0)).value(), WithinRel(100e3, 1e-12));
    // 50k + 100k * 135 / 235
    CHECK_THAT(thevenin_resistance(Ohms(100e3), Ohms(35e3)).value(), WithinAbs(107446.809, 1e-3));
    CHECK(thevenin_slope(Ohms(100e3), Ohms(0)) == 0.25);
    CHECK_THROWS_AS(thevenin_resistance(Ohms(100e3), Ohms(-1)), DomainError);
}

TEST_CASE("thevenin slope matches finite differences and decreases", "[bridge][property]") {
    const double rx = 100e3;
    auto rt = [&](double d) { return thevenin_resistance(Ohms(rx), Ohms(d)).value(); };
    double previous = 1.0;
    for (int i = 0; i <= 350; ++i) {
        const double d = 0.35 * rx * i / 350.0;
        const double h = 1.0;
        // One-sided at the lower boundary where delta < 0 is outside the domain.
        const double fd = i == 0 ? (rt(d + h) - rt(d)) / h : oracle::central_difference(rt, d, h);
        const double closed = thevenin_slope(Ohms(rx), Ohms(d));
        CHECK_THAT(closed, WithinRel(fd, i == 0 ? 1e-4 : 1e-6));
        CHECK(closed < previous);
        previous = closed;
    }
    CHECK_THAT(thevenin_slope(Ohms(rx), Ohms(0.35 * rx)), WithinAbs(0.1811, 5e-5));
}

TEST_CASE("bridge output", "[bridge]") {
    const BridgeConfig c = arms(100e3, 100e3, 100e3, 100e3);
    CHECK(bridge_output(c, Ohms(0)).value() == 0.0);
    CHECK_THAT(bridge_output(c, Ohms(35e3)).value(), WithinAbs(0.37234, 1e-5));
    CHECK_THAT(bridge_output(c, Ohms(1e3)).value(), WithinAbs(0.0124378, 1e-7));
    CHECK_THROWS_AS(bridge_output(arms(100e3, 100e3, 200e3, 100e3), Ohms(0)), ConfigError);
}

TEST_CASE("bridge output is null at rest, increasing, and near-linear for small deltas",
          "[bridge][property]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(1e3, 1e7);
    for (int trial = 0; trial < 200; ++trial) {
        BridgeConfig c;
        c.r2 = Ohms(r(rng));
        c.r3 = Ohms(r(rng));
        c.rx_rest = Ohms(r(rng));
        c.r1 = Ohms(c.r2.value() * c.r3.value() / c.rx_rest.value());
        REQUIRE(is_balanced(c));
        CHECK(std::abs(bridge_output(c, Ohms(0)).value()) < 1e-12 * c.supply_voltage.value());
        double previous = bridge_output(c, Ohms(0)).value();
        for (int i = 1; i <= 50; ++i) {
            const double v = bridge_output(c, Ohms(c.rx_rest.value() * 0.01 * i)).value();
            CHECK(v > previous);
            previous = v;
        }
    }

    const BridgeConfig eq = arms(100e3, 100e3, 100e3, 100e3);
    for (int i = 1; i <= 500; ++i) {
        const double d = 0.05 * 100e3 * i / 500.0;
        const double exact = bridge_output(eq, Ohms(d)).value();
        const double approx = 5.0 * d / (4.0 * 100e3);
        CHECK(std::abs(exact - approx) / exact <= 0.026);
    }
}

TEST_CASE("amplifier gain, noise and rails", "[bridge]") {
    BridgeConfig c;
    c.amplifier_gain = 41.36;
    CHECK(amplify(c, Volts(0), 0.7).value() == 0.0);
    CHECK(amplify(c, Volts(0.2), 0).value() == 5.0);
    c.amplifier_gain = 22;
    CHECK_THAT(amplify(c, Volts(0.1), 0).value(), WithinRel(2.2, 1e-12));
    CHECK_THAT(amplify(c, Volts(0.1), 1.0).value(), WithinRel(2.2 * 1.01, 1e-12));
    CHECK_THAT(amplify(c, Volts(0.1), -1.0).value(), WithinRel(2.2 * 0.99, 1e-12));
    CHECK(amplify(c, Volts(-0.1), 0).value() == 0.0);
    CHECK_THROWS_AS(amplify(c, Volts(0.1), 1.5), UsageError);

    c.noise_fraction = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double v = 0.2 * i / 100.0;  // 22 * 0.2 = 4.4 V, below the rail
        CHECK(amplify(c, Volts(v), 0.3).value() == 22 * v);
    }
}

TEST_CASE("adc sampling and dequantization", "[bridge]") {
    const AdcConfig adc;
    CHECK(adc_sample(adc, Volts(5.0)) == 255);
    CHECK(adc_sample(adc, Volts(0.0)) == 0);
    CHECK(adc_sample(adc, Volts(2.5)) == 128);
    CHECK(adc_sample(adc, Volts(7.0)) == 255);
    CHECK(adc_sample(adc, Volts(-1.0)) == 0);
    CHECK(dequantize(adc, 255).value() == 5.0);
    CHECK(dequantize(adc, 0).value() == 0.0);
    CHECK_THAT(dequantize(adc, 51).value(), WithinRel(1.0, 1e-12));
    CHECK_THROWS_AS(dequantize(adc, 256), UsageError);
    CHECK_THROWS_AS(dequantize(adc, -1), UsageError);
}

TEST_CASE("quantization error stays within half an LSB", "[bridge][property]") {
    for (int bits : {1, 4, 8, 12}) {
        AdcConfig adc;
        adc.bits = bits;
        const double half_lsb = adc.full_scale.value() / (2.0 * static_cast<double>(adc.max_code()));
        for (int i = 0; i <= 20000; ++i) {
            const double v = -1.0 + 7.0 * i / 20000.0;
            const double clamped = std::clamp(v, 0.0, 5.0);
            const double back = dequantize(adc, adc_sample(adc, Volts(v))).value();
            CHECK(std::abs(back - clamped) <= half_lsb * (1 + 1e-12));
        }
    }
}
