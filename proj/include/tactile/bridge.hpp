#pragma once

#include <cstdint>

#include "tactile/units.hpp"

namespace tactile {

/// Published amplifier gain presets.
inline constexpr double kGainWideRange = 22.0;
inline constexpr double kGainFineResolution = 41.36;

/// Quarter bridge feeding an instrumentation amplifier.
///
/// The first divider is r1 (top) over r2 (bottom); the second is r3 (top)
/// over the sensing arm rx (bottom). The differential output is the second
/// node minus the first, so a rising rx raises the output.
struct BridgeConfig {
    Volts supply_voltage{5.0};
    Ohms r1{100e3};
    Ohms r2{100e3};
    Ohms r3{100e3};
    Ohms rx_rest{100e3};
    double amplifier_gain = kGainFineResolution;
    double noise_fraction = 0.01;
    Volts rail_low{0.0};
    Volts rail_high{5.0};

    /// All four arms equal to rx (the simplest balanced choice).
    static BridgeConfig equal_arms(Ohms rx, double gain);

    void validate() const;
};

struct AdcConfig {
    int bits = 8;
    double sample_rate = 9.6;
    Volts full_scale{5.0};

    std::int64_t max_code() const { return (std::int64_t{1} << bits) - 1; }
    Volts lsb() const { return full_scale / static_cast<double>(max_code()); }

    void validate() const;
};

/// r1/r2 == r3/rx_rest within 1e-9 relative.
bool is_balanced(const BridgeConfig& cfg);

/// Output resistance of the equal-arm bridge with the sensing arm at rx + delta_rx.
Ohms thevenin_resistance(Ohms rx, Ohms delta_rx);

/// d(thevenin_resistance)/d(delta_rx) = rx^2 / (2 rx + delta_rx)^2.
double thevenin_slope(Ohms rx, Ohms delta_rx);

/// Throws ConfigError when the bridge is not balanced at rest.
Volts bridge_output(const BridgeConfig& cfg, Ohms delta_rx);

/// gain * v_in * (1 + noise_fraction * noise_sample), clipped to the rails.
/// noise_sample must lie in [-1, 1].
Volts amplify(const BridgeConfig& cfg, Volts v_in, double noise_sample);

/// Round-half-up quantization of a clamped voltage.
std::int64_t adc_sample(const AdcConfig& adc, Volts v);

/// Throws UsageError for codes outside [0, 2^bits - 1].
Volts dequantize(const AdcConfig& adc, std::int64_t code);

}  // namespace tactile
