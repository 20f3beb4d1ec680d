#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tactile/bridge.hpp"
#include "tactile/calibration.hpp"
#include "tactile/estimator.hpp"
#include "tactile/sensor_physics.hpp"

namespace tactile {

inline constexpr std::string_view kUnitsVolt = "volt";
inline constexpr std::string_view kUnitsAdcCode = "adc_code";

/// Everything a command needs, loaded from a flat key=value file. Every
/// default is the value the reference hardware used where one exists.
struct ToolkitConfig {
    std::uint64_t seed = 1;

    FabricModel fabric;
    std::array<ElementModel, kElementCount> elements = default_elements();

    /// Force-layer bridge. rx_rest always tracks fabric.rest_resistance.
    BridgeConfig force_bridge;
    /// Element bridges use equal arms at each element's rest resistance and
    /// share supply, noise and rails with the force bridge.
    double element_gain = 10.0;
    AdcConfig adc;

    /// Units of every sample-stream channel: "volt" or "adc_code".
    std::string signal_units{kUnitsVolt};

    std::size_t filter_window = 4;
    std::optional<double> sensing_range;  // defaults to range_for_gain(force gain)
    std::optional<double> resolution;
    double hysteresis_fraction = 0.0;
    /// Element "on" level as a fraction of the element's pressed signal.
    double detection_fraction = 0.5;

    CrossValidationOptions cv;

    SensingSpec sensing_spec() const;
    void validate() const;
};

/// Throws ConfigError for unknown keys or invalid values, ParseError for
/// malformed lines.
ToolkitConfig load_config(std::istream& in);
ToolkitConfig load_config_file(const std::string& path);

}  // namespace tactile
