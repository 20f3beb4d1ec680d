#pragma once

#include <array>
#include <cstdint>

#include "tactile/config.hpp"

namespace tactile {

/// Per-tick amplifier noise draws, one per channel, each in [-1, 1].
using ChannelNoise = std::array<double, kElementCount + 1>;

/// Load -> resistance -> bridge -> amplifier -> ADC for all five channels,
/// reported in the configured signal units.
class SensorChain {
public:
    explicit SensorChain(const ToolkitConfig& cfg);

    std::int64_t force_code(Ohms fabric_delta, double noise = 0.0) const;
    std::int64_t element_code(std::size_t element, Ohms resistance, double noise = 0.0) const;

    /// ADC code expressed in the configured units (volts or raw counts).
    double to_signal(std::int64_t code) const;

    ChannelSignals read(const LoadState& state, const ChannelNoise& noise) const;

    /// Noise-free force-layer signal for a force.
    double force_signal(Newtons force) const;
    /// Noise-free signal of one element carrying a force.
    double element_signal(std::size_t element, Newtons force) const;

    /// Each element's pressed signal at its trigger force, scaled by the
    /// detection fraction: the level the estimator compares against.
    ElementSignals element_thresholds() const;

    const BridgeConfig& element_bridge(std::size_t element) const { return element_bridges_[element]; }

private:
    ToolkitConfig cfg_;
    std::array<BridgeConfig, kElementCount> element_bridges_;
};

}  // namespace tactile
