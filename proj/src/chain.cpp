#include "tactile/chain.hpp"

#include "tactile/error.hpp"

namespace tactile {

SensorChain::SensorChain(const ToolkitConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    for (std::size_t i = 0; i < kElementCount; ++i) {
        BridgeConfig b = BridgeConfig::equal_arms(cfg_.elements[i].rest_resistance, cfg_.element_gain);
        b.supply_voltage = cfg_.force_bridge.supply_voltage;
        b.noise_fraction = cfg_.force_bridge.noise_fraction;
        b.rail_low = cfg_.force_bridge.rail_low;
        b.rail_high = cfg_.force_bridge.rail_high;
        element_bridges_[i] = b;
    }
}

std::int64_t SensorChain::force_code(Ohms fabric_delta, double noise) const {
    const Volts bridge = bridge_output(cfg_.force_bridge, fabric_delta);
    return adc_sample(cfg_.adc, amplify(cfg_.force_bridge, bridge, noise));
}

std::int64_t SensorChain::element_code(std::size_t element, Ohms resistance, double noise) const {
    const BridgeConfig& b = element_bridges_.at(element);
    const Ohms delta = resistance - b.rx_rest;
    if (delta.value() < 0.0) throw DomainError("element resistance below its rest value");
    return adc_sample(cfg_.adc, amplify(b, bridge_output(b, delta), noise));
}

double SensorChain::to_signal(std::int64_t code) const {
    if (cfg_.signal_units == kUnitsAdcCode) return static_cast<double>(code);
    return dequantize(cfg_.adc, code).value();
}

ChannelSignals SensorChain::read(const LoadState& state, const ChannelNoise& noise) const {
    ChannelSignals out{};
    out[0] = to_signal(force_code(state.fabric_delta, noise[0]));
    for (std::size_t i = 0; i < kElementCount; ++i) {
        out[i + 1] = to_signal(element_code(i, state.element_resistance[i], noise[i + 1]));
    }
    return out;
}

double SensorChain::force_signal(Newtons force) const {
    return to_signal(force_code(fabric_delta_r(cfg_.fabric, force)));
}

double SensorChain::element_signal(std::size_t element, Newtons force) const {
    return to_signal(element_code(element, element_resistance(cfg_.elements.at(element), force)));
}

ElementSignals SensorChain::element_thresholds() const {
    ElementSignals out{};
    for (std::size_t i = 0; i < kElementCount; ++i) {
        const double pressed = element_signal(i, cfg_.elements[i].trigger_threshold);
        if (!(pressed > 0.0)) {
            throw ConfigError("element " + std::to_string(i + 1) +
                              " produces no signal at its trigger threshold");
        }
        out[i] = cfg_.detection_fraction * pressed;
    }
    return out;
}

}  // namespace tactile
