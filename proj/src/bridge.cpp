#include "tactile/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tactile/error.hpp"

namespace tactile {

BridgeConfig BridgeConfig::equal_arms(Ohms rx, double gain) {
    BridgeConfig cfg;
    cfg.r1 = cfg.r2 = cfg.r3 = cfg.rx_rest = rx;
    cfg.amplifier_gain = gain;
    return cfg;
}

void BridgeConfig::validate() const {
    for (Ohms r : {r1, r2, r3, rx_rest}) {
        if (!(r.value() > 0.0) || !std::isfinite(r.value())) {
            throw ConfigError("bridge resistances must be positive and finite");
        }
    }
    if (!(amplifier_gain > 0.0) || !std::isfinite(amplifier_gain)) {
        throw ConfigError("amplifier gain must be positive");
    }
    if (!(noise_fraction >= 0.0 && noise_fraction < 1.0)) {
        throw ConfigError("noise_fraction must lie in [0, 1)");
    }
    if (!(rail_low < rail_high)) {
        throw ConfigError("rail_low must be below rail_high");
    }
    if (!std::isfinite(supply_voltage.value())) {
        throw ConfigError("supply voltage must be finite");
    }
}

void AdcConfig::validate() const {
    if (bits < 1 || bits > 32) {
        throw ConfigError("adc bits must lie in [1, 32]");
    }
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
        throw ConfigError("adc sample_rate must be positive");
    }
    if (!(full_scale.value() > 0.0)) {
        throw ConfigError("adc full_scale must be positive");
    }
}

bool is_balanced(const BridgeConfig& cfg) {
    const double left = cfg.r1 / cfg.r2;
    const double right = cfg.r3 / cfg.rx_rest;
    return std::abs(left - right) <= 1e-9 * std::max(std::abs(left), std::abs(right));
}

Ohms thevenin_resistance(Ohms rx, Ohms delta_rx) {
    if (!(rx.value() > 0.0)) throw DomainError("rx must be positive");
    if (delta_rx.value() < 0.0) throw DomainError("delta_rx must be non-negative");
    const double r = rx.value();
    const double d = delta_rx.value();
    return Ohms(r / 2.0 + r * (r + d) / (2.0 * r + d));
}

double thevenin_slope(Ohms rx, Ohms delta_rx) {
    if (!(rx.value() > 0.0)) throw DomainError("rx must be positive");
    if (delta_rx.value() < 0.0) throw DomainError("delta_rx must be non-negative");
    const double r = rx.value();
    const double denom = 2.0 * r + delta_rx.value();
    return r * r / (denom * denom);
}

Volts bridge_output(const BridgeConfig& cfg, Ohms delta_rx) {
    if (!is_balanced(cfg)) {
        throw ConfigError("bridge is not balanced at rest (r1/r2 != r3/rx)");
    }
    if (!(delta_rx.value() >= 0.0)) {
        throw DomainError("delta_rx must be non-negative");
    }
    const double rx = cfg.rx_rest.value() + delta_rx.value();
    const double sensing_node = rx / (cfg.r3.value() + rx);
    const double reference_node = cfg.r2 / (cfg.r1 + cfg.r2);
    return cfg.supply_voltage * (sensing_node - reference_node);
}

Volts amplify(const BridgeConfig& cfg, Volts v_in, double noise_sample) {
    if (!std::isfinite(v_in.value())) {
        throw DomainError("amplifier input must be finite");
    }
    if (!(noise_sample >= -1.0 && noise_sample <= 1.0)) {
        throw UsageError("noise sample must lie in [-1, 1]");
    }
    const double v = cfg.amplifier_gain * v_in.value() * (1.0 + cfg.noise_fraction * noise_sample);
    return Volts(std::clamp(v, cfg.rail_low.value(), cfg.rail_high.value()));
}

std::int64_t adc_sample(const AdcConfig& adc, Volts v) {
    const double fs = adc.full_scale.value();
    const double clamped = std::isnan(v.value()) ? 0.0 : std::clamp(v.value(), 0.0, fs);
    const double scaled = clamped / fs * static_cast<double>(adc.max_code());
    return static_cast<std::int64_t>(std::floor(scaled + 0.5));
}

Volts dequantize(const AdcConfig& adc, std::int64_t code) {
    if (code < 0 || code > adc.max_code()) {
        throw UsageError("adc code " + std::to_string(code) + " outside [0, " +
                         std::to_string(adc.max_code()) + "]");
    }
    return Volts(static_cast<double>(code) / static_cast<double>(adc.max_code()) *
                 adc.full_scale.value());
}

}  // namespace tactile
