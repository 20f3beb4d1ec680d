#include "tactile/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "tactile/error.hpp"
#include "tactile/text_format.hpp"

namespace tactile {

SensingSpec ToolkitConfig::sensing_spec() const {
    SensingSpec spec = range_for_gain(force_bridge.amplifier_gain);
    if (sensing_range) spec.range = *sensing_range;
    if (resolution) spec.resolution = *resolution;
    return spec;
}

void ToolkitConfig::validate() const {
    fabric.validate();
    for (const auto& e : elements) e.validate();
    force_bridge.validate();
    if (!is_balanced(force_bridge)) {
        throw ConfigError("force bridge is not balanced: r1/r2 must equal r3/fabric rest");
    }
    if (!(element_gain > 0.0)) throw ConfigError("element_gain must be positive");
    adc.validate();
    if (signal_units != kUnitsVolt && signal_units != kUnitsAdcCode) {
        throw ConfigError("signal_units must be 'volt' or 'adc_code', got '" + signal_units + "'");
    }
    if (filter_window < 1) throw ConfigError("filter_window must be >= 1");
    const SensingSpec spec = sensing_spec();
    if (!(spec.range > 0.0) || !(spec.resolution > 0.0)) {
        throw ConfigError("sensing range and resolution must be positive");
    }
    if (!(hysteresis_fraction >= 0.0 && hysteresis_fraction < 1.0)) {
        throw ConfigError("hysteresis_fraction must lie in [0, 1)");
    }
    if (!(detection_fraction > 0.0 && detection_fraction <= 1.0)) {
        throw ConfigError("detection_fraction must lie in (0, 1]");
    }
    if (cv.folds < 2) throw ConfigError("calibration folds must be >= 2");
    if (cv.repeats < 1) throw ConfigError("calibration repeats must be >= 1");
    if (cv.min_order < 1 || cv.max_order < cv.min_order) {
        throw ConfigError("calibration order range is empty");
    }
}

namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        return parse_number(value, 0, key);
    } catch (const ParseError&) {
        throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    long long out = 0;
    const auto* end = value.data() + value.size();
    const auto result = std::from_chars(value.data(), end, out);
    if (value.empty() || result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "' expects true/false, got '" + value + "'");
}

using Setter = std::function<void(ToolkitConfig&, const std::string&, const std::string&)>;

std::map<std::string, Setter, std::less<>> make_setters() {
    std::map<std::string, Setter, std::less<>> s;
    auto num = [](auto member) {
        return [member](ToolkitConfig& c, const std::string& k, const std::string& v) {
            member(c) = to_double(k, v);
        };
    };

    s["seed"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.seed = static_cast<std::uint64_t>(to_integer(k, v));
    };
    s["fabric.rest_resistance"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.fabric.rest_resistance = Ohms(to_double(k, v));
    };
    s["fabric.max_fractional_delta"] = num([](ToolkitConfig& c) -> double& { return c.fabric.max_fractional_delta; });
    s["fabric.full_scale_force"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.fabric.full_scale_force = Newtons(to_double(k, v));
    };
    for (std::size_t i = 0; i < kElementCount; ++i) {
        const std::string prefix = "element" + std::to_string(i + 1) + ".";
        s[prefix + "rest_resistance"] = [i](ToolkitConfig& c, const std::string& k, const std::string& v) {
            c.elements[i].rest_resistance = Ohms(to_double(k, v));
        };
        s[prefix + "trigger_threshold"] = [i](ToolkitConfig& c, const std::string& k, const std::string& v) {
            c.elements[i].trigger_threshold = Newtons(to_double(k, v));
        };
        s[prefix + "active_signal_delta"] = [i](ToolkitConfig& c, const std::string& k, const std::string& v) {
            c.elements[i].active_signal_delta = to_double(k, v);
        };
        s[prefix + "saturation_force"] = [i](ToolkitConfig& c, const std::string& k, const std::string& v) {
            c.elements[i].saturation_force = Newtons(to_double(k, v));
        };
    }
    s["element.active_signal_delta"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        for (auto& e : c.elements) e.active_signal_delta = to_double(k, v);
    };
    s["element.saturation_force"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        for (auto& e : c.elements) e.saturation_force = Newtons(to_double(k, v));
    };
    s["bridge.supply_voltage"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.force_bridge.supply_voltage = Volts(to_double(k, v));
    };
    s["bridge.r1"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) { c.force_bridge.r1 = Ohms(to_double(k, v)); };
    s["bridge.r2"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) { c.force_bridge.r2 = Ohms(to_double(k, v)); };
    s["bridge.r3"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) { c.force_bridge.r3 = Ohms(to_double(k, v)); };
    s["bridge.gain"] = num([](ToolkitConfig& c) -> double& { return c.force_bridge.amplifier_gain; });
    s["bridge.noise_fraction"] = num([](ToolkitConfig& c) -> double& { return c.force_bridge.noise_fraction; });
    s["bridge.rail_low"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.force_bridge.rail_low = Volts(to_double(k, v));
    };
    s["bridge.rail_high"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.force_bridge.rail_high = Volts(to_double(k, v));
    };
    s["element_bridge.gain"] = num([](ToolkitConfig& c) -> double& { return c.element_gain; });
    s["adc.bits"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.adc.bits = static_cast<int>(to_integer(k, v));
    };
    s["adc.sample_rate"] = num([](ToolkitConfig& c) -> double& { return c.adc.sample_rate; });
    s["adc.full_scale"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.adc.full_scale = Volts(to_double(k, v));
    };
    s["signal_units"] = [](ToolkitConfig& c, const std::string&, const std::string& v) { c.signal_units = v; };
    s["estimator.filter_window"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        const auto w = to_integer(k, v);
        if (w < 1) throw ConfigError("estimator.filter_window must be >= 1");
        c.filter_window = static_cast<std::size_t>(w);
    };
    s["estimator.sensing_range"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.sensing_range = to_double(k, v);
    };
    s["estimator.resolution"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.resolution = to_double(k, v);
    };
    s["estimator.hysteresis_fraction"] = num([](ToolkitConfig& c) -> double& { return c.hysteresis_fraction; });
    s["estimator.detection_fraction"] = num([](ToolkitConfig& c) -> double& { return c.detection_fraction; });
    s["calibration.folds"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.cv.folds = static_cast<int>(to_integer(k, v));
    };
    s["calibration.repeats"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.cv.repeats = static_cast<int>(to_integer(k, v));
    };
    s["calibration.min_order"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.cv.min_order = static_cast<int>(to_integer(k, v));
    };
    s["calibration.max_order"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.cv.max_order = static_cast<int>(to_integer(k, v));
    };
    s["calibration.strict_paper_cv"] = [](ToolkitConfig& c, const std::string& k, const std::string& v) {
        c.cv.strict_paper = to_bool(k, v);
    };
    return s;
}

}  // namespace

ToolkitConfig load_config(std::istream& in) {
    static const auto setters = make_setters();
    const KeyValues kv = read_key_values(in);

    ToolkitConfig cfg;
    bool arms_given = false;
    for (const auto& [key, value] : kv) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(cfg, key, value);
        arms_given = arms_given || key == "bridge.r1" || key == "bridge.r2" || key == "bridge.r3";
    }
    cfg.force_bridge.rx_rest = cfg.fabric.rest_resistance;
    if (!arms_given) {
        cfg.force_bridge.r1 = cfg.force_bridge.r2 = cfg.force_bridge.r3 = cfg.fabric.rest_resistance;
    }
    cfg.cv.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

ToolkitConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    return load_config(in);
}

}  // namespace tactile
