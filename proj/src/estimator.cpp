#include "tactile/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tactile/bridge.hpp"
#include "tactile/error.hpp"

namespace tactile {

namespace {

constexpr SensingSpec kWideSpec{1.5, 0.1};
constexpr SensingSpec kFineSpec{1.0, 0.05};

// Pairwise summation: a window of identical values sums exactly for power-of-two sizes.
double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 2) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace

SensingSpec range_for_gain(double gain) {
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw DomainError("amplifier gain must be positive, got " + std::to_string(gain));
    }
    if (gain == kGainWideRange) return kWideSpec;
    if (gain == kGainFineResolution) return kFineSpec;
    if (gain < kGainWideRange) {
        const double k = kGainWideRange / gain;
        return {kWideSpec.range * k, kWideSpec.resolution * k};
    }
    if (gain > kGainFineResolution) {
        const double k = kGainFineResolution / gain;
        return {kFineSpec.range * k, kFineSpec.resolution * k};
    }
    const double x = 1.0 / gain;
    const double x_fine = 1.0 / kGainFineResolution;
    const double x_wide = 1.0 / kGainWideRange;
    const double t = (x - x_fine) / (x_wide - x_fine);
    return {kFineSpec.range + t * (kWideSpec.range - kFineSpec.range),
            kFineSpec.resolution + t * (kWideSpec.resolution - kFineSpec.resolution)};
}

double moving_average(std::span<const double> recent, std::size_t window) {
    if (recent.empty()) throw UsageError("moving average of an empty window");
    if (window == 0) throw UsageError("moving average window must be >= 1");
    const std::size_t n = std::min(window, recent.size());
    return pairwise_sum(recent.last(n)) / static_cast<double>(n);
}

MovingAverageFilter::MovingAverageFilter(std::size_t window) {
    if (window == 0) throw UsageError("filter window must be >= 1");
    ring_.assign(window, 0.0);
}

double MovingAverageFilter::push(double value) {
    ring_[next_] = value;
    next_ = (next_ + 1) % ring_.size();
    filled_ = std::min(filled_ + 1, ring_.size());
    // Ring order does not matter for the mean, only which slots are filled.
    return pairwise_sum(std::span<const double>(ring_).first(filled_)) /
           static_cast<double>(filled_);
}

void MovingAverageFilter::reset() {
    std::fill(ring_.begin(), ring_.end(), 0.0);
    next_ = 0;
    filled_ = 0;
}

std::string_view to_string(ContactPattern pattern) {
    switch (pattern) {
        case ContactPattern::none: return "none";
        case ContactPattern::point: return "point";
        case ContactPattern::line: return "line";
        case ContactPattern::area: return "area";
    }
    return "none";
}

ContactPattern parse_contact_pattern(std::string_view text) {
    if (text == "none") return ContactPattern::none;
    if (text == "point") return ContactPattern::point;
    if (text == "line") return ContactPattern::line;
    if (text == "area") return ContactPattern::area;
    throw ParseError(0, "unknown contact pattern '" + std::string(text) + "'");
}

void EstimatorConfig::validate() const {
    if (model.coefficients().empty()) throw ConfigError("estimator has no force model");
    if (filter_window < 1) throw ConfigError("filter_window must be >= 1");
    if (!(sensing_range > 0.0)) throw ConfigError("sensing_range must be positive");
    if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
    for (double t : element_thresholds) {
        if (!(t > 0.0)) throw ConfigError("element thresholds must be positive");
    }
    if (!(hysteresis_fraction >= 0.0 && hysteresis_fraction < 1.0)) {
        throw ConfigError("hysteresis_fraction must lie in [0, 1)");
    }
}

double estimate_force(const EstimatorConfig& cfg, double signal) {
    if (!std::isfinite(signal)) throw DomainError("force-layer signal is not finite");
    return std::clamp(cfg.model(signal), 0.0, cfg.sensing_range);
}

ElementStates detect_contacts(const ElementSignals& signals, const ElementSignals& thresholds) {
    ElementStates out{};
    for (std::size_t i = 0; i < kElementCount; ++i) {
        out[i] = signals[i] >= thresholds[i];
    }
    return out;
}

ContactPattern classify_pattern(const ElementStates& states) {
    const auto on = std::count(states.begin(), states.end(), true);
    switch (on) {
        case 0: return ContactPattern::none;
        case 1: return ContactPattern::point;
        case 2: return ContactPattern::line;
        default: return ContactPattern::area;
    }
}

Estimator::Estimator(EstimatorConfig cfg) : cfg_(std::move(cfg)), filter_(cfg_.filter_window) {
    cfg_.validate();
}

EstimateFrame Estimator::process(double time, const ChannelSignals& channels) {
    if (!std::isfinite(time)) throw StreamError(0, "non-finite timestamp");
    if (last_time_ && !(time > *last_time_)) {
        throw StreamError(0, "timestamp " + std::to_string(time) +
                                 " s does not follow previous " + std::to_string(*last_time_) +
                                 " s");
    }

    EstimateFrame frame;
    frame.time = time;
    frame.raw_force = estimate_force(cfg_, channels[0]);
    frame.filtered_force = filter_.push(frame.raw_force);

    ElementSignals element_signals{};
    std::copy(channels.begin() + 1, channels.end(), element_signals.begin());
    ElementStates states = detect_contacts(element_signals, cfg_.element_thresholds);
    if (cfg_.hysteresis_fraction > 0.0) {
        for (std::size_t i = 0; i < kElementCount; ++i) {
            const double release = cfg_.element_thresholds[i] * (1.0 - cfg_.hysteresis_fraction);
            if (states_[i] && !states[i] && element_signals[i] >= release) states[i] = true;
        }
    }
    states_ = states;
    last_time_ = time;

    frame.element_state = states;
    frame.pattern = classify_pattern(states);
    return frame;
}

}  // namespace tactile
