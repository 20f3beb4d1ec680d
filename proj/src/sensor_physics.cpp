#include "tactile/sensor_physics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tactile/error.hpp"

namespace tactile {

namespace {

void require_load(Newtons force) {
    if (!std::isfinite(force.value()) || force.value() < 0.0) {
        throw DomainError("applied force must be finite and non-negative, got " +
                          std::to_string(force.value()));
    }
}

}  // namespace

void FabricModel::validate() const {
    if (!(rest_resistance.value() > 0.0)) {
        throw ConfigError("fabric rest_resistance must be positive");
    }
    if (!(max_fractional_delta > 0.0 && max_fractional_delta <= 1.0)) {
        throw ConfigError("fabric max_fractional_delta must lie in (0, 1]");
    }
    if (!(full_scale_force.value() > 0.0)) {
        throw ConfigError("fabric full_scale_force must be positive");
    }
}

void ElementModel::validate() const {
    const double rest = rest_resistance.value();
    if (!(rest >= 1e6 && rest <= 2e6)) {
        throw ConfigError("element rest_resistance must lie in [1 MOhm, 2 MOhm], got " +
                          std::to_string(rest));
    }
    if (!(trigger_threshold.value() > 0.0)) {
        throw ConfigError("element trigger_threshold must be positive");
    }
    if (!(active_signal_delta >= 0.0)) {
        throw ConfigError("element active_signal_delta must be non-negative");
    }
    if (!(saturation_force > trigger_threshold)) {
        throw ConfigError("element saturation_force must exceed trigger_threshold");
    }
}

std::array<ElementModel, kElementCount> default_elements() {
    constexpr std::array<double, kElementCount> rests{1.2e6, 1.4e6, 1.6e6, 1.8e6};
    constexpr std::array<double, kElementCount> thresholds{0.10, 0.10, 0.15, 0.20};
    std::array<ElementModel, kElementCount> out{};
    for (std::size_t i = 0; i < kElementCount; ++i) {
        out[i].rest_resistance = Ohms(rests[i]);
        out[i].trigger_threshold = Newtons(thresholds[i]);
    }
    return out;
}

LoadScenario::LoadScenario(std::vector<LoadPoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.time.value())) {
            throw DomainError("scenario point " + std::to_string(i) + ": non-finite time");
        }
        if (i > 0 && !(p.time > points_[i - 1].time)) {
            throw DomainError("scenario point " + std::to_string(i) +
                              ": times must be strictly increasing");
        }
        require_load(p.force);
        if (p.quadrants.none() && p.force.value() != 0.0) {
            throw DomainError("scenario point " + std::to_string(i) +
                              ": non-zero force needs at least one contact quadrant");
        }
    }
}

Seconds LoadScenario::start() const {
    if (points_.empty()) throw UsageError("empty load scenario");
    return points_.front().time;
}

Seconds LoadScenario::end() const {
    if (points_.empty()) throw UsageError("empty load scenario");
    return points_.back().time;
}

const LoadPoint& LoadScenario::at(Seconds t) const {
    if (t < start()) {
        throw DomainError("time " + std::to_string(t.value()) + " s precedes scenario start");
    }
    // Last point whose time is <= t.
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](Seconds value, const LoadPoint& p) { return value < p.time; });
    return *std::prev(it);
}

Ohms stretched_resistance(Ohms rest, double stretch_ratio) {
    if (!std::isfinite(stretch_ratio) || stretch_ratio < 1.0) {
        throw DomainError("stretch ratio must be >= 1, got " + std::to_string(stretch_ratio));
    }
    return rest * (stretch_ratio * stretch_ratio);
}

Ohms fabric_delta_r(const FabricModel& model, Newtons force) {
    require_load(force);
    const double fraction = std::min(force / model.full_scale_force, 1.0);
    return model.rest_resistance * (model.max_fractional_delta * fraction);
}

Ohms element_resistance(const ElementModel& model, Newtons force) {
    require_load(force);
    if (force < model.trigger_threshold) {
        return model.rest_resistance;
    }
    if (force <= model.saturation_force) {
        return model.rest_resistance * (1.0 + model.active_signal_delta);
    }
    return model.rest_resistance * kSaturatedResistanceFactor;
}

LoadState apply_load(const LoadPoint& point, const FabricModel& fabric,
                     const std::array<ElementModel, kElementCount>& elements) {
    LoadState state{};
    state.fabric_delta = fabric_delta_r(fabric, point.force);
    for (std::size_t i = 0; i < kElementCount; ++i) {
        const Newtons seen = point.quadrants.test(i) ? point.force : Newtons(0.0);
        state.element_resistance[i] = element_resistance(elements[i], seen);
    }
    return state;
}

LoadState apply_load(const LoadScenario& scenario, const FabricModel& fabric,
                     const std::array<ElementModel, kElementCount>& elements, Seconds time) {
    return apply_load(scenario.at(time), fabric, elements);
}

}  // namespace tactile
