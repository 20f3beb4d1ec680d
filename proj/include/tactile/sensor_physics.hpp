#pragma once

#include <array>
#include <bitset>
#include <vector>

#include "tactile/units.hpp"

namespace tactile {

inline constexpr std::size_t kElementCount = 4;

/// Conductive-fabric force layer. Resistance change is linear in force up to
/// full_scale_force and flat above it.
struct FabricModel {
    Ohms rest_resistance{100e3};
    double max_fractional_delta = 0.35;
    Newtons full_scale_force{4.0};

    void validate() const;
};

/// One conductive-rubber pad of the 2x2 position layer. The pad is a switch
/// more than a gauge: rest below the trigger threshold, a small rise while
/// pressed, near-open above the saturation force.
struct ElementModel {
    Ohms rest_resistance{1.5e6};
    Newtons trigger_threshold{0.1};
    double active_signal_delta = 0.2;
    Newtons saturation_force{1.0};

    void validate() const;
};

/// Resistance multiplier used for the near-open saturated regime.
inline constexpr double kSaturatedResistanceFactor = 100.0;

/// Thresholds {0.10, 0.10, 0.15, 0.20} N and rests spread over 1.2..1.8 MOhm.
std::array<ElementModel, kElementCount> default_elements();

/// Bit i set means quadrant i+1 is in contact.
using QuadrantSet = std::bitset<kElementCount>;

struct LoadPoint {
    Seconds time;
    Newtons force;
    QuadrantSet quadrants;
};

/// Piecewise-constant load timeline. Between points the previous point is held.
class LoadScenario {
public:
    LoadScenario() = default;
    /// Throws DomainError unless times strictly increase, forces are
    /// non-negative and contact-free points carry zero force.
    explicit LoadScenario(std::vector<LoadPoint> points);

    const std::vector<LoadPoint>& points() const { return points_; }
    bool empty() const { return points_.empty(); }
    Seconds start() const;
    Seconds end() const;

    /// Zero-order hold lookup. Throws DomainError before start().
    const LoadPoint& at(Seconds t) const;

private:
    std::vector<LoadPoint> points_;
};

/// R = rest * lambda^2 for a constant-volume conductor stretched by lambda.
Ohms stretched_resistance(Ohms rest, double stretch_ratio);

Ohms fabric_delta_r(const FabricModel& model, Newtons force);

Ohms element_resistance(const ElementModel& model, Newtons force);

struct LoadState {
    Ohms fabric_delta;
    std::array<Ohms, kElementCount> element_resistance;
};

/// Every listed quadrant's element sees the full contact force; the rest see none.
LoadState apply_load(const LoadScenario& scenario, const FabricModel& fabric,
                     const std::array<ElementModel, kElementCount>& elements, Seconds time);

LoadState apply_load(const LoadPoint& point, const FabricModel& fabric,
                     const std::array<ElementModel, kElementCount>& elements);

}  // namespace tactile
