#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tactile/calibration.hpp"
#include "tactile/sensor_physics.hpp"

namespace tactile {

struct SensingSpec {
    double range = 0.0;       // N
    double resolution = 0.0;  // N
};

/// Range/resolution trade-off of the amplifier gain. Exact at the two
/// published presets, linear in 1/gain between them and proportional to
/// 1/gain outside.
SensingSpec range_for_gain(double gain);

/// Equal-weight mean of the last min(window, recent.size()) values.
double moving_average(std::span<const double> recent, std::size_t window);

/// Streaming moving-average filter with a fixed-size ring.
class MovingAverageFilter {
public:
    explicit MovingAverageFilter(std::size_t window = 4);

    /// Adds one sample and returns the mean of the filled part of the window.
    double push(double value);
    void reset();

    std::size_t window() const { return ring_.size(); }
    std::size_t filled() const { return filled_; }

private:
    std::vector<double> ring_;
    std::size_t next_ = 0;
    std::size_t filled_ = 0;
};

using ElementStates = std::array<bool, kElementCount>;
using ElementSignals = std::array<double, kElementCount>;

enum class ContactPattern { none, point, line, area };

std::string_view to_string(ContactPattern pattern);
/// Throws ParseError for unknown names.
ContactPattern parse_contact_pattern(std::string_view text);

struct EstimatorConfig {
    PolynomialModel model;
    std::size_t filter_window = 4;
    /// Per-element signal level at which the element reads as "on".
    ElementSignals element_thresholds{};
    double sensing_range = 1.0;
    double resolution = 0.05;
    /// An "on" element turns off only below threshold * (1 - hysteresis_fraction).
    double hysteresis_fraction = 0.0;

    void validate() const;
};

/// clamp(model(v), 0, sensing_range).
double estimate_force(const EstimatorConfig& cfg, double signal);

/// Element i is on iff signals[i] >= thresholds[i].
ElementStates detect_contacts(const ElementSignals& signals, const ElementSignals& thresholds);

/// Count-based: 0 none, 1 point, 2 line, 3-4 area.
ContactPattern classify_pattern(const ElementStates& states);

struct EstimateFrame {
    double time = 0.0;
    double raw_force = 0.0;
    double filtered_force = 0.0;
    ElementStates element_state{};
    ContactPattern pattern = ContactPattern::none;
};

/// Channel 0 is the force layer, channels 1..4 are the position elements.
using ChannelSignals = std::array<double, kElementCount + 1>;

/// Per-stream state: one filter, the previous element states and the last
/// timestamp. Owned by one consumer at a time.
class Estimator {
public:
    explicit Estimator(EstimatorConfig cfg);

    /// Throws StreamError unless time is strictly later than the previous frame.
    EstimateFrame process(double time, const ChannelSignals& channels);

    const EstimatorConfig& config() const { return cfg_; }

private:
    EstimatorConfig cfg_;
    MovingAverageFilter filter_;
    ElementStates states_{};
    std::optional<double> last_time_;
};

}  // namespace tactile
