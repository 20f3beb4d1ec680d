#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>

#include "tactile/calibration.hpp"
#include "tactile/config.hpp"
#include "tactile/estimator.hpp"
#include "tactile/sensor_physics.hpp"

namespace tactile {

/// Number of ticks t_k = k / rate with t_k <= duration.
std::size_t sample_count(double duration, double sample_rate);

/// Runs the scenario through the sensor chain at the ADC rate and writes one
/// sample line per tick. Amplifier noise is drawn from cfg.seed.
void simulate(const ToolkitConfig& cfg, const LoadScenario& scenario, std::ostream& out);

/// One simulated force-layer reading per press of the 100-press weight protocol.
CalibrationDataset simulate_protocol_dataset(const ToolkitConfig& cfg);

struct CalibrationOutcome {
    FitReport report;
    /// Selected order refitted on the whole dataset.
    PolynomialModel model;
};

/// Cross-validates cfg.cv orders and refits the winner. Throws ConfigError
/// when the dataset units differ from cfg.signal_units.
CalibrationOutcome calibrate(const ToolkitConfig& cfg, const CalibrationDataset& dataset);

/// Table of mean train/test RMSE per order plus the selection.
void write_fit_report(std::ostream& out, const FitReport& report);

/// Builds the runtime estimator settings. Throws ConfigError on a units mismatch.
EstimatorConfig make_estimator_config(const ToolkitConfig& cfg, const PolynomialModel& model);

/// Streams sample lines to frame records, one frame per sample. Returns the
/// number of frames written. flush_each flushes after every frame (live input).
std::size_t estimate(const EstimatorConfig& cfg, std::istream& samples, std::ostream& frames,
                     bool flush_each = false);

struct ReportOptions {
    std::optional<LoadScenario> truth;
    bool require_rmse = false;
};

struct ReportSummary {
    std::size_t frames = 0;
    double duration = 0.0;
    double max_filtered = 0.0;
    std::size_t saturation_count = 0;
    std::array<double, kElementCount> duty_cycle{};
    std::array<std::size_t, 4> pattern_counts{};
    /// Over frames whose truth is loaded and has been constant for a full filter window.
    std::optional<double> rmse;
    std::optional<double> rmse_all;
    std::size_t rmse_frames = 0;
};

ReportSummary summarize(const ToolkitConfig& cfg, std::istream& frames, const ReportOptions& options);
void write_report(std::ostream& out, const ReportSummary& summary);

}  // namespace tactile
