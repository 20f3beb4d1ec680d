#include "tactile/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "tactile/chain.hpp"
#include "tactile/error.hpp"
#include "tactile/text_format.hpp"

namespace tactile {

namespace {

std::string fixed(double value, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

ChannelNoise draw_noise(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    ChannelNoise noise{};
    for (auto& n : noise) n = uniform(rng);
    return noise;
}

}  // namespace

std::size_t sample_count(double duration, double sample_rate) {
    if (!(duration >= 0.0)) throw DomainError("duration must be non-negative");
    if (!(sample_rate > 0.0)) throw DomainError("sample rate must be positive");
    // Guard against k / rate landing one ulp above an exact endpoint.
    const auto last = static_cast<std::size_t>(std::floor(duration * sample_rate + 1e-9));
    return last + 1;
}

void simulate(const ToolkitConfig& cfg, const LoadScenario& scenario, std::ostream& out) {
    if (scenario.empty()) throw UsageError("scenario has no points");
    if (scenario.start().value() != 0.0) {
        throw DomainError("scenario must start at t = 0");
    }
    const SensorChain chain(cfg);
    std::mt19937_64 rng(cfg.seed);
    const std::size_t ticks = sample_count(scenario.end().value(), cfg.adc.sample_rate);
    for (std::size_t k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) / cfg.adc.sample_rate;
        const LoadState state = apply_load(scenario, cfg.fabric, cfg.elements, Seconds(t));
        const SampleLine line{t, chain.read(state, draw_noise(rng))};
        out << format_sample_line(line) << '\n';
    }
    if (!out) throw IoError("failed writing sample stream");
}

CalibrationDataset simulate_protocol_dataset(const ToolkitConfig& cfg) {
    const SensorChain chain(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    CalibrationDataset data;
    data.signal_units = cfg.signal_units;
    for (const auto& [weight, count] : protocol_weights()) {
        const Newtons force = gw_to_newtons(weight);
        const Ohms delta = fabric_delta_r(cfg.fabric, force);
        for (int r = 0; r < count; ++r) {
            const double signal = chain.to_signal(chain.force_code(delta, uniform(rng)));
            data.samples.push_back({signal, force.value(), weight.value()});
        }
    }
    return data;
}

CalibrationOutcome calibrate(const ToolkitConfig& cfg, const CalibrationDataset& dataset) {
    if (dataset.signal_units != cfg.signal_units) {
        throw ConfigError("dataset units '" + dataset.signal_units + "' differ from config units '" +
                          cfg.signal_units + "'");
    }
    CrossValidationOptions options = cfg.cv;
    options.seed = cfg.seed;
    CalibrationOutcome outcome;
    outcome.report = cross_validate(dataset, options);
    const auto signals = dataset.signals();
    const auto forces = dataset.forces();
    outcome.model =
        fit_polynomial(signals, forces, outcome.report.selected_order, dataset.signal_units);
    return outcome;
}

void write_fit_report(std::ostream& out, const FitReport& report) {
    out << "order,mean_train_rmse_n,mean_test_rmse_n\n";
    for (const auto& s : report.scores) {
        out << s.order << ',' << fixed(s.mean_train_rmse) << ',' << fixed(s.mean_test_rmse) << '\n';
    }
    out << "# selected order " << report.selected_order << " (" << report.repeats << " repeats, "
        << report.folds << " folds, seed " << report.seed << ")\n";
}

EstimatorConfig make_estimator_config(const ToolkitConfig& cfg, const PolynomialModel& model) {
    if (model.signal_units() != cfg.signal_units) {
        throw ConfigError("model expects '" + model.signal_units() + "' signals but the config "
                          "streams '" + cfg.signal_units + "'");
    }
    const SensorChain chain(cfg);
    const SensingSpec spec = cfg.sensing_spec();
    EstimatorConfig out;
    out.model = model;
    out.filter_window = cfg.filter_window;
    out.element_thresholds = chain.element_thresholds();
    out.sensing_range = spec.range;
    out.resolution = spec.resolution;
    out.hysteresis_fraction = cfg.hysteresis_fraction;
    out.validate();
    return out;
}

std::size_t estimate(const EstimatorConfig& cfg, std::istream& samples, std::ostream& frames,
                     bool flush_each) {
    Estimator estimator(cfg);
    std::string line;
    std::size_t line_no = 0;
    std::size_t written = 0;
    while (std::getline(samples, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const SampleLine sample = parse_sample_line(line, line_no);
        EstimateFrame frame;
        try {
            frame = estimator.process(sample.time, sample.channels);
        } catch (const StreamError& e) {
            throw StreamError(line_no, e.what());
        }
        frames << format_frame_line(frame) << '\n';
        if (flush_each) frames.flush();
        ++written;
    }
    if (!frames) throw IoError("failed writing frame stream");
    return written;
}

ReportSummary summarize(const ToolkitConfig& cfg, std::istream& frames, const ReportOptions& options) {
    if (options.require_rmse && !options.truth) {
        throw UsageError("RMSE requested but no ground-truth scenario was given");
    }
    const double range = cfg.sensing_spec().range;
    ReportSummary summary;
    std::array<std::size_t, kElementCount> on_counts{};
    double sq_settled = 0.0;
    double sq_all = 0.0;
    std::size_t all_frames = 0;
    std::deque<const LoadPoint*> recent_truth;
    double first_time = 0.0;
    std::optional<double> last_time;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(frames, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const EstimateFrame f = parse_frame_line(line, line_no);
        if (last_time && !(f.time > *last_time)) {
            throw StreamError(line_no, "frame timestamps must increase");
        }
        if (!last_time) first_time = f.time;
        last_time = f.time;

        ++summary.frames;
        summary.max_filtered = std::max(summary.max_filtered, f.filtered_force);
        if (f.raw_force >= range) ++summary.saturation_count;
        for (std::size_t i = 0; i < kElementCount; ++i) on_counts[i] += f.element_state[i] ? 1 : 0;
        ++summary.pattern_counts[static_cast<std::size_t>(f.pattern)];

        if (options.truth) {
            const LoadPoint& truth = options.truth->at(Seconds(f.time));
            const double err = f.filtered_force - truth.force.value();
            sq_all += err * err;
            ++all_frames;
            recent_truth.push_back(&truth);
            if (recent_truth.size() > cfg.filter_window) recent_truth.pop_front();
            const bool settled = recent_truth.size() == cfg.filter_window &&
                                 std::all_of(recent_truth.begin(), recent_truth.end(),
                                             [&](const LoadPoint* p) { return p == &truth; });
            if (settled && truth.force.value() > 0.0) {
                sq_settled += err * err;
                ++summary.rmse_frames;
            }
        }
    }
    if (last_time) summary.duration = *last_time - first_time;
    for (std::size_t i = 0; i < kElementCount; ++i) {
        summary.duty_cycle[i] =
            summary.frames ? static_cast<double>(on_counts[i]) / static_cast<double>(summary.frames) : 0.0;
    }
    if (options.truth && all_frames > 0) {
        summary.rmse_all = std::sqrt(sq_all / static_cast<double>(all_frames));
        if (summary.rmse_frames > 0) {
            summary.rmse = std::sqrt(sq_settled / static_cast<double>(summary.rmse_frames));
        }
    }
    if (options.require_rmse && !summary.rmse) {
        throw UsageError("RMSE requested but no settled loaded frames overlap the truth scenario");
    }
    return summary;
}

void write_report(std::ostream& out, const ReportSummary& s) {
    out << "frames: " << s.frames << '\n';
    out << "duration_s: " << fixed(s.duration, 4) << '\n';
    out << "max_filtered_n: " << fixed(s.max_filtered) << '\n';
    out << "saturation_count: " << s.saturation_count << '\n';
    for (std::size_t i = 0; i < kElementCount; ++i) {
        out << "duty_e" << (i + 1) << ": " << fixed(s.duty_cycle[i], 4) << '\n';
    }
    for (auto p : {ContactPattern::none, ContactPattern::point, ContactPattern::line, ContactPattern::area}) {
        out << "pattern_" << to_string(p) << ": " << s.pattern_counts[static_cast<std::size_t>(p)] << '\n';
    }
    if (s.rmse) out << "rmse_n: " << fixed(*s.rmse) << '\n';
    if (s.rmse_all) out << "rmse_all_n: " << fixed(*s.rmse_all) << '\n';
    if (s.rmse || s.rmse_all) out << "rmse_frames: " << s.rmse_frames << '\n';
}

}  // namespace tactile
