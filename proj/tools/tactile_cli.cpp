// Command-line front end: simulate, calibrate, estimate, report.
//
// Exit codes: 0 success, 1 usage, 2 data/parse, 3 numerical.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tactile/commands.hpp"
#include "tactile/error.hpp"
#include "tactile/text_format.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> gain;
    std::optional<std::size_t> window;
};

tactile::ToolkitConfig resolve_config(const CommonOptions& opts) {
    tactile::ToolkitConfig cfg;
    if (!opts.config_path.empty()) cfg = tactile::load_config_file(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.gain) cfg.force_bridge.amplifier_gain = *opts.gain;
    if (opts.window) cfg.filter_window = *opts.window;
    cfg.cv.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

// Parses "3" or "1-5".
std::pair<int, int> parse_orders(const std::string& text) {
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            const int o = std::stoi(text);
            return {o, o};
        }
        return {std::stoi(text.substr(0, dash)), std::stoi(text.substr(dash + 1))};
    } catch (const std::exception&) {
        throw tactile::UsageError("--orders expects N or N-M, got '" + text + "'");
    }
}

// Writes through a temporary so a failed command never leaves a partial file.
template <typename Fn>
void write_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw tactile::IoError("cannot open '" + path + "' for writing");
        try {
            fn(out);
        } catch (...) {
            out.close();
            std::remove(tmp.c_str());
            throw;
        }
        out.flush();
        if (!out) throw tactile::IoError("failed writing '" + path + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw tactile::IoError("cannot move output into '" + path + "'");
    }
}

int exit_code(const tactile::Error& e) {
    switch (e.category()) {
        case tactile::Error::Category::usage: return kExitUsage;
        case tactile::Error::Category::data: return kExitData;
        case tactile::Error::Category::numerical: return kExitNumerical;
    }
    return kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-layer soft tactile sensor toolkit"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "key=value toolkit config file");
        cmd->add_option("--seed", common.seed, "RNG seed (overrides config)");
        cmd->add_option("--gain", common.gain, "force amplifier gain (overrides config)");
        cmd->add_option("--window", common.window, "moving-average window (overrides config)");
    };

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a load scenario through the sensor model");
    add_common(sim);
    std::string scenario_path;
    std::string sim_out;
    bool protocol_dataset = false;
    sim->add_option("scenario", scenario_path, "scenario CSV (t,force_n,quadrants)");
    sim->add_option("-o,--output", sim_out, "output path, '-' for stdout");
    sim->add_flag("--dataset", protocol_dataset,
                  "write the 100-press weight-protocol calibration dataset instead of a stream");

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "Fit and cross-validate polynomial force models");
    add_common(cal);
    std::string dataset_path;
    std::string model_out;
    std::string orders;
    std::optional<int> repeats;
    bool strict_cv = false;
    cal->add_option("dataset", dataset_path, "dataset CSV (v,force_n[,weight_gw])")->required();
    cal->add_option("-o,--output", model_out, "model file to write")->required();
    cal->add_option("--orders", orders, "order or order range, e.g. 1-5");
    cal->add_option("--repeats", repeats, "cross-validation repeats");
    cal->add_flag("--strict-paper-cv", strict_cv, "use only fold 0 as the test fold");

    // estimate
    auto* est = app.add_subcommand("estimate", "Convert a sample stream to force/contact frames");
    add_common(est);
    std::string model_path;
    std::string stream_path = "-";
    std::string est_out;
    est->add_option("--model", model_path, "model file")->required();
    est->add_option("stream", stream_path, "sample stream, '-' for stdin");
    est->add_option("-o,--output", est_out, "frame output, '-' for stdout");

    // report
    auto* rep = app.add_subcommand("report", "Summarize a frame stream");
    add_common(rep);
    std::string frames_path = "-";
    std::string truth_path;
    std::string rep_out;
    bool want_rmse = false;
    rep->add_option("frames", frames_path, "frame stream, '-' for stdin");
    rep->add_option("--truth", truth_path, "ground-truth scenario CSV");
    rep->add_flag("--rmse", want_rmse, "require an RMSE against --truth");
    rep->add_option("-o,--output", rep_out, "summary output, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        tactile::ToolkitConfig cfg = resolve_config(common);

        if (*sim) {
            if (protocol_dataset) {
                const auto data = tactile::simulate_protocol_dataset(cfg);
                write_output(sim_out, [&](std::ostream& out) { tactile::write_dataset(out, data); });
            } else {
                if (scenario_path.empty()) throw tactile::UsageError("simulate needs a scenario file");
                const auto scenario = tactile::read_scenario_file(scenario_path);
                write_output(sim_out, [&](std::ostream& out) { tactile::simulate(cfg, scenario, out); });
            }
        } else if (*cal) {
            if (!orders.empty()) std::tie(cfg.cv.min_order, cfg.cv.max_order) = parse_orders(orders);
            if (repeats) cfg.cv.repeats = *repeats;
            if (strict_cv) cfg.cv.strict_paper = true;
            cfg.validate();
            const auto data = tactile::read_dataset_file(dataset_path, cfg.signal_units);
            const auto outcome = tactile::calibrate(cfg, data);
            write_output(model_out, [&](std::ostream& out) {
                tactile::write_model(out, outcome.model, &outcome.report);
            });
            tactile::write_fit_report(std::cout, outcome.report);
        } else if (*est) {
            const auto model = tactile::read_model_file(model_path).model;
            const auto est_cfg = tactile::make_estimator_config(cfg, model);
            const bool live = stream_path == "-";
            auto run = [&](std::istream& in) {
                write_output(est_out, [&](std::ostream& out) { tactile::estimate(est_cfg, in, out, live); });
            };
            if (live) {
                run(std::cin);
            } else {
                std::ifstream in(stream_path);
                if (!in) throw tactile::IoError("cannot open '" + stream_path + "'");
                run(in);
            }
        } else if (*rep) {
            tactile::ReportOptions options;
            options.require_rmse = want_rmse;
            if (!truth_path.empty()) options.truth = tactile::read_scenario_file(truth_path);
            tactile::ReportSummary summary;
            if (frames_path == "-") {
                summary = tactile::summarize(cfg, std::cin, options);
            } else {
                std::ifstream in(frames_path);
                if (!in) throw tactile::IoError("cannot open '" + frames_path + "'");
                summary = tactile::summarize(cfg, in, options);
            }
            write_output(rep_out, [&](std::ostream& out) { tactile::write_report(out, summary); });
        }
    } catch (const tactile::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
