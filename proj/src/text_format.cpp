#include "tactile/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "tactile/error.hpp"

namespace tactile {

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0 into 0
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char delimiter) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(delimiter, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

bool is_skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

double parse_number(std::string_view field, std::size_t line, std::string_view what) {
    auto t = trim(field);
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double value = 0.0;
    const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || result.ec != std::errc{} || result.ptr != t.data() + t.size() ||
        !std::isfinite(value)) {
        throw ParseError(line, "malformed " + std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

// ---------------------------------------------------------------------------

SampleLine parse_sample_line(std::string_view text, std::size_t line) {
    const auto fields = split(trim(text), ',');
    if (fields.size() != kElementCount + 2) {
        throw ArityError(line, "expected time plus " + std::to_string(kElementCount + 1) +
                                   " channels, got " + std::to_string(fields.size() - 1) +
                                   " channel(s)");
    }
    SampleLine sample;
    sample.time = parse_number(fields[0], line, "time");
    if (sample.time < 0.0) throw ParseError(line, "negative sample time");
    for (std::size_t c = 0; c < sample.channels.size(); ++c) {
        sample.channels[c] = parse_number(fields[c + 1], line, "channel " + std::to_string(c));
    }
    return sample;
}

std::string format_sample_line(const SampleLine& sample) {
    std::string out = format_number(sample.time);
    for (double v : sample.channels) {
        out += ',';
        out += format_number(v);
    }
    return out;
}

EstimateFrame parse_frame_line(std::string_view text, std::size_t line) {
    const auto fields = split(trim(text), ',');
    if (fields.size() != kElementCount + 4) {
        throw ArityError(line, "frame record needs " + std::to_string(kElementCount + 4) +
                                   " fields, got " + std::to_string(fields.size()));
    }
    EstimateFrame frame;
    frame.time = parse_number(fields[0], line, "time");
    frame.raw_force = parse_number(fields[1], line, "raw force");
    frame.filtered_force = parse_number(fields[2], line, "filtered force");
    for (std::size_t i = 0; i < kElementCount; ++i) {
        const auto s = trim(fields[3 + i]);
        if (s != "0" && s != "1") {
            throw ParseError(line, "element state must be 0 or 1, got '" + std::string(s) + "'");
        }
        frame.element_state[i] = s == "1";
    }
    try {
        frame.pattern = parse_contact_pattern(trim(fields.back()));
    } catch (const ParseError& e) {
        throw ParseError(line, e.what());
    }
    return frame;
}

std::string format_frame_line(const EstimateFrame& frame) {
    std::string out = format_number(frame.time);
    out += ',';
    out += format_number(frame.raw_force);
    out += ',';
    out += format_number(frame.filtered_force);
    for (bool on : frame.element_state) {
        out += on ? ",1" : ",0";
    }
    out += ',';
    out += to_string(frame.pattern);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

// Reads the first non-skippable line and checks it against the expected columns.
std::vector<std::string> read_header(std::istream& in, std::size_t& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        std::vector<std::string> cols;
        for (auto f : split(trim(line), ',')) cols.emplace_back(trim(f));
        return cols;
    }
    throw ParseError(line_no, "missing CSV header");
}

}  // namespace

LoadScenario read_scenario(std::istream& in) {
    std::size_t line_no = 0;
    const auto header = read_header(in, line_no);
    if (header != std::vector<std::string>{"t", "force_n", "quadrants"}) {
        throw ParseError(line_no, "scenario header must be 't,force_n,quadrants'");
    }
    std::vector<LoadPoint> points;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split(trim(line), ',');
        if (fields.size() != 3) {
            throw ArityError(line_no, "scenario row needs 3 fields, got " +
                                          std::to_string(fields.size()));
        }
        LoadPoint p;
        p.time = Seconds(parse_number(fields[0], line_no, "time"));
        p.force = Newtons(parse_number(fields[1], line_no, "force"));
        const auto quads = trim(fields[2]);
        if (!quads.empty()) {
            for (auto q : split(quads, '+')) {
                const double idx = parse_number(q, line_no, "quadrant");
                if (idx != std::floor(idx) || idx < 1 || idx > static_cast<double>(kElementCount)) {
                    throw ParseError(line_no, "quadrant must be an integer in 1..4");
                }
                p.quadrants.set(static_cast<std::size_t>(idx) - 1);
            }
        }
        points.push_back(p);
    }
    try {
        return LoadScenario(std::move(points));
    } catch (const DomainError& e) {
        throw ParseError(0, std::string("invalid scenario: ") + e.what());
    }
}

LoadScenario read_scenario_file(const std::string& path) {
    auto in = open_input(path);
    return read_scenario(in);
}

void write_scenario(std::ostream& out, const LoadScenario& scenario) {
    out << "t,force_n,quadrants\n";
    for (const auto& p : scenario.points()) {
        out << format_number(p.time.value()) << ',' << format_number(p.force.value()) << ',';
        bool first = true;
        for (std::size_t i = 0; i < kElementCount; ++i) {
            if (!p.quadrants.test(i)) continue;
            if (!first) out << '+';
            out << (i + 1);
            first = false;
        }
        out << '\n';
    }
}

CalibrationDataset read_dataset(std::istream& in, const std::string& signal_units) {
    std::size_t line_no = 0;
    const auto header = read_header(in, line_no);
    const bool with_weight = header == std::vector<std::string>{"v", "force_n", "weight_gw"};
    if (!with_weight && header != std::vector<std::string>{"v", "force_n"}) {
        throw ParseError(line_no, "dataset header must be 'v,force_n' or 'v,force_n,weight_gw'");
    }
    CalibrationDataset data;
    data.signal_units = signal_units;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto fields = split(trim(line), ',');
        if (fields.size() != header.size()) {
            throw ArityError(line_no, "dataset row needs " + std::to_string(header.size()) +
                                          " fields, got " + std::to_string(fields.size()));
        }
        CalibrationSample s;
        s.signal = parse_number(fields[0], line_no, "signal");
        s.force = parse_number(fields[1], line_no, "force");
        if (with_weight) s.weight_gw = parse_number(fields[2], line_no, "weight");
        data.samples.push_back(s);
    }
    return data;
}

CalibrationDataset read_dataset_file(const std::string& path, const std::string& signal_units) {
    auto in = open_input(path);
    return read_dataset(in, signal_units);
}

void write_dataset(std::ostream& out, const CalibrationDataset& dataset) {
    const bool with_weight = !dataset.samples.empty() &&
                             std::all_of(dataset.samples.begin(), dataset.samples.end(),
                                         [](const auto& s) { return s.weight_gw.has_value(); });
    out << (with_weight ? "v,force_n,weight_gw\n" : "v,force_n\n");
    for (const auto& s : dataset.samples) {
        out << format_number(s.signal) << ',' << format_number(s.force);
        if (with_weight) out << ',' << format_number(*s.weight_gw);
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

KeyValues read_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line_no, "expected key=value, got '" + std::string(trim(line)) + "'");
        }
        const std::string key(trim(std::string_view(line).substr(0, eq)));
        std::string_view raw = std::string_view(line).substr(eq + 1);
        raw = raw.substr(0, raw.find('#'));  // trailing comment
        const std::string value(trim(raw));
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (!kv.emplace(key, value).second) {
            throw ParseError(line_no, "duplicate key '" + key + "'");
        }
    }
    return kv;
}

void write_model(std::ostream& out, const PolynomialModel& model, const FitReport* fit) {
    out << "# polynomial force model f(v) = a0 + a1 v + ... + an v^n\n";
    out << "order=" << model.order() << '\n';
    out << "coefficients=";
    for (std::size_t i = 0; i < model.coefficients().size(); ++i) {
        if (i) out << ',';
        out << format_number(model.coefficients()[i]);
    }
    out << '\n';
    out << "signal_units=" << model.signal_units() << '\n';
    if (fit) {
        out << "fit.seed=" << fit->seed << '\n';
        out << "fit.repeats=" << fit->repeats << '\n';
        out << "fit.folds=" << fit->folds << '\n';
        out << "fit.selected_order=" << fit->selected_order << '\n';
        for (const auto& s : fit->scores) {
            out << "fit.order" << s.order << ".train_rmse=" << format_number(s.mean_train_rmse)
                << '\n';
            out << "fit.order" << s.order << ".test_rmse=" << format_number(s.mean_test_rmse)
                << '\n';
        }
    }
}

namespace {

const std::string& require_key(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(0, "model file is missing '" + key + "'");
    return it->second;
}

long long parse_integer(const std::string& text, const std::string& key) {
    long long value = 0;
    const auto* end = text.data() + text.size();
    const auto result = std::from_chars(text.data(), end, value);
    if (text.empty() || result.ec != std::errc{} || result.ptr != end) {
        throw ParseError(0, "'" + key + "' must be an integer, got '" + text + "'");
    }
    return value;
}

}  // namespace

ModelFile read_model(std::istream& in) {
    const KeyValues kv = read_key_values(in);
    const auto order = parse_integer(require_key(kv, "order"), "order");
    std::vector<double> coefficients;
    for (auto f : split(require_key(kv, "coefficients"), ',')) {
        coefficients.push_back(parse_number(f, 0, "coefficient"));
    }
    if (static_cast<long long>(coefficients.size()) != order + 1) {
        throw ParseError(0, "model order " + std::to_string(order) + " needs " +
                                std::to_string(order + 1) + " coefficients, got " +
                                std::to_string(coefficients.size()));
    }
    ModelFile file;
    try {
        file.model = PolynomialModel(std::move(coefficients), require_key(kv, "signal_units"));
    } catch (const UsageError& e) {
        throw ParseError(0, e.what());
    }
    if (kv.contains("fit.seed")) {
        FitReport fit;
        fit.seed = static_cast<std::uint64_t>(parse_integer(require_key(kv, "fit.seed"), "fit.seed"));
        fit.repeats = static_cast<int>(parse_integer(require_key(kv, "fit.repeats"), "fit.repeats"));
        fit.folds = static_cast<int>(parse_integer(require_key(kv, "fit.folds"), "fit.folds"));
        fit.selected_order = static_cast<int>(
            parse_integer(require_key(kv, "fit.selected_order"), "fit.selected_order"));
        for (int o = 1; o <= 64; ++o) {
            const std::string prefix = "fit.order" + std::to_string(o);
            if (!kv.contains(prefix + ".train_rmse")) continue;
            fit.scores.push_back({o, parse_number(require_key(kv, prefix + ".train_rmse"), 0, "rmse"),
                                  parse_number(require_key(kv, prefix + ".test_rmse"), 0, "rmse")});
        }
        file.fit = fit;
    }
    return file;
}

ModelFile read_model_file(const std::string& path) {
    auto in = open_input(path);
    return read_model(in);
}

}  // namespace tactile
