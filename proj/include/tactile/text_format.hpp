#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactile/calibration.hpp"
#include "tactile/estimator.hpp"
#include "tactile/sensor_physics.hpp"

namespace tactile {

/// Shortest decimal that parses back to the same double.
std::string format_number(double value);

/// Strict decimal parse of a whole (trimmed) field. Throws ParseError tagged with line.
double parse_number(std::string_view field, std::size_t line, std::string_view what);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);

/// True for blank lines and '#' comments.
bool is_skippable(std::string_view line);

// ---------------------------------------------------------------------------
// Sample stream: "t,v0,v1,v2,v3,v4", one line per ADC tick.

struct SampleLine {
    double time = 0.0;
    ChannelSignals channels{};
};

SampleLine parse_sample_line(std::string_view text, std::size_t line = 0);
std::string format_sample_line(const SampleLine& sample);

// ---------------------------------------------------------------------------
// Frame records: "t,raw_n,filtered_n,e1,e2,e3,e4,pattern".

EstimateFrame parse_frame_line(std::string_view text, std::size_t line = 0);
std::string format_frame_line(const EstimateFrame& frame);

// ---------------------------------------------------------------------------
// Scenario CSV: header "t,force_n,quadrants", quadrants joined with '+'.

LoadScenario read_scenario(std::istream& in);
LoadScenario read_scenario_file(const std::string& path);
void write_scenario(std::ostream& out, const LoadScenario& scenario);

// ---------------------------------------------------------------------------
// Dataset CSV: header "v,force_n" with an optional trailing "weight_gw" column.

CalibrationDataset read_dataset(std::istream& in, const std::string& signal_units = "volt");
CalibrationDataset read_dataset_file(const std::string& path,
                                     const std::string& signal_units = "volt");
void write_dataset(std::ostream& out, const CalibrationDataset& dataset);

// ---------------------------------------------------------------------------
// key=value documents (config and model files).

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues read_key_values(std::istream& in);

/// Model file: order, coefficients, signal units and fit metadata.
struct ModelFile {
    PolynomialModel model;
    std::optional<FitReport> fit;
};

void write_model(std::ostream& out, const PolynomialModel& model, const FitReport* fit);
ModelFile read_model(std::istream& in);
ModelFile read_model_file(const std::string& path);

}  // namespace tactile
