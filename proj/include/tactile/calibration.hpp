#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tactile/units.hpp"

namespace tactile {

/// f(v) = a0 + a1 v + ... + an v^n. The units tag names what v is measured in
/// ("volt", "adc_code", ...), so a model cannot silently meet the wrong stream.
class PolynomialModel {
public:
    PolynomialModel() = default;
    /// Throws UsageError for fewer than two or non-finite coefficients.
    explicit PolynomialModel(std::vector<double> coefficients, std::string signal_units = "volt");

    int order() const { return static_cast<int>(coefficients_.size()) - 1; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::string& signal_units() const { return signal_units_; }

    /// Horner evaluation.
    double operator()(double v) const;

private:
    std::vector<double> coefficients_;
    std::string signal_units_ = "volt";
};

inline double evaluate_model(const PolynomialModel& model, double v) { return model(v); }

struct CalibrationSample {
    double signal = 0.0;
    double force = 0.0;
    std::optional<double> weight_gw;
};

struct CalibrationDataset {
    std::vector<CalibrationSample> samples;
    std::string signal_units = "volt";

    std::size_t size() const { return samples.size(); }
    std::vector<double> signals() const;
    std::vector<double> forces() const;
};

/// The 12-weight loading protocol: (weight, repetitions), 100 presses in total.
std::vector<std::pair<GramWeight, int>> protocol_weights();

/// Protocol expanded to one true force per press, in protocol order.
std::vector<double> protocol_forces();

/// Rows [1, v, v^2, ..., v^order]. Any row count is accepted; the fit rejects
/// systems with fewer rows than coefficients.
Eigen::MatrixXd build_design_matrix(std::span<const double> signals, int order);

/// Minimizes ||A x - y||_2 through a column-pivoted QR factorization.
/// Throws UnderdeterminedFitError for fewer rows than columns and
/// SingularFitError when A is rank deficient.
Eigen::VectorXd least_squares_fit(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

PolynomialModel fit_polynomial(std::span<const double> signals, std::span<const double> forces,
                               int order, const std::string& signal_units = "volt");

/// Shuffles 0..n-1 deterministically under seed and cuts the permutation into k
/// contiguous folds whose sizes differ by at most one. Returns the fold id per sample.
std::vector<int> kfold_split(std::size_t n, int k, std::uint64_t seed);

struct CrossValidationOptions {
    int min_order = 1;
    int max_order = 5;
    int repeats = 20;
    int folds = 5;
    std::uint64_t seed = 1;
    /// Only fold 0 serves as the test fold in each repeat.
    bool strict_paper = false;
};

struct OrderScore {
    int order = 0;
    double mean_train_rmse = 0.0;
    double mean_test_rmse = 0.0;
};

struct FitReport {
    std::vector<OrderScore> scores;
    int selected_order = 0;
    int repeats = 0;
    int folds = 0;
    std::uint64_t seed = 0;

    const OrderScore& selected() const;
};

/// Repeated k-fold cross-validation over a range of polynomial orders. Each
/// repeat reshuffles; every fold (or only fold 0 in strict mode) takes a turn
/// as the test set. The selected order minimizes mean test RMSE.
FitReport cross_validate(const CalibrationDataset& dataset, const CrossValidationOptions& options);

/// Noise-free or Gaussian-perturbed forces generated from a reference model.
CalibrationDataset synthesize_dataset(const PolynomialModel& model, std::span<const double> signals,
                                      double force_sigma, std::uint64_t seed);

}  // namespace tactile
