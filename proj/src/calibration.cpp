#include "tactile/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tactile/error.hpp"

namespace tactile {

PolynomialModel::PolynomialModel(std::vector<double> coefficients, std::string signal_units)
    : coefficients_(std::move(coefficients)), signal_units_(std::move(signal_units)) {
    if (coefficients_.size() < 2) {
        throw UsageError("polynomial model needs order >= 1 (at least two coefficients)");
    }
    for (double c : coefficients_) {
        if (!std::isfinite(c)) throw UsageError("polynomial coefficient is not finite");
    }
    if (signal_units_.empty()) {
        throw UsageError("polynomial model needs a signal units tag");
    }
}

double PolynomialModel::operator()(double v) const {
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
        acc = acc * v + *it;
    }
    return acc;
}

std::vector<double> CalibrationDataset::signals() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.signal);
    return out;
}

std::vector<double> CalibrationDataset::forces() const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(s.force);
    return out;
}

std::vector<std::pair<GramWeight, int>> protocol_weights() {
    // 20 and 100 gw were pressed nine times, 50 gw ten times, the rest eight.
    return {
        {GramWeight(5), 8},   {GramWeight(10), 8}, {GramWeight(20), 9},  {GramWeight(25), 8},
        {GramWeight(35), 8},  {GramWeight(45), 8}, {GramWeight(50), 10}, {GramWeight(55), 8},
        {GramWeight(65), 8},  {GramWeight(75), 8}, {GramWeight(85), 8},  {GramWeight(100), 9},
    };
}

std::vector<double> protocol_forces() {
    std::vector<double> out;
    for (const auto& [weight, count] : protocol_weights()) {
        out.insert(out.end(), static_cast<std::size_t>(count), gw_to_newtons(weight).value());
    }
    return out;
}

Eigen::MatrixXd build_design_matrix(std::span<const double> signals, int order) {
    if (order < 1) {
        throw UsageError("polynomial order must be >= 1, got " + std::to_string(order));
    }
    const auto rows = static_cast<Eigen::Index>(signals.size());
    const Eigen::Index cols = order + 1;
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double v = signals[static_cast<std::size_t>(i)];
        if (!std::isfinite(v)) throw UsageError("non-finite signal in design matrix");
        double power = 1.0;
        for (Eigen::Index j = 0; j < cols; ++j) {
            a(i, j) = power;
            power *= v;
        }
    }
    return a;
}

Eigen::VectorXd least_squares_fit(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
    const int order = static_cast<int>(a.cols()) - 1;
    if (a.rows() != y.size()) {
        throw UsageError("design matrix and force vector differ in length");
    }
    if (a.rows() < a.cols()) {
        throw UnderdeterminedFitError(order, "order " + std::to_string(order) + " needs at least " +
                                                 std::to_string(a.cols()) + " samples, got " +
                                                 std::to_string(a.rows()));
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < a.cols()) {
        throw SingularFitError(order, "order " + std::to_string(order) +
                                          " design matrix is rank deficient (rank " +
                                          std::to_string(qr.rank()) + " < " +
                                          std::to_string(a.cols()) + ")");
    }
    return qr.solve(y);
}

PolynomialModel fit_polynomial(std::span<const double> signals, std::span<const double> forces,
                               int order, const std::string& signal_units) {
    if (signals.size() != forces.size()) {
        throw UsageError("signals and forces differ in length");
    }
    const Eigen::MatrixXd a = build_design_matrix(signals, order);
    const Eigen::VectorXd y =
        Eigen::Map<const Eigen::VectorXd>(forces.data(), static_cast<Eigen::Index>(forces.size()));
    const Eigen::VectorXd x = least_squares_fit(a, y);
    return PolynomialModel(std::vector<double>(x.data(), x.data() + x.size()), signal_units);
}

std::vector<int> kfold_split(std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw UsageError("k-fold split needs k >= 2, got " + std::to_string(k));
    if (n < static_cast<std::size_t>(k)) {
        throw UsageError("k-fold split needs at least k = " + std::to_string(k) +
                         " samples, got " + std::to_string(n));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<int> fold(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
        fold[order[pos]] = static_cast<int>(pos * static_cast<std::size_t>(k) / n);
    }
    return fold;
}

const OrderScore& FitReport::selected() const {
    for (const auto& s : scores) {
        if (s.order == selected_order) return s;
    }
    throw UsageError("fit report has no entry for the selected order");
}

namespace {

double model_rmse(const PolynomialModel& model, std::span<const double> signals,
                  std::span<const double> forces) {
    std::vector<double> predicted(signals.size());
    std::transform(signals.begin(), signals.end(), predicted.begin(),
                   [&](double v) { return model(v); });
    return rmse(predicted, forces);
}

}  // namespace

FitReport cross_validate(const CalibrationDataset& dataset, const CrossValidationOptions& options) {
    if (options.min_order < 1 || options.max_order < options.min_order) {
        throw UsageError("invalid order range " + std::to_string(options.min_order) + ".." +
                         std::to_string(options.max_order));
    }
    if (options.repeats < 1) throw UsageError("cross-validation needs at least one repeat");

    const std::size_t m = dataset.size();
    for (int order = options.min_order; order <= options.max_order; ++order) {
        if (m < static_cast<std::size_t>(order) + 1) {
            throw UnderdeterminedFitError(
                order, "order " + std::to_string(order) + " needs at least " +
                           std::to_string(order + 1) + " samples, dataset has " +
                           std::to_string(m) + " (orders >= " + std::to_string(m) +
                           " cannot be fitted)");
        }
    }

    const std::vector<double> signals = dataset.signals();
    const std::vector<double> forces = dataset.forces();
    const int n_orders = options.max_order - options.min_order + 1;
    std::vector<double> train_sum(static_cast<std::size_t>(n_orders), 0.0);
    std::vector<double> test_sum(static_cast<std::size_t>(n_orders), 0.0);
    std::size_t rounds = 0;

    std::mt19937_64 seeder(options.seed);
    std::vector<double> train_v, train_f, test_v, test_f;
    for (int repeat = 0; repeat < options.repeats; ++repeat) {
        const std::vector<int> fold = kfold_split(m, options.folds, seeder());
        const int test_folds = options.strict_paper ? 1 : options.folds;
        for (int test_fold = 0; test_fold < test_folds; ++test_fold) {
            train_v.clear();
            train_f.clear();
            test_v.clear();
            test_f.clear();
            for (std::size_t i = 0; i < m; ++i) {
                if (fold[i] == test_fold) {
                    test_v.push_back(signals[i]);
                    test_f.push_back(forces[i]);
                } else {
                    train_v.push_back(signals[i]);
                    train_f.push_back(forces[i]);
                }
            }
            for (int order = options.min_order; order <= options.max_order; ++order) {
                const auto slot = static_cast<std::size_t>(order - options.min_order);
                try {
                    const PolynomialModel model =
                        fit_polynomial(train_v, train_f, order, dataset.signal_units);
                    train_sum[slot] += model_rmse(model, train_v, train_f);
                    test_sum[slot] += model_rmse(model, test_v, test_f);
                } catch (const SingularFitError& e) {
                    throw SingularFitError(order, std::string(e.what()) + " (repeat " +
                                                      std::to_string(repeat) + ", test fold " +
                                                      std::to_string(test_fold) + ")");
                } catch (const UnderdeterminedFitError& e) {
                    throw UnderdeterminedFitError(
                        order, std::string(e.what()) + " (repeat " + std::to_string(repeat) +
                                   ", test fold " + std::to_string(test_fold) + ")");
                }
            }
            ++rounds;
        }
    }

    FitReport report;
    report.repeats = options.repeats;
    report.folds = options.folds;
    report.seed = options.seed;
    double best = 0.0;
    for (int order = options.min_order; order <= options.max_order; ++order) {
        const auto slot = static_cast<std::size_t>(order - options.min_order);
        OrderScore score{order, train_sum[slot] / static_cast<double>(rounds),
                         test_sum[slot] / static_cast<double>(rounds)};
        if (report.scores.empty() || score.mean_test_rmse < best) {
            best = score.mean_test_rmse;
            report.selected_order = order;
        }
        report.scores.push_back(score);
    }
    return report;
}

CalibrationDataset synthesize_dataset(const PolynomialModel& model, std::span<const double> signals,
                                      double force_sigma, std::uint64_t seed) {
    if (!(force_sigma >= 0.0)) throw UsageError("noise sigma must be non-negative");
    CalibrationDataset out;
    out.signal_units = model.signal_units();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (double v : signals) {
        const double clean = model(v);
        const double n = force_sigma > 0.0 ? force_sigma * noise(rng) : 0.0;
        out.samples.push_back({v, clean + n, std::nullopt});
    }
    return out;
}

}  // namespace tactile
