#include "tactile/units.hpp"

#include <cmath>
#include <string>

#include "tactile/error.hpp"

namespace tactile {

Newtons gw_to_newtons(GramWeight w) {
    if (!std::isfinite(w.value()) || w.value() < 0.0) {
        throw DomainError("gram-weight must be finite and non-negative, got " +
                          std::to_string(w.value()));
    }
    return Newtons(w.value() * kNewtonsPerGramWeight);
}

double rmse(std::span<const double> predicted, std::span<const double> truth) {
    if (predicted.size() != truth.size()) {
        throw UsageError("rmse: length mismatch (" + std::to_string(predicted.size()) + " vs " +
                         std::to_string(truth.size()) + ")");
    }
    if (predicted.empty()) {
        throw UsageError("rmse: empty input");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - truth[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(predicted.size()));
}

}  // namespace tactile
