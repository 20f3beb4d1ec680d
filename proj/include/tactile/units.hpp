#pragma once

#include <compare>
#include <span>

namespace tactile {

/// Thin strongly-typed wrapper around a double. Tag selects the unit.
template <typename Tag>
class Quantity {
public:
    constexpr Quantity() = default;
    constexpr explicit Quantity(double value) : value_(value) {}

    constexpr double value() const { return value_; }

    constexpr Quantity operator+(Quantity other) const { return Quantity(value_ + other.value_); }
    constexpr Quantity operator-(Quantity other) const { return Quantity(value_ - other.value_); }
    constexpr Quantity operator*(double k) const { return Quantity(value_ * k); }
    constexpr Quantity operator/(double k) const { return Quantity(value_ / k); }
    constexpr double operator/(Quantity other) const { return value_ / other.value_; }

    constexpr auto operator<=>(const Quantity&) const = default;

private:
    double value_ = 0.0;
};

using Newtons = Quantity<struct NewtonTag>;
using GramWeight = Quantity<struct GramWeightTag>;
using Volts = Quantity<struct VoltTag>;
using Ohms = Quantity<struct OhmTag>;
using Seconds = Quantity<struct SecondTag>;

/// Standard gravity in the convention 100 gw = 0.98 N.
inline constexpr double kGravity = 9.8;
inline constexpr double kNewtonsPerGramWeight = kGravity / 1000.0;

/// Throws DomainError for negative or non-finite weights.
Newtons gw_to_newtons(GramWeight w);

/// Root-mean-square difference of two equally sized, non-empty series.
double rmse(std::span<const double> predicted, std::span<const double> truth);

}  // namespace tactile
