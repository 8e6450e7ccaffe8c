#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qpade {

/// Power series c0 + c1 x + ... + cN x^N truncated at degree N.
///
/// Binary operations return a series of order min(order(a), order(b)); terms
/// beyond that degree are dropped, never guessed.
class TruncatedSeries {
public:
    /// Throws NonFiniteCoefficient on NaN/inf and InvalidParameters on an empty vector.
    explicit TruncatedSeries(std::vector<double> coeffs);

    static TruncatedSeries constant(double value, int order);
    /// The series "x" at the given order (order >= 1).
    static TruncatedSeries identity(int order);
    static TruncatedSeries zero(int order) { return constant(0.0, order); }

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t k) const { return coeffs_.at(k); }

    /// Drops (or zero-pads) to the given order.
    TruncatedSeries truncated(int order) const;
    double evaluate(double x) const noexcept;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<double> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(double s, const TruncatedSeries& a);
/// Cauchy product.
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
/// Series quotient; throws DivisionByZeroSeries when den[0] == 0.
TruncatedSeries operator/(const TruncatedSeries& num, const TruncatedSeries& den);

/// Term-wise derivative. Order drops by one; an order-0 input gives the zero series of order 0.
TruncatedSeries derivative(const TruncatedSeries& a);

}  // namespace qpade
