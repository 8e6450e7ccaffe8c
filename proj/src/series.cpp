#include "qpade/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpade/errors.hpp"

namespace qpade {

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidParameters("truncated series needs at least one coefficient");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!std::isfinite(coeffs_[k]))
            throw NonFiniteCoefficient("series coefficient " + std::to_string(k) + " is not finite");
    }
}

TruncatedSeries TruncatedSeries::constant(double value, int order) {
    if (order < 0) throw InvalidParameters("series order must be non-negative");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = value;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::identity(int order) {
    if (order < 1) throw InvalidParameters("identity series needs order >= 1");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[1] = 1.0;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    if (order < 0) throw InvalidParameters("series order must be non-negative");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    std::copy_n(coeffs_.begin(), std::min(c.size(), coeffs_.size()), c.begin());
    return TruncatedSeries(std::move(c));
}

double TruncatedSeries::evaluate(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

std::size_t common_size(const TruncatedSeries& a, const TruncatedSeries& b) {
    return static_cast<std::size_t>(std::min(a.order(), b.order())) + 1;
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::vector<double> c(common_size(a, b));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::vector<double> c(common_size(a, b));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(double s, const TruncatedSeries& a) {
    std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
    for (double& x : c) x *= s;
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    std::vector<double> c(common_size(a, b), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        for (std::size_t j = 0; j <= k; ++j) c[k] += ac[j] * bc[k - j];
    }
    return TruncatedSeries(std::move(c));
}

TruncatedSeries operator/(const TruncatedSeries& num, const TruncatedSeries& den) {
    const auto nc = num.coeffs();
    const auto dc = den.coeffs();
    if (dc[0] == 0.0) throw DivisionByZeroSeries();
    std::vector<double> q(common_size(num, den), 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) {
        double s = nc[k];
        for (std::size_t j = 0; j < k; ++j) s -= q[j] * dc[k - j];
        q[k] = s / dc[0];
    }
    return TruncatedSeries(std::move(q));
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    if (a.order() == 0) return TruncatedSeries::zero(0);
    std::vector<double> d(static_cast<std::size_t>(a.order()));
    for (std::size_t k = 1; k <= d.size(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
    return TruncatedSeries(std::move(d));
}

}  // namespace qpade
