#include "qpade/quasi_pade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "qpade/errors.hpp"
#include "qpade/numerics.hpp"

namespace qpade {

namespace {

double horner(std::span<const double> c, double x) noexcept {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

AsymptoticFactor AsymptoticFactor::exponential(double rate) {
    if (!(rate < 0.0) || !std::isfinite(rate)) throw InvalidParameters("exponential factor needs a negative rate");
    return AsymptoticFactor(false, rate);
}

double AsymptoticFactor::operator()(double x) const noexcept {
    return gaussian_ ? std::exp(-x * x) : std::exp(rate_ * x);
}

TruncatedSeries AsymptoticFactor::maclaurin(int order) const {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    if (gaussian_) {
        double term = 1.0;
        for (int n = 0; 2 * n <= order; ++n) {
            c[static_cast<std::size_t>(2 * n)] = term;
            term *= -1.0 / (n + 1);
        }
    } else {
        double term = 1.0;
        for (int k = 0; k <= order; ++k) {
            c[static_cast<std::size_t>(k)] = term;
            term *= rate_ / (k + 1);
        }
    }
    return TruncatedSeries(std::move(c));
}

double AsymptoticFactor::default_cutoff() const noexcept {
    return gaussian_ ? 8.0 : 28.0 / std::abs(rate_);
}

bool positive_on_half_line(std::span<const double> poly) {
    if (poly.empty() || !(poly[0] > 0.0)) return false;

    // Effective degree: drop negligible leading terms.
    const double mag = std::abs(*std::max_element(poly.begin(), poly.end(),
                                                  [](double a, double b) { return std::abs(a) < std::abs(b); }));
    std::size_t deg = poly.size() - 1;
    while (deg > 0 && std::abs(poly[deg]) <= 1e-14 * mag) --deg;
    if (deg == 0) return true;
    const auto p = poly.first(deg + 1);

    // Cauchy bound: every real root lies in |x| < 1 + max |p_j / p_deg|.
    double bound = 0.0;
    for (std::size_t j = 0; j < deg; ++j) bound = std::max(bound, std::abs(p[j] / p[deg]));
    bound += 1.0;

    std::vector<double> dp(deg);
    for (std::size_t j = 1; j <= deg; ++j) dp[j - 1] = static_cast<double>(j) * p[j];

    // Values this small relative to the coefficient scale count as a root (e.g. a double root).
    const auto near_zero = [&](double x) {
        double scale = 0.0;
        double xp = 1.0;
        for (std::size_t j = 0; j <= deg; ++j, xp *= x) scale += std::abs(p[j]) * xp;
        return horner(p, x) <= 1e-12 * scale;
    };

    constexpr int cells = 4096;
    const double h = bound / cells;
    double x_prev = 0.0;
    double d_prev = horner(dp, 0.0);
    for (int i = 1; i <= cells; ++i) {
        const double x = i * h;
        if (near_zero(x)) return false;
        const double d = horner(dp, x);
        // A local minimum inside the cell could touch zero between samples.
        if (d_prev < 0.0 && d > 0.0) {
            double lo = x_prev, hi = x;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (horner(dp, mid) < 0.0 ? lo : hi) = mid;
            }
            if (near_zero(0.5 * (lo + hi))) return false;
        }
        x_prev = x;
        d_prev = d;
    }
    return true;
}

QuasiPade::QuasiPade(std::vector<double> numerator, std::vector<double> denominator, AsymptoticFactor factor)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)), factor_(factor) {
    if (numerator_.empty() || numerator_.size() != denominator_.size())
        throw InvalidParameters("numerator and denominator must both have M + 1 coefficients");
    if (denominator_[0] != 1.0) throw InvalidParameters("denominator must be normalized to B0 = 1");
    for (double v : numerator_)
        if (!std::isfinite(v)) throw NonFiniteCoefficient("approximant numerator is not finite");
    for (double v : denominator_)
        if (!std::isfinite(v)) throw NonFiniteCoefficient("approximant denominator is not finite");
    if (!positive_on_half_line(denominator_))
        throw RejectedApproximant("approximant denominator has a root on [0, inf)");
}

double QuasiPade::rational_part(double x) const noexcept {
    return horner(numerator_, x) / horner(denominator_, x);
}

double QuasiPade::operator()(double x) const noexcept { return rational_part(x) * factor_(x); }

double QuasiPade::slope_at_zero() const noexcept {
    const double a0 = numerator_[0];
    const double a1 = order() >= 1 ? numerator_[1] : 0.0;
    const double b1 = order() >= 1 ? denominator_[1] : 0.0;
    return a1 - a0 * b1 + a0 * factor_.slope_at_zero();
}

TruncatedSeries QuasiPade::maclaurin(int order) const {
    const auto num = TruncatedSeries(numerator_).truncated(order);
    const auto den = TruncatedSeries(denominator_).truncated(order);
    return (num / den) * factor_.maclaurin(order);
}

double QuasiPade::integrate_closed_form() const {
    if (factor_.is_gaussian() || order() != 1)
        throw InvalidParameters("closed-form integral exists only for exponential M = 1");
    const double h = factor_.rate();
    const double a0 = numerator_[0];
    const double a1 = numerator_[1];
    const double b1 = denominator_[1];
    if (b1 == 0.0) return -a0 / h + a1 / (h * h);
    // (A0 + A1 x)/(1 + B1 x) = A1/B1 + (A0 - A1/B1)/(1 + B1 x); the second piece is an E1 integral.
    const double arg = h / b1;
    if (-arg > 700.0) return integrate_quadrature();
    return -a1 / (b1 * h) + (a1 - a0 * b1) / (b1 * b1) * expint_ei(arg) * std::exp(-arg);
}

double QuasiPade::integrate_quadrature(double tol, std::optional<double> cutoff) const {
    const auto f = [this](double x) { return (*this)(x); };
    if (cutoff) return quad_adaptive(f, 0.0, *cutoff, tol);

    // Grow the tail start until sup|R| * int_L^inf factor is below tol.
    double limit = factor_.default_cutoff();
    const double m = order();
    const double r_inf = std::abs(numerator_.back()) / std::max(std::abs(denominator_.back()), 1e-300);
    for (int i = 0; i < 60; ++i) {
        const double sup_r = std::max({std::abs(rational_part(limit)), std::abs(rational_part(2.0 * limit)),
                                       m > 0 && std::abs(denominator_.back()) > 0.0 ? r_inf : 0.0});
        const double tail = factor_.is_gaussian() ? std::exp(-limit * limit) / (2.0 * limit)
                                                  : std::exp(factor_.rate() * limit) / std::abs(factor_.rate());
        if (sup_r * tail < tol) break;
        limit *= 1.25;
    }
    return quad_adaptive(f, 0.0, limit, tol);
}

double QuasiPade::integrate(const IntegrationOptions& options) const {
    using Method = IntegrationOptions::Method;
    const bool closed_ok = !factor_.is_gaussian() && order() == 1 && !options.cutoff;
    switch (options.method) {
    case Method::ClosedForm: return integrate_closed_form();
    case Method::Quadrature: return integrate_quadrature(options.tol, options.cutoff);
    case Method::Auto: break;
    }
    return closed_ok ? integrate_closed_form() : integrate_quadrature(options.tol, options.cutoff);
}

QuasiPade build_quasi_pade(const TruncatedSeries& series, int order, AsymptoticFactor factor) {
    if (order < 1) throw InvalidParameters("approximant order must be positive");
    const int n = 2 * order;
    if (series.order() < n) throw InvalidParameters("series order must be at least 2M");

    // q = P / factor, matched by A(x)/B(x) through degree 2M:
    //   A_k - sum_{j=1..min(k,M)} B_j q_{k-j} = q_k,  k = 1..2M,  with A_k = 0 for k > M.
    const auto q = series.truncated(n) / factor.maclaurin(n);
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs(n);
    for (int k = 1; k <= n; ++k) {
        const int row = k - 1;
        if (k <= order) sys(row, k - 1) = 1.0;  // A_k
        for (int j = 1; j <= std::min(k, order); ++j) sys(row, order + j - 1) = -q[static_cast<std::size_t>(k - j)];
        rhs(row) = q[static_cast<std::size_t>(k)];
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw DegenerateTable("[M/M] matching system is singular");
    const Eigen::VectorXd sol = lu.solve(rhs);
    if (!sol.allFinite()) throw DegenerateTable("[M/M] matching system produced non-finite coefficients");

    std::vector<double> num(static_cast<std::size_t>(order) + 1);
    std::vector<double> den(static_cast<std::size_t>(order) + 1);
    num[0] = q[0];
    den[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
        num[static_cast<std::size_t>(k)] = sol(k - 1);
        den[static_cast<std::size_t>(k)] = sol(order + k - 1);
    }
    return QuasiPade(std::move(num), std::move(den), factor);
}

}  // namespace qpade
