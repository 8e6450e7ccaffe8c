#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qpade/series.hpp"

namespace qpade {

/// Decay factor multiplying the rational part: exp(-x^2) or exp(H x) with H < 0.
class AsymptoticFactor {
public:
    static AsymptoticFactor gaussian() { return AsymptoticFactor(true, 0.0); }
    /// Throws InvalidParameters unless rate < 0.
    static AsymptoticFactor exponential(double rate);

    bool is_gaussian() const noexcept { return gaussian_; }
    /// H of exp(H x); zero for the Gaussian factor.
    double rate() const noexcept { return rate_; }

    double operator()(double x) const noexcept;
    /// Maclaurin series of the factor through the given order.
    TruncatedSeries maclaurin(int order) const;
    /// The factor's derivative at x = 0.
    double slope_at_zero() const noexcept { return gaussian_ ? 0.0 : rate_; }
    /// Start of the quadrature tail: 8 for the Gaussian, 28/|H| for the exponential.
    double default_cutoff() const noexcept;

    friend bool operator==(const AsymptoticFactor&, const AsymptoticFactor&) = default;

private:
    AsymptoticFactor(bool gaussian, double rate) : gaussian_(gaussian), rate_(rate) {}
    bool gaussian_;
    double rate_;
};

struct IntegrationOptions {
    enum class Method { Auto, Quadrature, ClosedForm };
    Method method = Method::Auto;
    /// Integrate over [0, cutoff] only. Unset means the whole half-line.
    std::optional<double> cutoff;
    double tol = 1e-12;
};

/// (A0 + A1 x + ... + AM x^M) / (1 + B1 x + ... + BM x^M) * factor(x), x >= 0.
class QuasiPade {
public:
    /// Validates B0 == 1, equal lengths and a denominator free of roots on [0, inf).
    QuasiPade(std::vector<double> numerator, std::vector<double> denominator, AsymptoticFactor factor);

    int order() const noexcept { return static_cast<int>(numerator_.size()) - 1; }
    std::span<const double> numerator() const noexcept { return numerator_; }
    std::span<const double> denominator() const noexcept { return denominator_; }
    const AsymptoticFactor& factor() const noexcept { return factor_; }

    double operator()(double x) const noexcept;
    double rational_part(double x) const noexcept;
    /// d/dx at x = 0: A1 - A0 B1 + A0 * factor'(0).
    double slope_at_zero() const noexcept;
    TruncatedSeries maclaurin(int order) const;

    /// Integral over [0, inf) (or [0, cutoff]). The Ei closed form is used for
    /// exponential M = 1 under Method::Auto; everything else goes through quadrature.
    double integrate(const IntegrationOptions& options = {}) const;
    double integrate_closed_form() const;
    double integrate_quadrature(double tol = 1e-12, std::optional<double> cutoff = std::nullopt) const;

private:
    std::vector<double> numerator_;
    std::vector<double> denominator_;
    AsymptoticFactor factor_;
};

/// True when the polynomial (ascending coefficients, p(0) > 0) has no root on [0, inf).
bool positive_on_half_line(std::span<const double> poly);

/// [M/M] approximant whose Maclaurin expansion matches `series` through degree 2M.
/// Throws DegenerateTable for a singular matching system and RejectedApproximant for
/// a denominator with a root on [0, inf).
QuasiPade build_quasi_pade(const TruncatedSeries& series, int order, AsymptoticFactor factor);

}  // namespace qpade
