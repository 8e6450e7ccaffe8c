#pragma once

#include <optional>

#include "qpade/series.hpp"

namespace qpade {

/// Coefficients of the conductivity ratio G(P) = (1 + b1 P) / (1 + 2 b3 P + b2 P^2).
class ModelParams {
public:
    /// Throws InvalidParameters unless 1 + b1 != 0 and the denominator stays positive on [0, 1].
    ModelParams(double beta1, double beta2, double beta3);

    /// Convenience for data sets that publish 2*beta3 rather than beta3.
    static ModelParams from_two_beta3(double beta1, double beta2, double two_beta3) {
        return ModelParams(beta1, beta2, 0.5 * two_beta3);
    }
    static ModelParams linear() { return ModelParams(0.0, 0.0, 0.0); }

    double beta1() const noexcept { return beta1_; }
    double beta2() const noexcept { return beta2_; }
    double beta3() const noexcept { return beta3_; }

    double conductivity(double p) const noexcept;
    /// dG/dP
    double conductivity_slope(double p) const noexcept;
    /// G applied to a series, as a series quotient.
    TruncatedSeries conductivity(const TruncatedSeries& p) const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double beta1_;
    double beta2_;
    double beta3_;
};

/// Relaxation constants of the traveling-wave reduction.
class TravelingParams {
public:
    /// tau, theta and c must be strictly positive.
    TravelingParams(double tau, double theta, double c, ModelParams model);

    double tau() const noexcept { return tau_; }
    double theta() const noexcept { return theta_; }
    double c() const noexcept { return c_; }
    const ModelParams& model() const noexcept { return model_; }

    friend bool operator==(const TravelingParams&, const TravelingParams&) = default;

private:
    double tau_;
    double theta_;
    double c_;
    ModelParams model_;
};

enum class OdeKind { SelfSimilar, TravelingWave };

const char* to_string(OdeKind kind) noexcept;

/// One boundary value problem: which reduced ODE, its parameters, and P(0).
class Problem {
public:
    static Problem self_similar(ModelParams model, double boundary_value = 1.0);
    static Problem traveling_wave(TravelingParams params, double boundary_value = 1.0);

    OdeKind kind() const noexcept { return kind_; }
    const ModelParams& model() const noexcept { return model_; }
    /// Throws InvalidParameters for a self-similar problem.
    const TravelingParams& traveling() const;
    double boundary_value() const noexcept { return boundary_value_; }

    friend bool operator==(const Problem&, const Problem&) = default;

private:
    Problem(OdeKind kind, ModelParams model, std::optional<TravelingParams> tp, double r0);

    OdeKind kind_;
    ModelParams model_;
    std::optional<TravelingParams> traveling_;
    double boundary_value_;
};

/// ODE left-hand side minus right-hand side evaluated on a series; order(p) - 2.
///   self-similar:   (G(P) P')' + 2 x P'
///   traveling wave: tau c^2 P' + c tau theta (G(P) P')' - c P - G(P) P'
TruncatedSeries residual_series(const Problem& problem, const TruncatedSeries& p);

/// Solves for coefficient k of `prefix` (order >= k) so that the residual term of
/// degree k-2 vanishes. The residual is affine in that coefficient, so two trial
/// values determine it; any distinct pair gives the same answer up to rounding.
double solve_coefficient(const Problem& problem, const TruncatedSeries& prefix, int k, double trial_a = 0.0,
                         double trial_b = 1.0);

/// Taylor coefficients (r0, r1, r2, ..., rN) of the solution through P(0) = r0,
/// P'(0) = r1. Throws SingularRecurrence when G(r0) vanishes.
TruncatedSeries taylor_coefficients(const Problem& problem, double r0, double r1, int order);

/// Same, with r0 taken from the problem's boundary value.
inline TruncatedSeries taylor_coefficients(const Problem& problem, double r1, int order) {
    return taylor_coefficients(problem, problem.boundary_value(), r1, order);
}

}  // namespace qpade
