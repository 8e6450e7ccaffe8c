#include "qpade/recurrence.hpp"

#include <cmath>
#include <vector>

#include "qpade/errors.hpp"

namespace qpade {

ModelParams::ModelParams(double beta1, double beta2, double beta3) : beta1_(beta1), beta2_(beta2), beta3_(beta3) {
    if (!std::isfinite(beta1) || !std::isfinite(beta2) || !std::isfinite(beta3))
        throw InvalidParameters("conductivity coefficients must be finite");
    if (1.0 + beta1 == 0.0) throw InvalidParameters("1 + beta1 must be nonzero");

    // Denominator 1 + 2 b3 P + b2 P^2 on [0, 1]: endpoints, plus the vertex of a convex parabola.
    auto den = [&](double p) { return 1.0 + 2.0 * beta3 * p + beta2 * p * p; };
    bool positive = den(0.0) > 0.0 && den(1.0) > 0.0;
    if (beta2 > 0.0) {
        const double vertex = -beta3 / beta2;
        if (vertex > 0.0 && vertex < 1.0) positive = positive && den(vertex) > 0.0;
    }
    if (!positive) throw InvalidParameters("conductivity denominator must stay positive for P in [0, 1]");
}

double ModelParams::conductivity(double p) const noexcept {
    return (1.0 + beta1_ * p) / (1.0 + 2.0 * beta3_ * p + beta2_ * p * p);
}

double ModelParams::conductivity_slope(double p) const noexcept {
    const double num = 1.0 + beta1_ * p;
    const double den = 1.0 + 2.0 * beta3_ * p + beta2_ * p * p;
    return (beta1_ * den - num * (2.0 * beta3_ + 2.0 * beta2_ * p)) / (den * den);
}

TruncatedSeries ModelParams::conductivity(const TruncatedSeries& p) const {
    const auto one = TruncatedSeries::constant(1.0, p.order());
    return (one + beta1_ * p) / (one + (2.0 * beta3_) * p + beta2_ * (p * p));
}

TravelingParams::TravelingParams(double tau, double theta, double c, ModelParams model)
    : tau_(tau), theta_(theta), c_(c), model_(model) {
    if (!(tau > 0.0) || !(theta > 0.0) || !(c > 0.0))
        throw InvalidParameters("tau, theta and c must be strictly positive");
}

const char* to_string(OdeKind kind) noexcept {
    switch (kind) {
    case OdeKind::SelfSimilar: return "self_similar";
    case OdeKind::TravelingWave: return "traveling_wave";
    }
    return "unknown";
}

Problem::Problem(OdeKind kind, ModelParams model, std::optional<TravelingParams> tp, double r0)
    : kind_(kind), model_(model), traveling_(std::move(tp)), boundary_value_(r0) {
    if (!std::isfinite(r0)) throw InvalidParameters("boundary value must be finite");
}

Problem Problem::self_similar(ModelParams model, double boundary_value) {
    return Problem(OdeKind::SelfSimilar, model, std::nullopt, boundary_value);
}

Problem Problem::traveling_wave(TravelingParams params, double boundary_value) {
    return Problem(OdeKind::TravelingWave, params.model(), params, boundary_value);
}

const TravelingParams& Problem::traveling() const {
    if (!traveling_) throw InvalidParameters("problem has no traveling-wave parameters");
    return *traveling_;
}

TruncatedSeries residual_series(const Problem& problem, const TruncatedSeries& p) {
    if (p.order() < 2) throw InvalidParameters("residual needs a series of order >= 2");
    const int out = p.order() - 2;
    const auto dp = derivative(p);
    const auto flux = problem.model().conductivity(p) * dp;
    const auto dflux = derivative(flux);

    if (problem.kind() == OdeKind::SelfSimilar) {
        const auto advect = 2.0 * (TruncatedSeries::identity(p.order() - 1) * dp);
        return (dflux + advect).truncated(out);
    }

    const auto& tp = problem.traveling();
    const double c = tp.c();
    const double tau = tp.tau();
    return ((tau * c * c) * dp + (c * tau * tp.theta()) * dflux - c * p - flux).truncated(out);
}

double solve_coefficient(const Problem& problem, const TruncatedSeries& prefix, int k, double trial_a,
                         double trial_b) {
    if (k < 2 || k > prefix.order()) throw InvalidParameters("coefficient index out of range");
    if (trial_a == trial_b) throw InvalidParameters("probe trials must differ");

    std::vector<double> c(prefix.coeffs().begin(), prefix.coeffs().begin() + k + 1);
    const auto probe = [&](double trial) {
        c[static_cast<std::size_t>(k)] = trial;
        return residual_series(problem, TruncatedSeries(c))[static_cast<std::size_t>(k - 2)];
    };
    const double fa = probe(trial_a);
    const double fb = probe(trial_b);
    const double slope = (fb - fa) / (trial_b - trial_a);

    const double scale = std::abs(fa) + std::abs(fb) + 1.0;
    if (!std::isfinite(slope) || std::abs(slope) <= 1e-13 * scale)
        throw SingularRecurrence(k, "residual does not depend on the leading coefficient (G(r0) = 0?)");
    return trial_a - fa / slope;
}

TruncatedSeries taylor_coefficients(const Problem& problem, double r0, double r1, int order) {
    if (order < 2) throw InvalidParameters("taylor_coefficients needs order >= 2");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    c[0] = r0;
    c[1] = r1;
    for (int k = 2; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = solve_coefficient(problem, TruncatedSeries(c), k);
    }
    return TruncatedSeries(std::move(c));
}

}  // namespace qpade
