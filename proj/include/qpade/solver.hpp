#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qpade/numerics.hpp"
#include "qpade/quasi_pade.hpp"
#include "qpade/recurrence.hpp"

namespace qpade {

/// Negative root H of c tau theta H^2 + (tau c^2 - 1) H - c = 0, the decay rate
/// of the linearized traveling-wave equation.
double decay_rate(const TravelingParams& tp);

/// Integral of G over [0, upto].
double conductivity_integral(const ModelParams& model, double upto);

/// Limit of int_0^inf P for the traveling wave with P(0) = r0, P'(0) = r1:
/// (-tau c^2 r0 - c tau theta G(r0) r1 + int_0^r0 G) / c.
double conserved_limit(const Problem& problem, double r1);

/// Gaussian factor for the self-similar problem, exp(H x) for the traveling wave.
AsymptoticFactor asymptotic_factor(const Problem& problem);

/// Taylor series at this slope compressed into an [M/M] approximant.
QuasiPade approximant_for(const Problem& problem, int order, double r1);

struct SolveOptions {
    IntegrationOptions integration{};
    double root_tol = 1e-10;
    double residual_tol = 1e-8;
    int scan_intervals = 50;
    int scan_refinements = 2;  // each refinement scans 8x more subintervals
};

/// Conservation-law mismatch for a candidate slope:
///   self-similar:   r1 + 2 / G(r0) * int_0^inf PA
///   traveling wave: int_0^inf PA - conserved_limit(r1)
/// Throws InfeasibleCandidate when no admissible approximant exists at r1.
double conservation_residual(const Problem& problem, int order, double r1, const SolveOptions& options = {});

struct ProfileSample {
    double xi;
    double oracle;
    double pade;
    double delta;  // oracle - pade
};

struct SolveResult {
    Problem problem;
    int order;
    double r1;
    QuasiPade pade;
    double residual;
    std::optional<double> eta;
    std::vector<ProfileSample> delta_profile;
};

/// Default r1 search interval per problem kind.
std::pair<double, double> default_search_bracket(OdeKind kind);

/// Root of conservation_residual in [lo, hi]. Falls back to a subinterval scan when the
/// end points do not bracket a feasible root, refining the scan when needed; throws
/// NoSignChange with the coarse scan otherwise.
SolveResult solve_r1(const Problem& problem, int order, double lo, double hi, const SolveOptions& options = {});

struct ShootingOptions {
    double span = 5.0;
    double step = 1e-3;
    double root_tol = 1e-12;
    double boundary_tol = 1e-6;
    int max_expansions = 8;
    double blowup_limit = 1e8;
};

/// Right end of the shooting interval per problem kind: 5 (self-similar), 8 (traveling wave).
double default_oracle_span(OdeKind kind);
ShootingOptions default_shooting_options(OdeKind kind);

struct OracleResult {
    Problem problem;
    double r1_exact;
    Trajectory trajectory;  // state (P, P', Y = int_0^xi P)
    double delta_limit_observed;

    /// Cubic Hermite interpolation of P between samples.
    double value_at(double xi) const;
};

/// First-order system (P, P', Y) of the second-order ODE.
OdeSystem first_order_system(const Problem& problem);

/// Shooting on P'(0) so that the RK4 trajectory satisfies P(span) = 0. Blown-up
/// trajectories count by the sign of their last valid P.
OracleResult shooting_exact(const Problem& problem, double lo, double hi, const ShootingOptions& options);

struct ProfileError {
    std::vector<ProfileSample> samples;
    double min_delta;
    double max_delta;
    double eta;
};

/// delta(x) = P_oracle(x) - PA(x) on the grid plus eta = |(r1 - r1_exact) / r1_exact|.
/// Throws ConfigError when the two runs describe different problems or the grid leaves the oracle's span.
ProfileError profile_error(const SolveResult& result, const OracleResult& oracle, std::span<const double> grid);

/// Stores eta and the delta profile from profile_error on the result.
void attach_oracle(SolveResult& result, const OracleResult& oracle, std::span<const double> grid);

/// |Y(L) - conserved_limit(r1)| for a traveling-wave oracle run.
double verify_delta_limit(const OracleResult& oracle, const TravelingParams& params, double r1);

/// `count` evenly spaced points on [start, stop].
std::vector<double> uniform_grid(double start, double stop, int count);

}  // namespace qpade
