#include "qpade/solver.hpp"

#include <algorithm>
#include <cmath>

#include "qpade/errors.hpp"

namespace qpade {

double decay_rate(const TravelingParams& tp) {
    const double tau = tp.tau();
    const double c = tp.c();
    const double lead = c * tau * tp.theta();
    const double mid = tau * c * c - 1.0;
    return (-mid - std::sqrt(mid * mid + 4.0 * lead * c)) / (2.0 * lead);
}

double conductivity_integral(const ModelParams& model, double upto) {
    return quad_adaptive([&](double p) { return model.conductivity(p); }, 0.0, upto, 1e-10);
}

double conserved_limit(const Problem& problem, double r1) {
    const auto& tp = problem.traveling();
    const double r0 = problem.boundary_value();
    const double c = tp.c();
    const double g0 = tp.model().conductivity(r0);
    return (-tp.tau() * c * c * r0 - c * tp.tau() * tp.theta() * g0 * r1 + conductivity_integral(tp.model(), r0)) / c;
}

AsymptoticFactor asymptotic_factor(const Problem& problem) {
    if (problem.kind() == OdeKind::SelfSimilar) return AsymptoticFactor::gaussian();
    return AsymptoticFactor::exponential(decay_rate(problem.traveling()));
}

QuasiPade approximant_for(const Problem& problem, int order, double r1) {
    const auto series = taylor_coefficients(problem, r1, 2 * order);
    return build_quasi_pade(series, order, asymptotic_factor(problem));
}

double conservation_residual(const Problem& problem, int order, double r1, const SolveOptions& options) {
    if (order < 1 || order > 3) throw InvalidParameters("approximant order must be 1, 2 or 3");
    std::optional<QuasiPade> pa;
    try {
        pa.emplace(approximant_for(problem, order, r1));
    } catch (const DegenerateTable& e) {
        throw InfeasibleCandidate(r1, e.what());
    } catch (const RejectedApproximant& e) {
        throw InfeasibleCandidate(r1, e.what());
    }

    const double integral = pa->integrate(options.integration);
    if (problem.kind() == OdeKind::SelfSimilar) {
        return r1 + 2.0 / problem.model().conductivity(problem.boundary_value()) * integral;
    }
    return integral - conserved_limit(problem, r1);
}

std::pair<double, double> default_search_bracket(OdeKind kind) {
    return kind == OdeKind::SelfSimilar ? std::pair{-3.0, -0.5} : std::pair{-3.0, -1.0};
}

namespace {

std::optional<double> root_in(const ScalarFunction& f, double lo, double hi, double f_lo, double f_hi,
                              const SolveOptions& options) {
    try {
        const double root = brent_root(f, Bracket(lo, hi, f_lo, f_hi), options.root_tol);
        // A sign change across a jump is not a root.
        if (std::abs(f(root)) > options.residual_tol) return std::nullopt;
        return root;
    } catch (const InfeasibleCandidate&) {
        return std::nullopt;
    }
}

std::optional<double> try_eval(const ScalarFunction& f, double x) {
    try {
        return f(x);
    } catch (const InfeasibleCandidate&) {
        return std::nullopt;
    }
}

}  // namespace

SolveResult solve_r1(const Problem& problem, int order, double lo, double hi, const SolveOptions& options) {
    if (!(lo < hi)) throw BracketError("search bracket requires lo < hi");
    const ScalarFunction f = [&](double r1) { return conservation_residual(problem, order, r1, options); };

    std::optional<double> root;
    const auto f_lo = try_eval(f, lo);
    const auto f_hi = try_eval(f, hi);
    if (f_lo && f_hi && *f_lo * *f_hi < 0.0) root = root_in(f, lo, hi, *f_lo, *f_hi, options);

    if (!root) {
        const auto scan_with = [&](int n) {
            std::vector<ScanPoint> scan;
            scan.reserve(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                const double x = lo + (hi - lo) * i / n;
                const auto v = try_eval(f, x);
                scan.push_back({x, v.has_value(), v.value_or(0.0)});
            }
            return scan;
        };
        const auto root_from = [&](const std::vector<ScanPoint>& scan) -> std::optional<double> {
            for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
                const auto& a = scan[i];
                const auto& b = scan[i + 1];
                if (a.feasible && a.residual == 0.0) return a.r1;
                if (a.feasible && b.feasible && a.residual * b.residual < 0.0)
                    return root_in(f, a.r1, b.r1, a.residual, b.residual, options);
            }
            return std::nullopt;
        };
        const int n = std::max(options.scan_intervals, 1);
        auto coarse = scan_with(n);
        root = root_from(coarse);
        // Feasible windows can be narrower than the coarse spacing.
        for (int level = 1, m = n; !root && level <= options.scan_refinements; ++level) {
            m *= 8;
            root = root_from(scan_with(m));
        }
        if (!root) throw NoSignChange(std::move(coarse));
    }

    auto pade = approximant_for(problem, order, *root);
    const double residual = f(*root);
    return SolveResult{problem, order, *root, std::move(pade), residual, std::nullopt, {}};
}

double default_oracle_span(OdeKind kind) { return kind == OdeKind::SelfSimilar ? 5.0 : 8.0; }

ShootingOptions default_shooting_options(OdeKind kind) {
    ShootingOptions o;
    o.span = default_oracle_span(kind);
    return o;
}

OdeSystem first_order_system(const Problem& problem) {
    const ModelParams model = problem.model();
    if (problem.kind() == OdeKind::SelfSimilar) {
        return [model](double xi, const State& y, State& dy) {
            const double p = y[0];
            const double v = y[1];
            dy[0] = v;
            dy[1] = (-2.0 * xi * v - model.conductivity_slope(p) * v * v) / model.conductivity(p);
            dy[2] = p;
        };
    }
    const TravelingParams tp = problem.traveling();
    return [tp](double, const State& y, State& dy) {
        const auto& m = tp.model();
        const double p = y[0];
        const double v = y[1];
        const double c = tp.c();
        const double lead = c * tp.tau() * tp.theta();
        const double g = m.conductivity(p);
        dy[0] = v;
        dy[1] = (c * p + (g - tp.tau() * c * c) * v - lead * m.conductivity_slope(p) * v * v) / (lead * g);
        dy[2] = p;
    };
}

double OracleResult::value_at(double xi) const {
    const auto& t = trajectory;
    if (xi < 0.0 || xi > t.xi.back() + 1e-12) throw ConfigError("profile point outside the oracle interval");
    const double h = t.step;
    auto i = static_cast<std::size_t>(std::floor(xi / h));
    if (i >= t.size() - 1) i = t.size() - 2;
    const double s = (xi - t.xi[i]) / h;
    const auto& a = t.states[i];
    const auto& b = t.states[i + 1];
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * a[0] + h10 * h * a[1] + h01 * b[0] + h11 * h * b[1];
}

OracleResult shooting_exact(const Problem& problem, double lo, double hi, const ShootingOptions& options) {
    if (!(lo < hi)) throw BracketError("shooting bracket requires lo < hi");
    const auto system = first_order_system(problem);
    const double r0 = problem.boundary_value();

    const auto miss = [&](double slope) {
        try {
            const auto traj = rk4_integrate(system, {r0, slope, 0.0}, options.span, options.step, options.blowup_limit);
            return traj.back()[0];
        } catch (const BlowUp& e) {
            // Undershoot if P crossed zero before the blow-up, overshoot otherwise.
            bool crossed = e.last_state()[0] < 0.0;
            if (!crossed && e.last_xi() > 0.0) {
                try {
                    const auto head = rk4_integrate(system, {r0, slope, 0.0}, e.last_xi(), options.step, INFINITY);
                    crossed = std::ranges::any_of(head.states, [](const State& y) { return y[0] < 0.0; });
                } catch (const BlowUp&) {
                }
            }
            return crossed ? -options.blowup_limit : options.blowup_limit;
        }
    };

    double a = lo, b = hi;
    double fa = miss(a), fb = miss(b);
    for (int i = 0; fa * fb > 0.0; ++i) {
        if (i >= options.max_expansions)
            throw BracketExpansionFailure("shooting: every candidate slope misses on the same side");
        const double mid = 0.5 * (a + b);
        const double half = b - a;
        a = mid - half;
        b = mid + half;
        fa = miss(a);
        fb = miss(b);
    }

    double slope;
    if (fa == 0.0)
        slope = a;
    else if (fb == 0.0)
        slope = b;
    else
        slope = brent_root(miss, Bracket(a, b, fa, fb), options.root_tol);

    Trajectory traj;
    try {
        traj = rk4_integrate(system, {r0, slope, 0.0}, options.span, options.step, options.blowup_limit);
    } catch (const BlowUp& e) {
        throw OracleError(std::string("shooting: converged trajectory blows up: ") + e.what());
    }
    if (std::abs(traj.back()[0]) >= options.boundary_tol)
        throw OracleError("shooting: |P(L)| = " + std::to_string(std::abs(traj.back()[0])) +
                          " exceeds the boundary tolerance");
    const double y_end = traj.back()[2];
    return OracleResult{problem, slope, std::move(traj), y_end};
}

ProfileError profile_error(const SolveResult& result, const OracleResult& oracle, std::span<const double> grid) {
    if (!(result.problem == oracle.problem))
        throw ConfigError("approximant and oracle were computed for different parameter sets");
    ProfileError out{};
    out.samples.reserve(grid.size());
    out.min_delta = grid.empty() ? 0.0 : INFINITY;
    out.max_delta = grid.empty() ? 0.0 : -INFINITY;
    for (double xi : grid) {
        const double p = oracle.value_at(xi);
        const double pa = result.pade(xi);
        const double d = p - pa;
        out.samples.push_back({xi, p, pa, d});
        out.min_delta = std::min(out.min_delta, d);
        out.max_delta = std::max(out.max_delta, d);
    }
    out.eta = std::abs((result.r1 - oracle.r1_exact) / oracle.r1_exact);
    return out;
}

void attach_oracle(SolveResult& result, const OracleResult& oracle, std::span<const double> grid) {
    auto err = profile_error(result, oracle, grid);
    result.eta = err.eta;
    result.delta_profile = std::move(err.samples);
}

double verify_delta_limit(const OracleResult& oracle, const TravelingParams& params, double r1) {
    const auto problem = Problem::traveling_wave(params, oracle.problem.boundary_value());
    return std::abs(oracle.delta_limit_observed - conserved_limit(problem, r1));
}

std::vector<double> uniform_grid(double start, double stop, int count) {
    if (count < 1) throw ConfigError("grid needs at least one point");
    if (count == 1) return {start};
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    return g;
}

}  // namespace qpade
