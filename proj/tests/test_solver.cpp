#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qpade/errors.hpp"
#include "qpade/solver.hpp"

using namespace qpade;

namespace {

const ModelParams ref_beta = ModelParams::from_two_beta3(0.447973, 0.933119, -0.249816);
const TravelingParams ref_tw(1.0, 1.5, 2.7, ref_beta);

const OracleResult& self_similar_oracle() {
    static const OracleResult r = [] {
        return shooting_exact(Problem::self_similar(ref_beta), -2.0, -0.5,
                              default_shooting_options(OdeKind::SelfSimilar));
    }();
    return r;
}

const OracleResult& traveling_oracle() {
    static const OracleResult r = [] {
        return shooting_exact(Problem::traveling_wave(ref_tw), -2.3, -2.1,
                              default_shooting_options(OdeKind::TravelingWave));
    }();
    return r;
}

// Independent bisection on the residual, used as a second route to the root.
double bisect(const Problem& problem, int m, double lo, double hi) {
    double flo = conservation_residual(problem, m, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = conservation_residual(problem, m, mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("decay rate") {
    CHECK(std::abs(decay_rate(ref_tw) - (-1.90335)) < 1e-5);
    CHECK(decay_rate(TravelingParams(1, 1, 1, ModelParams::linear())) == doctest::Approx(-1.0).epsilon(1e-14));
    for (auto [tau, theta, c] : {std::tuple{1.0, 1.5, 2.7}, std::tuple{0.3, 2.0, 0.5}, std::tuple{4.0, 0.1, 1.2}}) {
        const double h = decay_rate(TravelingParams(tau, theta, c, ModelParams::linear()));
        CHECK(h < 0.0);
        CHECK(std::abs(c * tau * theta * h * h + (tau * c * c - 1) * h - c) < 1e-12 * (1 + c * tau * theta * h * h));
    }
}

TEST_CASE("conserved limit") {
    const auto linear = Problem::traveling_wave(TravelingParams(1.0, 1.5, 2.7, ModelParams::linear()));
    CHECK(std::abs(conserved_limit(linear, -2.0) - 0.670370) < 1e-6);
    // G integral checked against a Simpson rule oracle
    double simpson = 0.0;
    const int n = 2000;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        simpson += w * ref_beta.conductivity(static_cast<double>(i) / n);
    }
    simpson /= 3.0 * n;
    CHECK(std::abs(conductivity_integral(ref_beta, 1.0) - simpson) < 1e-10);
    const auto tw = Problem::traveling_wave(ref_tw);
    const double r1 = -2.2;
    const double expected = (-2.7 * 2.7 - 2.7 * 1.5 * ref_beta.conductivity(1.0) * r1 + simpson) / 2.7;
    CHECK(std::abs(conserved_limit(tw, r1) - expected) < 1e-10);
}

TEST_CASE("self-similar residual changes sign around the reference root") {
    const auto problem = Problem::self_similar(ref_beta);
    CHECK(conservation_residual(problem, 1, -1.29) * conservation_residual(problem, 1, -1.27) < 0);
    CHECK(std::abs(conservation_residual(problem, 1, -1.2832413)) < 1e-6);
}

TEST_CASE("self-similar roots") {
    const auto problem = Problem::self_similar(ref_beta);
    const double expected[] = {-1.28324, -1.33149, -1.32556};
    for (int m = 1; m <= 3; ++m) {
        const auto r = solve_r1(problem, m, -3.0, -0.5);
        CHECK(std::abs(r.r1 - expected[m - 1]) < 1e-5);
        CHECK(std::abs(r.residual) < 1e-8);
        CHECK(std::abs(conservation_residual(problem, m, r.r1)) < 1e-8);
        CHECK(std::abs(r.pade.slope_at_zero() - r.r1) < 1e-9);
        CHECK(std::abs(r.r1 - bisect(problem, m, r.r1 - 0.02, r.r1 + 0.02)) < 1e-9);
    }
}

TEST_CASE("linear self-similar problem approaches -2/sqrt(pi)") {
    const auto problem = Problem::self_similar(ModelParams::linear());
    const auto r = solve_r1(problem, 3, -3.0, -0.5);
    CHECK(std::abs(r.r1 - (-1.1283792)) < 5e-3);
    // the exact slope makes the pure Gaussian-erfc series; M = 1 already lies close
    CHECK(std::abs(solve_r1(problem, 1, -3.0, -0.5).r1 - (-1.1283792)) < 0.1);
}

TEST_CASE("traveling-wave roots") {
    const auto problem = Problem::traveling_wave(ref_tw);
    const auto m1 = solve_r1(problem, 1, -3.0, -1.0);
    CHECK(std::abs(m1.r1 - (-2.18753)) < 1e-4);
    CHECK(std::abs(m1.r1 - bisect(problem, 1, -2.3, -2.1)) < 1e-9);
    const auto m2 = solve_r1(problem, 2, -3.0, -1.0);
    CHECK(std::abs(m2.r1 - (-2.2239)) < 2e-4);
    CHECK(std::abs(m2.residual) < 1e-8);

    // integral cut at xi = 4
    SolveOptions cut;
    cut.integration.cutoff = 4.0;
    const auto m2cut = solve_r1(problem, 2, -3.0, -1.0, cut);
    CHECK(std::abs(m2cut.r1 - (-2.22365)) < 1e-4);
}

TEST_CASE("closed form and quadrature give the same M = 1 traveling-wave root") {
    const auto problem = Problem::traveling_wave(ref_tw);
    SolveOptions quad;
    quad.integration.method = IntegrationOptions::Method::Quadrature;
    SolveOptions closed;
    closed.integration.method = IntegrationOptions::Method::ClosedForm;
    CHECK(std::abs(solve_r1(problem, 1, -3.0, -1.0, quad).r1 - solve_r1(problem, 1, -3.0, -1.0, closed).r1) < 1e-8);
}

TEST_CASE("no sign change") {
    const auto problem = Problem::self_similar(ref_beta);
    try {
        (void)solve_r1(problem, 1, -0.9, -0.5);
        FAIL("expected NoSignChange");
    } catch (const NoSignChange& e) {
        CHECK(e.scan().size() > 2);
    }
    CHECK_THROWS_AS(solve_r1(problem, 4, -3.0, -0.5), InvalidParameters);
    CHECK_THROWS_AS(solve_r1(problem, 1, -0.5, -3.0), BracketError);
}

TEST_CASE("shooting oracle") {
    CHECK(std::abs(self_similar_oracle().r1_exact - (-1.32175)) < 1e-4);
    CHECK(std::abs(traveling_oracle().r1_exact - (-2.21658)) < 1e-4);
    CHECK(std::abs(self_similar_oracle().trajectory.back()[0]) < 1e-6);

    // the linear self-similar solution is erfc, with slope -2/sqrt(pi)
    const auto lin = shooting_exact(Problem::self_similar(ModelParams::linear()), -2.0, -0.5,
                                    default_shooting_options(OdeKind::SelfSimilar));
    CHECK(std::abs(lin.r1_exact - (-2.0 / std::sqrt(std::numbers::pi))) < 1e-5);
    CHECK(std::abs(lin.value_at(1.0) - std::erfc(1.0)) < 1e-5);
}

TEST_CASE("oracle trajectory satisfies the ODE") {
    for (const auto* oracle : {&self_similar_oracle(), &traveling_oracle()}) {
        const auto& t = oracle->trajectory;
        const auto& pr = oracle->problem;
        const auto& g = pr.model();
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < t.size(); i += 97) {
            const double h = t.step;
            const double x = t.xi[i];
            const double p = t.states[i][0];
            const double dp = (t.states[i + 1][0] - t.states[i - 1][0]) / (2 * h);
            const double d2p = (t.states[i + 1][0] - 2 * p + t.states[i - 1][0]) / (h * h);
            const double flux_slope = g.conductivity_slope(p) * dp * dp + g.conductivity(p) * d2p;
            double res;
            if (pr.kind() == OdeKind::SelfSimilar) {
                res = flux_slope + 2 * x * dp;
            } else {
                const auto& tp = pr.traveling();
                const double tau = tp.tau(), theta = tp.theta(), c = tp.c();
                res = tau * c * c * dp + c * tau * theta * flux_slope - c * p -
                      g.conductivity(p) * dp;
            }
            worst = std::max(worst, std::abs(res));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("oracle conservation limit") {
    const auto& o = traveling_oracle();
    CHECK(verify_delta_limit(o, ref_tw, o.r1_exact) < 1e-4);
    CHECK(o.delta_limit_observed == doctest::Approx(o.trajectory.back()[2]));

    const TravelingParams lin(1.0, 1.5, 2.7, ModelParams::linear());
    const auto lo = shooting_exact(Problem::traveling_wave(lin), -3.0, -1.0,
                                   default_shooting_options(OdeKind::TravelingWave));
    CHECK(verify_delta_limit(lo, lin, lo.r1_exact) < 1e-4);

    // Y settles once the profile has decayed
    auto opts = default_shooting_options(OdeKind::TravelingWave);
    opts.span = 12.0;
    const auto a = shooting_exact(Problem::traveling_wave(ref_tw), -2.3, -2.1, opts);
    opts.span = 24.0;
    const auto b = shooting_exact(Problem::traveling_wave(ref_tw), -2.3, -2.1, opts);
    CHECK(std::abs(a.trajectory.back()[2] - b.trajectory.back()[2]) < 1e-8);
}

TEST_CASE("profile error") {
    const auto problem = Problem::self_similar(ref_beta);
    const auto grid = uniform_grid(0.0, 3.0, 301);
    CHECK(grid.size() == 301);
    CHECK(grid.back() == 3.0);
    double prev_eta = 1.0;
    for (int m = 1; m <= 3; ++m) {
        auto r = solve_r1(problem, m, -3.0, -0.5);
        attach_oracle(r, self_similar_oracle(), grid);
        REQUIRE(r.eta.has_value());
        CHECK(*r.eta == doctest::Approx(std::abs((r.r1 - self_similar_oracle().r1_exact) /
                                                 self_similar_oracle().r1_exact)));
        CHECK(r.delta_profile.front().delta == doctest::Approx(0.0).epsilon(1e-12));
        if (m == 3) {
            CHECK(*r.eta < prev_eta);
            const auto pe = profile_error(r, self_similar_oracle(), grid);
            CHECK(pe.max_delta <= 0.004);
            CHECK(pe.min_delta >= -0.004);
        }
        prev_eta = *r.eta;
    }
    const auto tw = solve_r1(Problem::traveling_wave(ref_tw), 1, -3.0, -1.0);
    CHECK_THROWS_AS(profile_error(tw, self_similar_oracle(), grid), ConfigError);
    auto r = solve_r1(problem, 1, -3.0, -0.5);
    CHECK_THROWS_AS(profile_error(r, self_similar_oracle(), uniform_grid(0.0, 6.0, 10)), ConfigError);
}

TEST_CASE("bracket expansion failure") {
    auto opts = default_shooting_options(OdeKind::SelfSimilar);
    opts.max_expansions = 0;
    CHECK_THROWS_AS(shooting_exact(Problem::self_similar(ref_beta), -0.9, -0.5, opts), BracketExpansionFailure);
}
