#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "qpade/errors.hpp"
#include "qpade/physical.hpp"

using namespace qpade;

namespace {

std::vector<ViscosityPoint> parabola(double mu0, double p0, double a, std::vector<double> pressures) {
    std::vector<ViscosityPoint> out;
    for (double p : pressures) out.push_back({p, mu0 * (1 + a * (p - p0) * (p - p0))});
    return out;
}

PhysicalParams ref_reservoir() {
    PhysicalParams ph{};
    ph.mu0 = 0.005;
    ph.p0 = 41.6855 * pascal_per_bar;
    ph.a = 1.507e-14;
    ph.ck_omega = 0.4;
    ph.p1 = 2e6;
    ph.p2 = 8e6;
    return ph;
}

}  // namespace

TEST_CASE("exact parabola recovery") {
    const auto pts = parabola(0.005, 4.169e6, 1.5e-14, {1e6, 2e6, 3e6, 4.169e6, 5e6, 6.5e6, 8e6});
    const auto fit = fit_viscosity_parabola(pts);
    CHECK(fit.mu0 == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(fit.p0 == doctest::Approx(4.169e6).epsilon(1e-12));
    CHECK(fit.a == doctest::Approx(1.5e-14).epsilon(1e-12));
    CHECK(fit.residual_norm < 1e-15);
}

TEST_CASE("exact recovery for random parabolas") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double mu0 = 1e-3 + 1e-2 * u(rng);
        const double p0 = 1e6 + 9e6 * u(rng);
        const double a = 1e-15 + 1e-13 * u(rng);
        std::vector<double> ps{p0};
        for (int i = 0; i < 3 + trial % 8; ++i) ps.push_back(p0 + (u(rng) - 0.5) * 8e6);
        std::shuffle(ps.begin(), ps.end(), rng);
        const auto fit = fit_viscosity_parabola(parabola(mu0, p0, a, ps));
        CHECK(fit.a == doctest::Approx(a).epsilon(1e-10));
        CHECK(fit.p0 == p0);
        CHECK(fit.mu0 == mu0);
    }
}

TEST_CASE("noisy parabola fit stays close to the noise-free fit") {
    std::vector<double> ps;
    for (int i = 0; i < 20; ++i) ps.push_back(1e6 + 0.5e6 * i);
    const double p0 = ps[6];
    const double truth = fit_viscosity_parabola(parabola(0.005, p0, 1.5e-14, ps)).a;
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> estimates;
    for (int trial = 0; trial < 200; ++trial) {
        auto pts = parabola(0.005, p0, 1.5e-14, ps);
        for (auto& pt : pts) pt.viscosity *= 1 + noise(rng);
        try {
            estimates.push_back(fit_viscosity_parabola(pts).a);
        } catch (const FitError&) {
        }
    }
    REQUIRE(estimates.size() > 150);
    std::ranges::sort(estimates);
    const double median = estimates[estimates.size() / 2];
    CHECK(std::abs(median - truth) <= 0.05 * truth);
}

TEST_CASE("fit errors") {
    CHECK_THROWS_AS(fit_viscosity_parabola(parabola(0.005, 4e6, 1e-14, {3e6, 5e6})), InsufficientData);
    // a maximum instead of a minimum
    CHECK_THROWS_AS(fit_viscosity_parabola(parabola(0.005, 4e6, -1e-14, {2e6, 4e6, 6e6})), FitError);
    std::vector<ViscosityPoint> same{{4e6, 0.005}, {4e6, 0.006}, {4e6, 0.007}};
    CHECK_THROWS_AS(fit_viscosity_parabola(same), FitError);
    std::vector<ViscosityPoint> tie{{3e6, 0.005}, {4e6, 0.006}, {5e6, 0.005}};
    CHECK_THROWS_AS(fit_viscosity_parabola(tie), FitError);
}

TEST_CASE("pressure scale") {
    const auto nd = nondimensionalize(ref_reservoir());
    CHECK(std::abs(nd.omega - 8.1460e6) < 0.5e2);
    CHECK(nd.omega == doctest::Approx(1.0 / std::sqrt(1.507e-14)).epsilon(1e-15));
}

TEST_CASE("reference dimensionless set from the rounded scale") {
    NondimensionalOptions opts;
    opts.omega_override = rounded_omega;
    const auto nd = nondimensionalize(ref_reservoir(), opts);
    CHECK(std::abs((nd.y1 - nd.y0) - (-0.2677)) < 1e-4);
    CHECK(std::abs(nd.model.beta1() - 0.447973) < 2e-5);
    CHECK(std::abs(nd.model.beta2() - 0.933119) < 2e-5);
    // the mapped beta3 lands on the value the stated set calls 2 beta3
    CHECK(std::abs(nd.model.beta3() - (-0.249816)) < 2e-4);
    CHECK(nd.r0 == doctest::Approx(nd.y2 - nd.y1));
}

TEST_CASE("round trip to dimensional pressure") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        PhysicalParams ph = ref_reservoir();
        ph.a = 1e-15 + 1e-13 * u(rng);
        ph.p0 = 1e6 + 9e6 * u(rng);
        ph.p1 = 1e6 + 9e6 * u(rng);
        ph.p2 = 1e6 + 9e6 * u(rng);
        ph.ck_omega = 0.05 + 0.5 * u(rng);
        NondimensionalOptions opts;
        if (trial % 2) opts.omega_override = rounded_omega;
        Nondimensional nd = [&] {
            try {
                return nondimensionalize(ph, opts);
            } catch (const InvalidParameters&) {
                ph.ck_omega = 0.01;
                return nondimensionalize(ph, opts);
            }
        }();
        CHECK(nd.pressure(0.0) == doctest::Approx(ph.p1).epsilon(1e-12));
        CHECK(nd.pressure(nd.r0) == doctest::Approx(ph.p2).epsilon(1e-12));
        CHECK(nd.pressure(nd.y0 - nd.y1) == doctest::Approx(ph.p0).epsilon(1e-12));
        CHECK(nd.model.beta2() > 0.0);
        CHECK(nd.model.beta2() <= 1.0);
    }
    PhysicalParams at_vertex = ref_reservoir();
    at_vertex.p1 = at_vertex.p0;
    CHECK(nondimensionalize(at_vertex).model.beta2() == 1.0);
}

TEST_CASE("optional diffusivity data") {
    PhysicalParams ph = ref_reservoir();
    CHECK_FALSE(nondimensionalize(ph).kappa.has_value());
    ph.k0 = 1e-13;
    ph.m0 = 0.2;
    ph.cf = 1e-9;
    ph.cm = 1e-10;
    const auto nd = nondimensionalize(ph);
    REQUIRE(nd.kappa.has_value());
    CHECK(*nd.kappa == doctest::Approx(1e-13 / (0.005 * 0.2 * 1.1e-9)));
    CHECK(nd.d0.has_value());
}

TEST_CASE("invalid physical input") {
    PhysicalParams ph = ref_reservoir();
    ph.a = 0.0;
    CHECK_THROWS_AS(nondimensionalize(ph), InvalidParameters);
    ph = ref_reservoir();
    ph.mu0 = -1.0;
    CHECK_THROWS_AS(nondimensionalize(ph), InvalidParameters);
    // 1 + C_k Omega (y1 - y0) = 0 with Omega = 1e6: y1 - y0 = -2 and C_k Omega = 0.5
    ph = ref_reservoir();
    ph.a = 1e-12;
    ph.p0 = 5e6;
    ph.p1 = 3e6;
    ph.ck_omega = 0.5;
    CHECK_THROWS_AS(nondimensionalize(ph), InvalidParameters);
}

TEST_CASE("viscosity CSV") {
    const auto pts = parse_viscosity_csv("4.0e6,0.0052\n4.169e6,0.005\n4.4e6,0.0051");
    REQUIRE(pts.size() == 3);
    CHECK(pts[1].pressure == 4.169e6);

    const auto with_header = parse_viscosity_csv("p,mu\n4.4e6,0.0051\n4.0e6,0.0052\n\n# note\n4.169e6 0.005\n");
    REQUIRE(with_header.size() == 3);
    CHECK(std::ranges::is_sorted(with_header, {}, &ViscosityPoint::pressure));

    try {
        (void)parse_viscosity_csv("abc,0.1\n1,2\n3,4\n5,6");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    try {
        (void)parse_viscosity_csv("p,mu\n1,2\n3,x\n5,6");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_viscosity_csv("p,mu\n1,2\n3,4\n"), InsufficientData);
    CHECK_THROWS_AS(parse_viscosity_csv("1,nan\n2,3\n4,5"), ParseError);
    CHECK_THROWS_AS(load_viscosity_csv("/nonexistent/viscosity.csv"), Error);
}
