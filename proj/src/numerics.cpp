#include "qpade/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "qpade/errors.hpp"

namespace qpade {

double quad_adaptive(const ScalarFunction& f, double a, double b, double tol) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    if (a == b) return 0.0;

    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    const auto panel = [&](double lo, double hi) {
        double err = 0.0;
        const double v = Rule::integrate(f, lo, hi, 0, 0.0, &err);
        return Panel{lo, hi, v, std::isfinite(v) ? err : INFINITY};
    };

    // Globally adaptive: always bisect the panel with the largest error estimate.
    constexpr std::size_t max_panels = 4000;
    std::priority_queue<Panel> heap;
    heap.push(panel(a, b));
    double value = heap.top().value;
    double error = heap.top().error;
    while (error > tol && heap.size() < max_panels) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) break;  // cannot split further
        heap.pop();
        const Panel left = panel(worst.a, mid);
        const Panel right = panel(mid, worst.b);
        heap.push(left);
        heap.push(right);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
    }

    // Re-sum to shed the drift of the running totals.
    value = 0.0;
    error = 0.0;
    for (auto h = heap; !h.empty(); h.pop()) {
        value += h.top().value;
        error += h.top().error;
    }
    if (error <= tol) return value;
    throw AccuracyNotReached(value, error);
}

namespace {

constexpr double euler_gamma = std::numbers::egamma;

// Ei(x) = gamma + ln|x| + sum_{k>=1} x^k / (k k!)
double ei_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        term *= x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) <= std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    }
    return euler_gamma + std::log(std::abs(x)) + sum;
}

// E1(y) for y > 1 by the modified Lentz continued fraction; Ei(-y) = -E1(y).
double e1_continued_fraction(double y) {
    constexpr double tiny = 1e-300;
    double b = y + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= std::numeric_limits<double>::epsilon()) break;
    }
    return h * std::exp(-y);
}

// Ei(x) ~ e^x / x * sum k! / x^k for large positive x; stop at the smallest term.
double ei_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double next = term * k / x;
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (term < std::numeric_limits<double>::epsilon() * sum) break;
    }
    return std::exp(x) / x * sum;
}

}  // namespace

double expint_ei(double x) {
    if (x == 0.0) throw DomainError("Ei is singular at 0");
    if (std::isnan(x)) return x;
    if (x < -1.0) return -e1_continued_fraction(-x);
    if (x <= 40.0) return ei_series(x);
    return ei_asymptotic(x);
}

Bracket::Bracket(double lo, double hi, double f_lo, double f_hi) : lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {
    if (!(lo < hi)) throw BracketError("bracket requires lo < hi");
    if (!(f_lo * f_hi < 0.0)) throw BracketError("bracket end values do not have opposite signs");
}

Bracket Bracket::around(const ScalarFunction& f, double lo, double hi) {
    return Bracket(lo, hi, f(lo), f(hi));
}

double brent_root(const ScalarFunction& f, const Bracket& bracket, double tol) {
    if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
    auto done = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
    std::uintmax_t max_iter = 500;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, bracket.lo(), bracket.hi(), bracket.f_lo(),
                                                            bracket.f_hi(), done, max_iter);
    if (!done(lo, hi)) throw BracketError("root finder did not converge within the iteration limit");
    return 0.5 * (lo + hi);
}

std::vector<double> Trajectory::component(std::size_t index) const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.at(index));
    return out;
}

Trajectory rk4_integrate(const OdeSystem& system, State y0, double span, double h, double blowup_limit) {
    if (!(h > 0.0)) throw DomainError("step size must be positive");
    if (!(span > 0.0)) throw DomainError("integration span must be positive");

    const auto steps = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
    const double step = span / static_cast<double>(steps);

    Trajectory traj;
    traj.step = step;
    traj.xi.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.xi.push_back(0.0);
    traj.states.push_back(y0);

    boost::numeric::odeint::runge_kutta4<State> stepper;
    const auto rhs = [&system](const State& y, State& dy, double xi) { system(xi, y, dy); };
    State y = std::move(y0);
    for (std::size_t i = 0; i < steps; ++i) {
        const double xi = static_cast<double>(i) * step;
        stepper.do_step(rhs, y, xi, step);
        const bool bad = std::any_of(y.begin(), y.end(),
                                     [&](double v) { return !std::isfinite(v) || std::abs(v) > blowup_limit; });
        if (bad) throw BlowUp(traj.xi.back(), traj.states.back());
        traj.xi.push_back(static_cast<double>(i + 1) * step);
        traj.states.push_back(y);
    }
    return traj;
}

}  // namespace qpade
