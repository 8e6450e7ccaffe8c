#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qpade {

using ScalarFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b] with absolute error <= tol.
/// Throws AccuracyNotReached (carrying the best estimate) when subdivision runs out.
double quad_adaptive(const ScalarFunction& f, double a, double b, double tol = 1e-10);

/// Principal-value exponential integral Ei(x). Throws DomainError at x == 0.
double expint_ei(double x);

/// A sign-changing interval: lo < hi and f(lo) * f(hi) < 0.
class Bracket {
public:
    Bracket(double lo, double hi, double f_lo, double f_hi);
    /// Evaluates f at both ends; throws BracketError when the signs agree.
    static Bracket around(const ScalarFunction& f, double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }

private:
    double lo_, hi_, f_lo_, f_hi_;
};

/// Bracketing root finder; returns once the enclosing interval is narrower than tol.
double brent_root(const ScalarFunction& f, const Bracket& bracket, double tol = 1e-10);

using State = std::vector<double>;
using OdeSystem = std::function<void(double xi, const State& y, State& dydxi)>;

/// Uniformly sampled solution of an initial value problem.
struct Trajectory {
    std::vector<double> xi;
    std::vector<State> states;
    double step = 0.0;

    std::size_t size() const noexcept { return xi.size(); }
    const State& back() const { return states.back(); }
    /// Component `index` at every sample.
    std::vector<double> component(std::size_t index) const;
};

/// Classical RK4 on [0, span] with fixed step h (adjusted down so the span is a whole number
/// of steps). Throws BlowUp when a state goes non-finite or exceeds `blowup_limit` in magnitude.
Trajectory rk4_integrate(const OdeSystem& system, State y0, double span, double h, double blowup_limit = 1e8);

}  // namespace qpade
