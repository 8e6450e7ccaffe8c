#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroSeries : public Error {
public:
    DivisionByZeroSeries() : Error("series division: denominator has zero constant term") {}
};

class NonFiniteCoefficient : public Error {
public:
    using Error::Error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

class SingularRecurrence : public Error {
public:
    SingularRecurrence(int degree, const std::string& why)
        : Error("singular recurrence at degree " + std::to_string(degree) + ": " + why), degree_(degree) {}
    int degree() const noexcept { return degree_; }

private:
    int degree_;
};

/// The matching system for the [M/M] coefficients has no unique solution.
class DegenerateTable : public Error {
public:
    using Error::Error;
};

/// The denominator of a candidate approximant vanishes somewhere on [0, inf).
class RejectedApproximant : public Error {
public:
    using Error::Error;
};

class AccuracyNotReached : public Error {
public:
    AccuracyNotReached(double best_estimate, double error_estimate)
        : Error("quadrature: requested accuracy not reached (estimate " + std::to_string(best_estimate) +
                ", error " + std::to_string(error_estimate) + ")"),
          best_estimate_(best_estimate), error_estimate_(error_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class BracketError : public Error {
public:
    using Error::Error;
};

/// Integration left the finite range. Carries the last sample that was still valid.
class BlowUp : public Error {
public:
    BlowUp(double last_xi, std::vector<double> last_state)
        : Error("integration blew up after xi = " + std::to_string(last_xi)), last_xi_(last_xi),
          last_state_(std::move(last_state)) {}
    double last_xi() const noexcept { return last_xi_; }
    const std::vector<double>& last_state() const noexcept { return last_state_; }

private:
    double last_xi_;
    std::vector<double> last_state_;
};

/// A candidate slope produced no admissible approximant.
class InfeasibleCandidate : public Error {
public:
    InfeasibleCandidate(double r1, const std::string& why)
        : Error("infeasible candidate r1 = " + std::to_string(r1) + ": " + why), r1_(r1) {}
    double r1() const noexcept { return r1_; }

private:
    double r1_;
};

struct ScanPoint {
    double r1;
    bool feasible;
    double residual;  // meaningless when !feasible
};

class NoSignChange : public Error {
public:
    explicit NoSignChange(std::vector<ScanPoint> scan)
        : Error("conservation residual has no usable sign change in the search bracket"), scan_(std::move(scan)) {}
    const std::vector<ScanPoint>& scan() const noexcept { return scan_; }

private:
    std::vector<ScanPoint> scan_;
};

class BracketExpansionFailure : public Error {
public:
    using Error::Error;
};

class OracleError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class InsufficientData : public FitError {
public:
    explicit InsufficientData(std::size_t n)
        : FitError("need at least 3 data points, got " + std::to_string(n)) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qpade
