#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "qpade/recurrence.hpp"

namespace qpade {

inline constexpr double pascal_per_bar = 1e5;

struct ViscosityPoint {
    double pressure;   // Pa
    double viscosity;  // Pa s
};

/// mu(p) = mu0 (1 + a (p - p0)^2)
struct ViscosityFit {
    double mu0;
    double p0;
    double a;
    double residual_norm;  // RMS of mu_i - mu(p_i), Pa s
};

/// Vertex pinned at the sample of minimum viscosity; a by least squares over the rest:
///   a = sum (mu_i/mu0 - 1)(p_i - p0)^2 / sum (p_i - p0)^4.
ViscosityFit fit_viscosity_parabola(std::span<const ViscosityPoint> points);

/// Two numeric columns (pressure, viscosity), comma or whitespace separated. A first
/// line with no numeric field is a header. Result is sorted by pressure.
std::vector<ViscosityPoint> load_viscosity_csv(const std::filesystem::path& path);
std::vector<ViscosityPoint> parse_viscosity_csv(std::string_view text);

/// Dimensional reservoir data in SI units.
struct PhysicalParams {
    double mu0;        // Pa s
    double p0;         // Pa, bubble point
    double a;          // 1/Pa^2
    double ck_omega;   // C_k * Omega, dimensionless
    double p1;         // Pa, initial / far-field pressure
    double p2;         // Pa, boundary pressure
    std::optional<double> k0;  // m^2
    std::optional<double> m0;
    std::optional<double> cf;  // 1/Pa
    std::optional<double> cm;  // 1/Pa

    /// Throws InvalidParameters unless a, mu0, p0 > 0.
    void validate() const;
};

struct Nondimensional {
    double omega;  // Pa, 1/sqrt(a)
    double y0;
    double y1;
    double y2;
    ModelParams model;
    double r0;  // P(0) = y2 - y1
    std::optional<double> kappa;
    std::optional<double> d0;  // stored only

    /// p = Omega (P + y1)
    double pressure(double P) const noexcept { return omega * (P + y1); }
};

struct NondimensionalOptions {
    /// Overrides 1/sqrt(a), e.g. with a rounded scale.
    std::optional<double> omega_override;
};

inline constexpr double rounded_omega = 0.81e7;

Nondimensional nondimensionalize(const PhysicalParams& phys, const NondimensionalOptions& options = {});

}  // namespace qpade
