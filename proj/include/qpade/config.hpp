#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qpade/physical.hpp"
#include "qpade/recurrence.hpp"

namespace qpade {

struct BetaSet {
    double beta1;
    double beta2;
    double two_beta3;
    double boundary_value = 1.0;
};

struct RelaxationConstants {
    double tau;
    double theta;
    double c;
};

struct OracleConfig {
    double span;
    std::pair<double, double> bracket;
    double step = 1e-3;
};

struct GridConfig {
    double start;
    double stop;
    int count;
};

/// One case file. Exactly one of `beta` / `physical` is set.
struct CaseConfig {
    OdeKind kind = OdeKind::SelfSimilar;
    std::optional<BetaSet> beta;
    std::optional<PhysicalParams> physical;
    std::optional<RelaxationConstants> traveling;
    std::vector<int> orders;
    std::pair<double, double> search_bracket;
    OracleConfig oracle;
    std::filesystem::path output = "out";
    GridConfig grid;
};

/// Parses "<number> <unit>" with unit Pa, kPa, MPa or bar, or a bare number in Pa.
double parse_pressure(const nlohmann::json& value);

/// Throws ConfigError on any schema violation.
CaseConfig parse_case_config(const nlohmann::json& doc);
CaseConfig load_case_config(const std::filesystem::path& path);

struct RunOptions {
    /// Rounded pressure scale and a [0, 4] window for the traveling-wave integral at M >= 2.
    bool paper_compat = false;
    std::optional<std::filesystem::path> output_override;
};

Problem build_problem(const CaseConfig& config, const RunOptions& options = {});

}  // namespace qpade
