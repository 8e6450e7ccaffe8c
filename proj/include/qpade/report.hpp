#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpade/config.hpp"

namespace qpade {

struct ReportRow {
    int order = 0;
    std::optional<double> r1;
    std::optional<double> residual;
    std::optional<double> eta;
    std::optional<double> max_abs_delta;
    std::vector<double> numerator;
    std::vector<double> denominator;
    std::string error;  // empty on success

    bool solved() const noexcept { return r1.has_value(); }
    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct OracleRow {
    std::optional<double> r1_exact;
    std::optional<double> span;
    std::optional<double> delta_limit_observed;  // Y(L)
    std::optional<double> delta_limit_expected;  // traveling wave only
    std::string error;

    friend bool operator==(const OracleRow&, const OracleRow&) = default;
};

struct RunReport {
    std::string kind;
    std::optional<double> decay_rate;  // traveling wave only
    std::vector<ReportRow> rows;       // sorted by M
    OracleRow oracle;
    std::vector<std::string> files;
    nlohmann::json metadata;  // timestamps live here and nowhere else

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const RunReport& report);
void from_json(const nlohmann::json& j, RunReport& report);

/// 0 when every requested M solved (and the oracle ran), 2 when only some did, 1 when none did.
int exit_code(const RunReport& report);

/// Plain-text table: one column per M with r1 and eta, then the oracle slope.
std::string format_table(const RunReport& report);

/// Writes via a temporary sibling file and rename.
void write_file_atomically(const std::filesystem::path& path, std::string_view content);

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Solves every requested M, runs the oracle once, and writes profiles.csv,
/// report.json and table.txt into the output directory.
RunReport cmd_solve(const CaseConfig& config, const RunOptions& options = {});

/// Fits the viscosity parabola to a CSV file and writes fit.json into `output_dir`.
/// Returns the path written.
std::filesystem::path cmd_fit(const std::filesystem::path& csv_path, const std::filesystem::path& output_dir);

/// Emits xi, oracle, pade, delta for one M as profile_M<M>.csv; returns the path.
std::filesystem::path cmd_profile(const CaseConfig& config, int order, const RunOptions& options = {});

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };
/// From QPADE_LOG (quiet | info | debug); info when unset.
LogLevel log_level_from_env();

}  // namespace qpade
