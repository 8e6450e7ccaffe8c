#include "qpade/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qpade/errors.hpp"
#include "qpade/solver.hpp"

namespace qpade {

using nlohmann::json;

namespace {

template <typename T>
json opt_to_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

void log(LogLevel level, const std::string& msg) {
    static const LogLevel threshold = log_level_from_env();
    if (level <= threshold && threshold != LogLevel::Quiet) std::cerr << "qpade: " << msg << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

LogLevel log_level_from_env() {
    const char* env = std::getenv("QPADE_LOG");
    if (!env) return LogLevel::Info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void to_json(json& j, const RunReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"M", row.order},
                        {"r1", opt_to_json(row.r1)},
                        {"residual", opt_to_json(row.residual)},
                        {"eta", opt_to_json(row.eta)},
                        {"max_abs_delta", opt_to_json(row.max_abs_delta)},
                        {"numerator", row.numerator},
                        {"denominator", row.denominator},
                        {"error", row.error}});
    }
    j = json{{"kind", r.kind},
             {"H", opt_to_json(r.decay_rate)},
             {"rows", rows},
             {"oracle",
              {{"r1_exact", opt_to_json(r.oracle.r1_exact)},
               {"L", opt_to_json(r.oracle.span)},
               {"delta_limit_observed", opt_to_json(r.oracle.delta_limit_observed)},
               {"delta_limit_expected", opt_to_json(r.oracle.delta_limit_expected)},
               {"error", r.oracle.error}}},
             {"files", r.files},
             {"metadata", r.metadata}};
}

void from_json(const json& j, RunReport& r) {
    r.kind = j.at("kind").get<std::string>();
    r.decay_rate = opt_from_json<double>(j, "H");
    r.rows.clear();
    for (const auto& row : j.at("rows")) {
        ReportRow out;
        out.order = row.at("M").get<int>();
        out.r1 = opt_from_json<double>(row, "r1");
        out.residual = opt_from_json<double>(row, "residual");
        out.eta = opt_from_json<double>(row, "eta");
        out.max_abs_delta = opt_from_json<double>(row, "max_abs_delta");
        out.numerator = row.at("numerator").get<std::vector<double>>();
        out.denominator = row.at("denominator").get<std::vector<double>>();
        out.error = row.at("error").get<std::string>();
        r.rows.push_back(std::move(out));
    }
    const auto& o = j.at("oracle");
    r.oracle.r1_exact = opt_from_json<double>(o, "r1_exact");
    r.oracle.span = opt_from_json<double>(o, "L");
    r.oracle.delta_limit_observed = opt_from_json<double>(o, "delta_limit_observed");
    r.oracle.delta_limit_expected = opt_from_json<double>(o, "delta_limit_expected");
    r.oracle.error = o.at("error").get<std::string>();
    r.files = j.at("files").get<std::vector<std::string>>();
    r.metadata = j.at("metadata");
}

int exit_code(const RunReport& report) {
    std::size_t solved = 0;
    for (const auto& row : report.rows) solved += row.solved() ? 1 : 0;
    if (solved == 0) return 1;
    if (solved < report.rows.size() || !report.oracle.error.empty()) return 2;
    return 0;
}

std::string format_table(const RunReport& report) {
    std::ostringstream out;
    char buf[64];
    const auto cell = [&](const std::optional<double>& v, const char* fmt) {
        if (!v) return std::string("         --");
        std::snprintf(buf, sizeof buf, fmt, *v);
        return std::string(buf);
    };
    out << "case: " << report.kind << '\n';
    if (report.decay_rate) out << "H = " << cell(report.decay_rate, "%.5f") << '\n';
    out << "M          ";
    for (const auto& row : report.rows) out << "  " << std::string(9, ' ') << row.order;
    out << "\nr1_M       ";
    for (const auto& row : report.rows) out << "  " << cell(row.r1, "%10.5f");
    out << "\neta        ";
    for (const auto& row : report.rows) out << "  " << cell(row.eta, "%10.4f");
    out << "\nmax|delta| ";
    for (const auto& row : report.rows) out << "  " << cell(row.max_abs_delta, "%10.4f");
    out << "\n\nr1_exact = " << cell(report.oracle.r1_exact, "%.5f");
    if (report.oracle.delta_limit_expected) {
        out << "\nY(L) = " << cell(report.oracle.delta_limit_observed, "%.6f")
            << "   Delta = " << cell(report.oracle.delta_limit_expected, "%.6f");
    }
    out << '\n';
    for (const auto& row : report.rows)
        if (!row.error.empty()) out << "M = " << row.order << " failed: " << row.error << '\n';
    if (!report.oracle.error.empty()) out << "oracle failed: " << report.oracle.error << '\n';
    return out.str();
}

void write_file_atomically(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

SolveOptions solve_options_for(const Problem& problem, int order, const RunOptions& options) {
    SolveOptions so;
    if (options.paper_compat && problem.kind() == OdeKind::TravelingWave && order >= 2) so.integration.cutoff = 4.0;
    return so;
}

std::filesystem::path output_dir(const CaseConfig& config, const RunOptions& options) {
    return options.output_override.value_or(config.output);
}

std::optional<OracleResult> run_oracle(const CaseConfig& config, const Problem& problem, OracleRow& row) {
    ShootingOptions so = default_shooting_options(problem.kind());
    so.span = config.oracle.span;
    so.step = config.oracle.step;
    try {
        auto oracle = shooting_exact(problem, config.oracle.bracket.first, config.oracle.bracket.second, so);
        row.r1_exact = oracle.r1_exact;
        row.span = so.span;
        row.delta_limit_observed = oracle.delta_limit_observed;
        if (problem.kind() == OdeKind::TravelingWave)
            row.delta_limit_expected = conserved_limit(problem, oracle.r1_exact);
        return oracle;
    } catch (const Error& e) {
        row.error = e.what();
        log(LogLevel::Info, std::string("oracle failed: ") + e.what());
        return std::nullopt;
    }
}

}  // namespace

RunReport cmd_solve(const CaseConfig& config, const RunOptions& options) {
    const Problem problem = build_problem(config, options);
    const auto grid = uniform_grid(config.grid.start, config.grid.stop, config.grid.count);
    const auto dir = output_dir(config, options);

    RunReport report;
    report.kind = to_string(problem.kind());
    if (problem.kind() == OdeKind::TravelingWave) report.decay_rate = decay_rate(problem.traveling());

    const auto oracle = run_oracle(config, problem, report.oracle);

    std::vector<std::optional<SolveResult>> results;
    for (int order : config.orders) {
        ReportRow row;
        row.order = order;
        try {
            auto result = solve_r1(problem, order, config.search_bracket.first, config.search_bracket.second,
                                   solve_options_for(problem, order, options));
            if (oracle) attach_oracle(result, *oracle, grid);
            row.r1 = result.r1;
            row.residual = result.residual;
            row.eta = result.eta;
            row.numerator.assign(result.pade.numerator().begin(), result.pade.numerator().end());
            row.denominator.assign(result.pade.denominator().begin(), result.pade.denominator().end());
            if (!result.delta_profile.empty()) {
                double m = 0.0;
                for (const auto& s : result.delta_profile) m = std::max(m, std::abs(s.delta));
                row.max_abs_delta = m;
            }
            log(LogLevel::Debug, "M = " + std::to_string(order) + ": r1 = " + format_number(result.r1));
            results.emplace_back(std::move(result));
        } catch (const Error& e) {
            row.error = e.what();
            log(LogLevel::Info, "M = " + std::to_string(order) + " failed: " + e.what());
            results.emplace_back(std::nullopt);
        }
        report.rows.push_back(std::move(row));
    }

    // profiles.csv: xi, oracle, pade_M.., delta_M..
    std::ostringstream csv;
    csv << "xi,oracle";
    for (int order : config.orders) csv << ",pade_M" << order;
    for (int order : config.orders) csv << ",delta_M" << order;
    csv << '\n';
    for (double xi : grid) {
        const double p = oracle ? oracle->value_at(xi) : 0.0;
        csv << format_number(xi) << ',' << (oracle ? format_number(p) : "");
        for (const auto& r : results) csv << ',' << (r ? format_number(r->pade(xi)) : "");
        for (const auto& r : results) csv << ',' << (r && oracle ? format_number(p - r->pade(xi)) : "");
        csv << '\n';
    }

    report.files = {(dir / "profiles.csv").string(), (dir / "table.txt").string(), (dir / "report.json").string()};
    report.metadata = {{"generated_at", utc_timestamp()}, {"paper_compat", options.paper_compat}};

    write_file_atomically(dir / "profiles.csv", csv.str());
    write_file_atomically(dir / "table.txt", format_table(report));
    write_file_atomically(dir / "report.json", json(report).dump(2) + "\n");
    log(LogLevel::Info, "wrote " + dir.string());
    return report;
}

std::filesystem::path cmd_fit(const std::filesystem::path& csv_path, const std::filesystem::path& output_dir) {
    const auto points = load_viscosity_csv(csv_path);
    const auto fit = fit_viscosity_parabola(points);
    const json doc = {{"physical", {{"mu0", fit.mu0}, {"p0", fit.p0}, {"a", fit.a}}},
                      {"fit", {{"residual_norm", fit.residual_norm}, {"points", points.size()}}}};
    const auto path = output_dir / "fit.json";
    write_file_atomically(path, doc.dump(2) + "\n");
    log(LogLevel::Info, "a = " + format_number(fit.a) + " 1/Pa^2, wrote " + path.string());
    return path;
}

std::filesystem::path cmd_profile(const CaseConfig& config, int order, const RunOptions& options) {
    if (order < 1 || order > 3) throw ConfigError("M must be 1, 2 or 3");
    const Problem problem = build_problem(config, options);
    const auto grid = uniform_grid(config.grid.start, config.grid.stop, config.grid.count);

    OracleRow oracle_row;
    const auto oracle = run_oracle(config, problem, oracle_row);
    if (!oracle) throw OracleError(oracle_row.error);
    const auto result = solve_r1(problem, order, config.search_bracket.first, config.search_bracket.second,
                                 solve_options_for(problem, order, options));
    const auto err = profile_error(result, *oracle, grid);

    std::ostringstream csv;
    csv << "xi,oracle,pade,delta\n";
    for (const auto& s : err.samples)
        csv << format_number(s.xi) << ',' << format_number(s.oracle) << ',' << format_number(s.pade) << ','
            << format_number(s.delta) << '\n';
    const auto path = output_dir(config, options) / ("profile_M" + std::to_string(order) + ".csv");
    write_file_atomically(path, csv.str());
    return path;
}

}  // namespace qpade
