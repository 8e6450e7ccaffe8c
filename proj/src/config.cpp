#include "qpade/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>

#include "qpade/errors.hpp"
#include "qpade/solver.hpp"

namespace qpade {

using nlohmann::json;

namespace {

double number(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    return number(obj, key);
}

std::pair<double, double> interval(const json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(std::string(what) + " must be a two-element numeric array");
    const double lo = v[0].get<double>();
    const double hi = v[1].get<double>();
    if (!(lo < hi)) throw ConfigError(std::string(what) + " needs lo < hi");
    return {lo, hi};
}

double pressure_key(const json& obj, const char* key) {
    if (!obj.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
    return parse_pressure(obj.at(key));
}

}  // namespace

double parse_pressure(const json& value) {
    if (value.is_number()) return value.get<double>();
    if (!value.is_string()) throw ConfigError("pressure must be a number (Pa) or a string with a unit");
    const auto text = value.get<std::string>();
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc()) throw ConfigError("cannot parse pressure '" + text + "'");
    std::string unit(ptr, end);
    unit.erase(std::remove_if(unit.begin(), unit.end(), [](unsigned char ch) { return std::isspace(ch); }),
               unit.end());
    if (unit.empty() || unit == "Pa") return v;
    if (unit == "kPa") return v * 1e3;
    if (unit == "MPa") return v * 1e6;
    if (unit == "bar") return v * pascal_per_bar;
    throw ConfigError("unknown pressure unit '" + unit + "'");
}

CaseConfig parse_case_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("case file must be a JSON object");
    CaseConfig cfg;

    const auto kind = doc.value("kind", std::string{});
    if (kind == "self_similar")
        cfg.kind = OdeKind::SelfSimilar;
    else if (kind == "traveling_wave")
        cfg.kind = OdeKind::TravelingWave;
    else
        throw ConfigError("kind must be 'self_similar' or 'traveling_wave'");

    const bool has_beta = doc.contains("beta");
    const bool has_phys = doc.contains("physical");
    if (has_beta == has_phys) throw ConfigError("exactly one of 'beta' or 'physical' must be given");
    if (has_beta) {
        const auto& b = doc.at("beta");
        cfg.beta = BetaSet{number(b, "beta1"), number(b, "beta2"), number(b, "two_beta3"),
                           optional_number(b, "boundary_value").value_or(1.0)};
    } else {
        const auto& p = doc.at("physical");
        PhysicalParams phys{number(p, "mu0"), pressure_key(p, "p0"), number(p, "a"), number(p, "ck_omega"),
                            pressure_key(p, "p1"), pressure_key(p, "p2"), optional_number(p, "k0"),
                            optional_number(p, "m0"), optional_number(p, "cf"), optional_number(p, "cm")};
        cfg.physical = phys;
    }

    if (cfg.kind == OdeKind::TravelingWave) {
        if (!doc.contains("traveling")) throw ConfigError("traveling_wave case needs a 'traveling' block");
        const auto& t = doc.at("traveling");
        cfg.traveling = RelaxationConstants{number(t, "tau"), number(t, "theta"), number(t, "c")};
    }

    if (doc.contains("M")) {
        const auto& m = doc.at("M");
        if (!m.is_array()) throw ConfigError("M must be an array");
        for (const auto& v : m) {
            if (!v.is_number_integer()) throw ConfigError("M entries must be integers");
            const int order = v.get<int>();
            if (order < 1 || order > 3) throw ConfigError("M entries must be in {1, 2, 3}");
            cfg.orders.push_back(order);
        }
    } else {
        cfg.orders = cfg.kind == OdeKind::SelfSimilar ? std::vector{1, 2, 3} : std::vector{1, 2};
    }
    std::sort(cfg.orders.begin(), cfg.orders.end());
    cfg.orders.erase(std::unique(cfg.orders.begin(), cfg.orders.end()), cfg.orders.end());
    if (cfg.orders.empty()) throw ConfigError("M must not be empty");

    cfg.search_bracket = doc.contains("search_bracket") ? interval(doc.at("search_bracket"), "search_bracket")
                                                        : default_search_bracket(cfg.kind);

    cfg.oracle = OracleConfig{default_oracle_span(cfg.kind), cfg.search_bracket, 1e-3};
    if (doc.contains("oracle")) {
        const auto& o = doc.at("oracle");
        cfg.oracle.span = optional_number(o, "L").value_or(cfg.oracle.span);
        cfg.oracle.step = optional_number(o, "step").value_or(cfg.oracle.step);
        if (o.contains("bracket")) cfg.oracle.bracket = interval(o.at("bracket"), "oracle.bracket");
    }
    if (!(cfg.oracle.span > 0.0) || !(cfg.oracle.step > 0.0)) throw ConfigError("oracle L and step must be positive");

    cfg.output = doc.value("output", std::string("out"));

    cfg.grid = cfg.kind == OdeKind::SelfSimilar ? GridConfig{0.0, 3.0, 301} : GridConfig{0.0, 4.0, 401};
    if (doc.contains("grid")) {
        const auto& g = doc.at("grid");
        cfg.grid.start = optional_number(g, "start").value_or(cfg.grid.start);
        cfg.grid.stop = optional_number(g, "stop").value_or(cfg.grid.stop);
        if (g.contains("count")) {
            if (!g.at("count").is_number_integer()) throw ConfigError("grid.count must be an integer");
            cfg.grid.count = g.at("count").get<int>();
        }
    }
    if (cfg.grid.count < 1 || cfg.grid.start < 0.0 || cfg.grid.stop < cfg.grid.start)
        throw ConfigError("grid needs 0 <= start <= stop and count >= 1");
    if (cfg.grid.stop > cfg.oracle.span) throw ConfigError("grid extends past the oracle interval L");
    return cfg;
}

CaseConfig load_case_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    try {
        return parse_case_config(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
}

Problem build_problem(const CaseConfig& config, const RunOptions& options) {
    try {
        std::optional<ModelParams> model;
        double r0 = 1.0;
        if (config.beta) {
            model = ModelParams::from_two_beta3(config.beta->beta1, config.beta->beta2, config.beta->two_beta3);
            r0 = config.beta->boundary_value;
        } else {
            NondimensionalOptions nd_opts;
            if (options.paper_compat) nd_opts.omega_override = rounded_omega;
            const auto nd = nondimensionalize(*config.physical, nd_opts);
            model = nd.model;
            r0 = nd.r0;
        }
        if (config.kind == OdeKind::SelfSimilar) return Problem::self_similar(*model, r0);
        const auto& t = *config.traveling;
        return Problem::traveling_wave(TravelingParams(t.tau, t.theta, t.c, *model), r0);
    } catch (const InvalidParameters& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace qpade
