#include "qpade/physical.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qpade/errors.hpp"

namespace qpade {

ViscosityFit fit_viscosity_parabola(std::span<const ViscosityPoint> points) {
    if (points.size() < 3) throw InsufficientData(points.size());

    const auto vertex = std::min_element(points.begin(), points.end(),
                                         [](const auto& l, const auto& r) { return l.viscosity < r.viscosity; });
    const auto ties = std::count_if(points.begin(), points.end(),
                                    [&](const auto& pt) { return pt.viscosity == vertex->viscosity; });
    if (ties > 1) throw FitError("minimum viscosity is not attained at a unique point");
    const double mu0 = vertex->viscosity;
    const double p0 = vertex->pressure;
    if (!(mu0 > 0.0)) throw FitError("minimum viscosity must be positive");

    double num = 0.0;
    double den = 0.0;
    for (const auto& pt : points) {
        const double d2 = (pt.pressure - p0) * (pt.pressure - p0);
        num += (pt.viscosity / mu0 - 1.0) * d2;
        den += d2 * d2;
    }
    if (den == 0.0) throw FitError("all points sit at the vertex pressure");
    const double a = num / den;
    if (!(a > 0.0)) throw FitError("fitted curvature is not positive; data are not convex");

    double ss = 0.0;
    for (const auto& pt : points) {
        const double model = mu0 * (1.0 + a * (pt.pressure - p0) * (pt.pressure - p0));
        ss += (pt.viscosity - model) * (pt.viscosity - model);
    }
    return {mu0, p0, a, std::sqrt(ss / static_cast<double>(points.size()))};
}

namespace {

std::optional<double> parse_number(std::string_view field) {
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    if (field.empty()) return std::nullopt;
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    const auto sep = [](char ch) { return ch == ',' || ch == ';' || ch == ' ' || ch == '\t'; };
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !sep(line[j])) ++j;
        out.push_back(line.substr(i, j - i));
        while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
        if (j < line.size() && (line[j] == ',' || line[j] == ';')) ++j;
        i = j;
    }
    return out;
}

}  // namespace

std::vector<ViscosityPoint> parse_viscosity_csv(std::string_view text) {
    std::vector<ViscosityPoint> points;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos || line.front() == '#') continue;

        const auto fields = split_fields(line);
        const bool first = !seen_content;
        seen_content = true;
        const bool any_numeric = std::any_of(fields.begin(), fields.end(),
                                             [](auto f) { return parse_number(f).has_value(); });
        if (first && !any_numeric) continue;  // header

        if (fields.size() != 2) throw ParseError(line_no, "expected two columns (pressure, viscosity)");
        const auto p = parse_number(fields[0]);
        const auto mu = parse_number(fields[1]);
        if (!p || !mu) throw ParseError(line_no, "malformed number in '" + std::string(line) + "'");
        points.push_back({*p, *mu});
    }
    if (points.size() < 3) throw InsufficientData(points.size());
    std::stable_sort(points.begin(), points.end(), [](const auto& l, const auto& r) { return l.pressure < r.pressure; });
    return points;
}

std::vector<ViscosityPoint> load_viscosity_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_viscosity_csv(buf.str());
}

void PhysicalParams::validate() const {
    if (!(a > 0.0) || !(mu0 > 0.0) || !(p0 > 0.0)) throw InvalidParameters("need a > 0, mu0 > 0 and p0 > 0");
    if (!std::isfinite(ck_omega) || !std::isfinite(p1) || !std::isfinite(p2))
        throw InvalidParameters("pressures and C_k Omega must be finite");
}

Nondimensional nondimensionalize(const PhysicalParams& phys, const NondimensionalOptions& options) {
    phys.validate();
    const double omega = options.omega_override.value_or(1.0 / std::sqrt(phys.a));
    if (!(omega > 0.0)) throw InvalidParameters("pressure scale must be positive");
    const double y0 = phys.p0 / omega;
    const double y1 = phys.p1 / omega;
    const double y2 = phys.p2 / omega;
    const double dy = y1 - y0;

    const double shift = 1.0 + phys.ck_omega * dy;
    if (shift == 0.0) throw InvalidParameters("singular mapping: 1 + C_k Omega (y1 - y0) = 0");
    const double beta1 = phys.ck_omega / shift;
    const double beta2 = 1.0 / (1.0 + dy * dy);
    const double beta3 = dy / (1.0 + dy * dy);

    Nondimensional nd{omega, y0, y1, y2, ModelParams(beta1, beta2, beta3), y2 - y1, std::nullopt, std::nullopt};
    if (phys.k0 && phys.m0 && phys.cf && phys.cm) {
        const double kappa = *phys.k0 / (phys.mu0 * *phys.m0 * (*phys.cf + *phys.cm));
        nd.kappa = kappa;
        nd.d0 = kappa * shift / (1.0 + dy * dy);
    }
    return nd;
}

}  // namespace qpade
