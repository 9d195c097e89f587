#include "funcwave/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "funcwave/charmap.hpp"
#include "funcwave/schroder.hpp"

namespace funcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double number_or(const nlohmann::json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::vector<std::pair<double, double>> pairs_from(const nlohmann::json& rows,
                                                  const char* what) {
    std::vector<std::pair<double, double>> out;
    if (!rows.is_array()) throw InvalidParams(std::string(what) + " must be an array");
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 2)
            throw InvalidParams(std::string(what) + " entries must be [x, y] pairs");
        out.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return out;
}

std::function<double(std::span<const double>)> combiner(const std::string& name) {
    if (name == "sum") {
        return [](std::span<const double> orbit) {
            double s = 0.0;
            for (double v : orbit) s += v;
            return s;
        };
    }
    if (name == "quartic_sum") {
        return [](std::span<const double> orbit) {
            double s = 0.0;
            for (double v : orbit) s += v * v * v * v;
            return s;
        };
    }
    if (name == "min") {
        return [](std::span<const double> orbit) {
            double s = orbit.front();
            for (double v : orbit) s = std::min(s, v);
            return s;
        };
    }
    throw InvalidParams("unknown orbit combiner '" + name + "'");
}

Construction build_involution(const nlohmann::json& sol) {
    Construction c;
    const std::string family = sol.value("family", std::string("corner_reciprocal"));
    Involution invol;
    invol.order = 2;
    if (family == "corner_reciprocal") {
        invol.eval = [](double x) { return 1.0 / x; };
        invol.domain = Interval::open(-kInf, 0.0);
        invol.probe_window = Interval::closed(-3.0, -1.05);
        c.profile = make_profile(ProfileKind::involution_derived, {});
    } else if (family == "quadrant_circle") {
        invol.eval = [](double x) { return std::copysign(std::sqrt(1.0 - x * x), x); };
        invol.domain = Interval::closed(-1.0, 1.0);
        invol.probe_window = invol.domain;
        c.profile =
            make_profile(ProfileKind::involution_derived, {{"b", std::sqrt(0.5)}});
    } else if (family == "pl") {
        const double x0 = number_or(sol, "x0", 0.0);
        const double m = number_or(sol, "m", 2.0);
        if (!(m > 1.0)) throw InvalidParams("piecewise-linear family needs m > 1");
        invol.eval = [x0, m](double x) {
            return x < x0 ? x0 + m * (x0 - x) : x0 - (x - x0) / m;
        };
        invol.domain = Interval::all();
        invol.probe_window = Interval::closed(x0 - 2.0, x0 + 2.0);
        c.profile = make_profile(ProfileKind::involution_derived, {{"m", m}, {"x0", x0}});
    } else {
        throw InvalidParams("unknown involution family '" + family + "'");
    }
    c.f = involution_solution(invol, combiner(sol.value("combine", std::string("sum"))));
    c.map = *c.f.map;
    c.nu = c.profile.nu;
    c.flux = 0.0;
    return c;
}

}  // namespace

DepthProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw InvalidParams("profile config needs a \"kind\" field");
    const std::string kind_name = j.at("kind").get<std::string>();
    const double nu = number_or(j, "nu", 1.0);
    if (kind_name == "custom")
        return make_custom_profile(pairs_from(j.at("samples"), "profile samples"), nu);
    std::map<std::string, double> params;
    if (j.contains("params"))
        for (const auto& [key, value] : j.at("params").items())
            params[key] = value.get<double>();
    return make_profile(profile_kind_from_string(kind_name), std::move(params), nu);
}

PeriodicFunction periodic_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw InvalidParams("periodic config needs a \"kind\" field");
    const PeriodicKind kind = periodic_kind_from_string(j.at("kind").get<std::string>());
    if (kind == PeriodicKind::tabulated) {
        std::optional<double> period;
        if (j.contains("period")) period = j.at("period").get<double>();
        return periodic_from_table(pairs_from(j.at("samples"), "periodic samples"), period);
    }
    if (!j.contains("period")) throw InvalidParams("periodic config needs a \"period\"");
    return make_periodic(kind, j.at("period").get<double>(), number_or(j, "amplitude", 1.0),
                         number_or(j, "phase", 0.0));
}

Construction build_construction(const nlohmann::json& config) {
    if (!config.is_object() || !config.contains("solution"))
        throw InvalidParams("construction config needs a \"solution\" object");
    const nlohmann::json& sol = config.at("solution");
    const std::string type = sol.value("type", std::string("periodic_composition"));

    Construction c;
    if (type == "barcilon") {
        auto [nu, f] = barcilon_solution(sol.at("m").get<int>(), sol.at("k").get<int>(),
                                         periodic_from_json(sol.at("periodic")));
        c.nu = nu;
        c.f = std::move(f);
        c.profile = make_profile(ProfileKind::semi_ellipse, {}, nu);
        c.map = *c.f.map;
    } else if (type == "involution") {
        c = build_involution(sol);
    } else if (type == "abel_direct" || type == "periodic_composition") {
        if (!config.contains("profile"))
            throw InvalidParams("construction config needs a \"profile\" object");
        c.profile = profile_from_json(config.at("profile"));
        c.nu = c.profile.nu;
        c.map = build_forward_map(c.profile);

        std::map<std::string, double> abel_params = c.profile.params;
        abel_params["nu"] = c.profile.nu;
        if (sol.contains("Q")) abel_params["Q"] = sol.at("Q").get<double>();
        AbelSolution a = closed_form_abel(c.profile.kind, std::move(abel_params));

        if (type == "abel_direct") {
            c.flux = a.Q;
            c.f.domain = a.domain;
            c.f.eval = a.eval;
            c.f.provenance = WaveProvenance::custom;
            c.f.flux = a.Q;
            c.f.map = a.map;
        } else {
            c.f = compose_periodic(a, periodic_from_json(sol.at("periodic")));
        }
        if (c.profile.kind == ProfileKind::dai_hyperbola && !c.profile.has_param("d0")) {
            // The plain hyperbola's quadratic solution is even and entire: it
            // solves the mirror branch too, and near the pole the lower
            // characteristic foot crosses onto it.  Widen so bottom sweeps
            // and fields span both half-lines.
            c.f.domain = Interval::all();
        }
        c.abel = std::move(a);
    } else {
        throw InvalidParams("unknown solution type '" + type + "'");
    }

    if (sol.contains("perturb_linear")) {
        const double eps = sol.at("perturb_linear").get<double>();
        c.f.eval = [base = c.f.eval, eps](double x) { return base(x) + eps * x; };
    }
    c.name = config.value("name", std::string("construction"));
    return c;
}

nlohmann::json grid_to_json(const FieldGrid& grid) {
    nlohmann::json mask = nlohmann::json::array();
    for (unsigned char m : grid.inside_mask) mask.push_back(static_cast<int>(m));
    return nlohmann::json{{"window",
                           {{"x_lo", grid.window.x_lo},
                            {"x_hi", grid.window.x_hi},
                            {"z_lo", grid.window.z_lo},
                            {"z_hi", grid.window.z_hi}}},
                          {"nx", grid.nx},
                          {"nz", grid.nz},
                          {"values", grid.values},
                          {"inside_mask", std::move(mask)}};
}

}  // namespace funcwave
