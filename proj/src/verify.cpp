#include "funcwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

#include "funcwave/charmap.hpp"
#include "funcwave/schroder.hpp"

namespace funcwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Accumulator {
    ResidualReport report;
    double sum = 0.0;

    void add(double x, double z, double r) {
        r = std::abs(r);
        if (report.samples == 0 || r > report.max_abs) {
            report.max_abs = r;
            report.argmax_x = x;
            report.argmax_z = z;
        }
        sum += r;
        ++report.samples;
    }
    ResidualReport done() {
        report.mean_abs = report.samples > 0 ? sum / report.samples : 0.0;
        return report;
    }
};

}  // namespace

const char* to_string(Placement placement) {
    switch (placement) {
        case Placement::uniform: return "uniform";
        case Placement::chebyshev_nodes: return "chebyshev";
        case Placement::random_seeded: return "random";
    }
    return "uniform";
}

Placement placement_from_string(const std::string& name) {
    if (name == "uniform") return Placement::uniform;
    if (name == "chebyshev" || name == "chebyshev_nodes") return Placement::chebyshev_nodes;
    if (name == "random" || name == "random_seeded") return Placement::random_seeded;
    throw InvalidParams("unknown placement '" + name + "'");
}

std::vector<double> SweepSpec::points() const {
    if (n < 2) throw InvalidParams("sweep needs at least two points");
    if (!interval.bounded() || !(interval.lo < interval.hi))
        throw InvalidParams("sweep interval must be bounded and nonempty");
    const double lo = interval.lo;
    const double len = interval.hi - interval.lo;
    std::vector<double> xs(static_cast<std::size_t>(n));
    switch (placement) {
        case Placement::uniform:
            for (int i = 0; i < n; ++i) xs[i] = lo + len * (i + 0.5) / n;
            break;
        case Placement::chebyshev_nodes: {
            const double mid = lo + 0.5 * len;
            const double half = 0.5 * len;
            for (int i = 0; i < n; ++i)
                xs[i] = mid + half * std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * n));
            break;
        }
        case Placement::random_seeded: {
            std::mt19937_64 gen(seed);
            for (int i = 0; i < n; ++i) xs[i] = lo + len * ((gen() >> 11) * 0x1.0p-53);
            break;
        }
    }
    return xs;
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("interval"))
        throw InvalidParams("sweep config needs an \"interval\" [lo, hi]");
    const auto& iv = j.at("interval");
    if (!iv.is_array() || iv.size() != 2)
        throw InvalidParams("sweep interval must be a [lo, hi] pair");
    SweepSpec spec;
    spec.interval = Interval::closed(iv[0].get<double>(), iv[1].get<double>());
    spec.n = j.value("n", 100);
    if (j.contains("placement"))
        spec.placement = placement_from_string(j.at("placement").get<std::string>());
    spec.seed = j.value("seed", std::uint64_t{0});
    return spec;
}

ResidualReport fed_residual_sweep(const WaveProfileFunction& f, const DepthProfile& profile,
                                  double Q, const SweepSpec& spec) {
    if (!f.eval) throw InvalidParams("solution callable must be non-empty");
    Accumulator acc;
    for (double x : spec.points()) {
        const double dep = profile.d(x);
        const double up = x + dep / profile.nu;
        const double dn = x - dep / profile.nu;
        if (!f.domain.contains(up, 1e-12) || !f.domain.contains(dn, 1e-12))
            throw OutOfExtensionDomain("characteristic foot outside the solution domain");
        acc.add(x, kNaN, f.eval(up) - f.eval(dn) - Q);
    }
    return acc.done();
}

ResidualReport fet_residual_sweep(const std::function<double(double)>& g,
                                  const ForwardMap& map, double Q, const SweepSpec& spec) {
    if (!g) throw InvalidParams("solution callable must be non-empty");
    Accumulator acc;
    for (double x : spec.points()) {
        if (!map.domain.contains(x, 1e-12))
            throw OutOfExtensionDomain("sweep point outside the map domain");
        try {
            acc.add(x, kNaN, g(map.eval(x)) - g(x) - Q);
        } catch (const OutOfExtensionDomain&) {
            throw;
        } catch (const OutOfDomain& e) {
            throw OutOfExtensionDomain(e.what());
        }
    }
    return acc.done();
}

SuiteEntry continuity_check(const AbelSolution& a, int k_range, double tolerance) {
    if (k_range < 1) throw InvalidParams("k_range must be at least 1");
    SuiteEntry entry;
    entry.name = "continuity";
    entry.tolerance = tolerance;
    if (!a.seed || !a.seed->eval) {
        entry.detail = "solution carries no seed restriction";
        return entry;
    }
    if (a.Q == 0.0) {
        entry.detail = "zero-increment solution";
        return entry;
    }

    // One-sided limits at the boundary x_k meet iff the seed's full-interval
    // increment equals Q: approaching from below, the pulled-back argument
    // tends to the seed's upper endpoint one rung earlier, so the gap is
    // (seed(x1) + (k-1) Q) - (seed(x0) + k Q) at every k.  This is compared
    // through the seed because the extension's slope grows geometrically in k
    // and a fixed-offset sample would measure growth, not the jump.
    const double s0 = a.seed->eval(a.anchor);
    const double s1 = a.seed->eval(a.map.eval(a.anchor));

    Accumulator acc;
    int mismatches = 0;
    for (const int dir : {+1, -1}) {
        if (dir < 0 && !a.map.has_inverse()) {
            entry.detail += "no inverse, downward boundaries skipped; ";
            continue;
        }
        for (int k = 1; k <= k_range; ++k) {
            const int kk = dir * k;
            double xk = 0.0, below = 0.0, above = 0.0;
            try {
                xk = iterate(a.map, a.anchor, kk);
                below = iterate(a.map, a.anchor, kk - 1);
                above = iterate(a.map, a.anchor, kk + 1);
            } catch (const Error&) {
                entry.detail += (dir > 0 ? "upward" : "downward");
                entry.detail += " boundaries truncated at k=" + std::to_string(k - 1) + "; ";
                break;
            }
            acc.add(xk, kNaN, (s1 + (kk - 1) * a.Q) - (s0 + kk * a.Q));
            // Interval bookkeeping just off the boundary, where the
            // neighbouring intervals are wide enough to resolve the offset.
            // The offset scales with the boundary: far-out orbits reach
            // magnitudes where a fixed 1e-7 would vanish below one ulp.
            const double eps = 1e-7 * std::max(1.0, std::abs(xk));
            if (xk - below > 4.0 * eps &&
                locate_interval(a.map, a.anchor, xk - eps) != kk - 1)
                ++mismatches;
            if (above - xk > 4.0 * eps && locate_interval(a.map, a.anchor, xk + eps) != kk)
                ++mismatches;
        }
    }
    entry.report = acc.done();
    entry.passed = entry.report.max_abs < tolerance && mismatches == 0;
    if (mismatches > 0)
        entry.detail += std::to_string(mismatches) + " interval-index mismatches; ";
    return entry;
}

namespace {

SuiteEntry make_entry(std::string name, ResidualReport report, double tol) {
    SuiteEntry entry;
    entry.name = std::move(name);
    entry.report = report;
    entry.tolerance = tol;
    entry.passed = report.max_abs < tol;
    return entry;
}

std::string case_name(const nlohmann::json& jcase, int index) {
    if (jcase.is_object() && jcase.contains("name"))
        return jcase.at("name").get<std::string>();
    return "case_" + std::to_string(index);
}

std::vector<SuiteEntry> run_case(const nlohmann::json& jcase, int index) {
    const std::string name = case_name(jcase, index);
    const double tol =
        jcase.is_object() ? jcase.value("tolerance", 1e-9) : 1e-9;
    std::vector<SuiteEntry> entries;
    try {
        const Construction c = build_construction(jcase);
        SweepSpec sweep;
        if (jcase.contains("sweep")) {
            sweep = sweep_from_json(jcase.at("sweep"));
        } else {
            sweep.interval = c.profile.window;
            sweep.n = 200;
        }

        entries.push_back(
            make_entry(name + "/map", fet_residual_sweep(c.f.eval, c.map, c.flux, sweep), tol));
        entries.push_back(
            make_entry(name + "/bottom", fed_residual_sweep(c.f, c.profile, c.flux, sweep), tol));
        {
            Accumulator acc;
            for (double x : sweep.points())
                acc.add(x, kNaN, reflection_identity_residual(c.profile, c.map, x));
            entries.push_back(make_entry(name + "/reflection", acc.done(), tol));
        }
        {
            const StreamField field = extend_field(c.f, c.nu);
            Accumulator acc;
            for (double x : sweep.points()) {
                const double dep = c.profile.d(x);
                double cap = 0.45 * dep;
                if (std::isfinite(c.f.domain.lo))
                    cap = std::min(cap, 0.45 * c.nu * (x - c.f.domain.lo));
                if (std::isfinite(c.f.domain.hi))
                    cap = std::min(cap, 0.45 * c.nu * (c.f.domain.hi - x));
                if (!(cap > 0.0) || !std::isfinite(cap)) continue;
                acc.add(x, -cap, field.psi(x, -cap) + field.psi(x, cap));
            }
            entries.push_back(make_entry(name + "/parity", acc.done(), 1e-12));
        }
        if (c.abel && c.abel->seed) {
            SuiteEntry cont = continuity_check(*c.abel, 20);
            cont.name = name + "/continuity";
            entries.push_back(std::move(cont));
        }
    } catch (const std::exception& e) {
        SuiteEntry failed;
        failed.name = name + "/build";
        failed.tolerance = tol;
        failed.detail = e.what();
        entries.push_back(std::move(failed));
    }
    return entries;
}

}  // namespace

SuiteReport run_suite(const nlohmann::json& config) {
    if (!config.is_object() || !config.contains("cases") || !config.at("cases").is_array())
        throw InvalidParams("suite config needs a \"cases\" array");
    std::vector<nlohmann::json> cases;
    for (const auto& jcase : config.at("cases")) cases.push_back(jcase);

    std::vector<int> order(cases.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return case_name(cases[lhs], lhs) < case_name(cases[rhs], rhs);
    });

    const int total = static_cast<int>(cases.size());
    std::vector<std::vector<SuiteEntry>> results(cases.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < total; ++i) {
        const int idx = order[static_cast<std::size_t>(i)];
        results[idx] = run_case(cases[idx], idx);
    }

    SuiteReport report;
    for (int idx : order) {
        for (SuiteEntry& entry : results[idx]) {
            report.all_passed = report.all_passed && entry.passed;
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

nlohmann::json default_suite_config() {
    return nlohmann::json::parse(R"json({
  "cases": [
    {
      "name": "barcilon_m1k3_cos",
      "solution": {"type": "barcilon", "m": 1, "k": 3,
                   "periodic": {"kind": "cosine", "period": 2.0943951023931953}},
      "sweep": {"interval": [-0.98, 0.98], "n": 300},
      "tolerance": 1e-9
    },
    {
      "name": "barcilon_m1k3_tri",
      "solution": {"type": "barcilon", "m": 1, "k": 3,
                   "periodic": {"kind": "triangle_wave", "period": 2.0943951023931953}},
      "sweep": {"interval": [-0.98, 0.98], "n": 300},
      "tolerance": 1e-9
    },
    {
      "name": "corner_flow",
      "solution": {"type": "involution", "family": "corner_reciprocal", "combine": "sum"},
      "sweep": {"interval": [-3.0, -1.05], "n": 300},
      "tolerance": 1e-9
    },
    {
      "name": "dai_flux",
      "profile": {"kind": "dai_hyperbola",
                  "params": {"r": 1.0, "window_lo": 0.3, "window_hi": 2.0}},
      "solution": {"type": "abel_direct", "Q": 4.0},
      "sweep": {"interval": [0.3, 2.0], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "dai_standing",
      "profile": {"kind": "dai_hyperbola", "params": {"r": 1.0}},
      "solution": {"type": "periodic_composition", "Q": 4.0,
                   "periodic": {"kind": "cosine", "period": 4.0}},
      "sweep": {"interval": [0.3, 2.0], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "hump_standing",
      "profile": {"kind": "hyperbolic_hump", "params": {"tau": 0.5}},
      "solution": {"type": "periodic_composition",
                   "periodic": {"kind": "cosine", "period": 1.0986122886681098}},
      "sweep": {"interval": [-2.0, 2.0], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "lens_standing",
      "profile": {"kind": "hyperbolic_lens", "params": {"c": 2.0}},
      "solution": {"type": "periodic_composition",
                   "periodic": {"kind": "sine", "period": 0.5493061443340549}},
      "sweep": {"interval": [-0.95, 0.95], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "parabolic_flux",
      "profile": {"kind": "parabolic_segment"},
      "solution": {"type": "abel_direct"},
      "sweep": {"interval": [0.05, 0.45], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "triangle_standing",
      "profile": {"kind": "isosceles_triangle", "params": {"tau": 0.35}},
      "solution": {"type": "periodic_composition",
                   "periodic": {"kind": "cosine", "period": 0.7}},
      "sweep": {"interval": [-0.95, 0.95], "n": 500},
      "tolerance": 1e-9
    },
    {
      "name": "wedge_flux",
      "profile": {"kind": "wedge", "params": {"tau": 0.5}},
      "solution": {"type": "abel_direct"},
      "sweep": {"interval": [-3.0, -0.1], "n": 500},
      "tolerance": 1e-9
    }
  ]
})json");
}

nlohmann::json report_to_json(const SuiteReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const SuiteEntry& entry : report.entries) {
        entries.push_back({{"name", entry.name},
                           {"samples", entry.report.samples},
                           {"max_abs", entry.report.max_abs},
                           {"mean_abs", entry.report.mean_abs},
                           {"argmax_x", entry.report.argmax_x},
                           {"argmax_z", entry.report.argmax_z},
                           {"tolerance", entry.tolerance},
                           {"passed", entry.passed},
                           {"detail", entry.detail}});
    }
    return nlohmann::json{{"all_passed", report.all_passed}, {"entries", std::move(entries)}};
}

}  // namespace funcwave
