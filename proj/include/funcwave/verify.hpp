#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "funcwave/catalog.hpp"

namespace funcwave {

enum class Placement { uniform, chebyshev_nodes, random_seeded };

const char* to_string(Placement placement);
Placement placement_from_string(const std::string& name);

// Where a residual sweep evaluates: n abscissae in `interval`, either at cell
// midpoints, at Chebyshev nodes, or uniform random draws from a seeded
// generator (identical seeds give identical points on every platform).
struct SweepSpec {
    Interval interval;
    int n = 100;
    Placement placement = Placement::uniform;
    std::uint64_t seed = 0;

    std::vector<double> points() const;
};

SweepSpec sweep_from_json(const nlohmann::json& j);

// |f(x + d(x)/nu) - f(x - d(x)/nu) - Q| over the sweep: the bottom-boundary
// increment the depth profile imposes on a solution with flux Q.
ResidualReport fed_residual_sweep(const WaveProfileFunction& f, const DepthProfile& profile,
                                  double Q, const SweepSpec& spec);

// |g(T(x)) - g(x) - Q| over the sweep: the advance-map increment.
ResidualReport fet_residual_sweep(const std::function<double(double)>& g,
                                  const ForwardMap& map, double Q, const SweepSpec& spec);

struct SuiteEntry {
    std::string name;
    ResidualReport report;
    double tolerance = 1e-9;
    bool passed = false;
    std::string detail;  // truncation notes, error text, branch mismatches
};

struct SuiteReport {
    std::vector<SuiteEntry> entries;
    bool all_passed = true;
};

// One-sided limits of an extended solution at each fundamental-interval
// boundary x_k, |k| <= k_range, compared structurally through the seed (the
// extension's slope grows geometrically in k, so naive sampling against a
// fixed offset measures growth, not the jump).  Relative offsets of 1e-7
// additionally confirm interval bookkeeping on each side wherever the
// neighbouring intervals are wide enough to resolve them.
SuiteEntry continuity_check(const AbelSolution& a, int k_range, double tolerance = 1e-6);

// config: {"cases": [{"name", "profile", "solution", "sweep", "tolerance"}]}.
// Each case is built with build_construction and swept: advance-map and
// bottom-boundary residuals, the reflection identity, odd parity of the
// field, and (when the solution extends a seed) boundary continuity.  Results
// are collected, never thrown; the report is ordered by case name.
SuiteReport run_suite(const nlohmann::json& config);

// The bundled catalog: every closed form plus mode-number closures and the
// corner flow, with the tolerances the library promises.
nlohmann::json default_suite_config();

nlohmann::json report_to_json(const SuiteReport& report);

}  // namespace funcwave
