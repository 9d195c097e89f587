#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "funcwave/abel.hpp"
#include "funcwave/wavefield.hpp"

namespace funcwave {

// {"kind": string, "params": {name: number}, "nu": number}; custom profiles
// carry "samples": [[x, d], ...] instead of params.
DepthProfile profile_from_json(const nlohmann::json& j);

// {"kind": string, "period": number, "amplitude": number, "phase": number}
// or {"kind": "tabulated", "samples": [[x, y], ...], "period": number}.
PeriodicFunction periodic_from_json(const nlohmann::json& j);

// Everything needed to evaluate, sweep, and render one construction.
struct Construction {
    std::string name;
    DepthProfile profile;
    ForwardMap map;
    std::optional<AbelSolution> abel;
    WaveProfileFunction f;
    double nu = 1.0;
    double flux = 0.0;
};

// config: {"name": str, "profile": {...}, "solution": {...}}.  Solution
// types: "periodic_composition" (optional "Q", "perturb_linear"),
// "abel_direct" (optional "Q"), "barcilon" ("m", "k", "periodic"),
// "involution" ("family": corner_reciprocal | quadrant_circle | pl,
// "combine": sum | quartic_sum | min).
Construction build_construction(const nlohmann::json& config);

nlohmann::json grid_to_json(const FieldGrid& grid);

}  // namespace funcwave
