#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "funcwave/charmap.hpp"

namespace funcwave {

// Strictly increasing choice of the solution on one fundamental interval
// [x0, T(x0)); its values elsewhere follow by the extension algorithm.
struct SeedFunction {
    Interval interval;  // lo closed, hi open
    std::function<double(double)> eval;
    // Jump Q = eval(hi) - eval(lo).  When declared, extend_seed checks the
    // callable against it; floating error in eval(hi) then cannot drift the
    // increment across intervals.
    std::optional<double> declared_jump;
};

SeedFunction seed_from_callable(Interval interval, std::function<double(double)> eval,
                                std::optional<double> declared_jump = std::nullopt);
// Tabulated seed: strictly increasing (x, y) pairs spanning the fundamental
// interval; evaluated by monotone cubic interpolation.
SeedFunction seed_from_table(const std::vector<std::pair<double, double>>& samples,
                             std::optional<double> declared_jump = std::nullopt);

// Solution a of a(T(x)) = a(x) + Q with Q != 0.
struct AbelSolution {
    ForwardMap map;
    double Q = 0.0;
    std::function<double(double)> eval;
    std::function<double(double)> inverse;  // empty when unavailable
    Interval domain;
    double anchor = 0.0;  // base point x0 of the fundamental interval
    std::optional<SeedFunction> seed;  // closed forms carry their restriction
    bool strictly_increasing = false;
    std::string provenance;  // which construction produced this solution

    double operator()(double x) const { return eval(x); }
    bool has_inverse() const { return static_cast<bool>(inverse); }
};

// Fundamental-interval extension: a(x) = seed(T^[-k](x)) + k*Q on the k-th
// iterate of the seed interval.  Maps that are involutions (any finite order)
// admit no solution with Q != 0 and are rejected.
AbelSolution extend_seed(const ForwardMap& map, const SeedFunction& seed);

// Registered closed forms per profile kind.  Recognized optional parameters
// beyond the profile's own: "nu" (default 1), "Q" where the family leaves the
// increment free, "c" (parabolic-segment anchor), "d0" (selects the shifted
// hyperbola variant, nu=1 only).
AbelSolution closed_form_abel(ProfileKind kind, std::map<std::string, double> params = {});

// a = log(f)/log(s) for f solving the scaled equation f(T(x)) = s*f(x).
AbelSolution schroder_to_abel(std::function<double(double)> f, double s,
                              const ForwardMap& map);

// Index k of the interval I_k = [T^[k](x0), T^[k+1](x0)) containing x, found
// by walking the orbit of x0.
int locate_interval(const ForwardMap& map, double x0, double x);

// T(x) = a^{-1}(a(x) + Q); requires an invertible solution.
ForwardMap map_from_abel(const AbelSolution& a, double Q);

// Same solution rescaled so the increment is exactly 1.
AbelSolution rescale_to_unit(const AbelSolution& a);

}  // namespace funcwave
