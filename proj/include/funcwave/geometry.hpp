#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "funcwave/errors.hpp"

namespace funcwave {

// Closed/open interval over the extended reals.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(double a, double b) { return {a, b, false, false}; }
    static Interval closed(double a, double b) { return {a, b, true, true}; }
    // [a, b): the shape of a fundamental interval.
    static Interval half_open(double a, double b) { return {a, b, true, false}; }
    static Interval all() { return {}; }

    // Closed endpoints get a tolerance cushion; open endpoints stay strict so
    // that singular endpoint values are never touched.
    bool contains(double x, double tol = 0.0) const {
        if (lo_closed ? x < lo - tol : !(x > lo)) return false;
        if (hi_closed ? x > hi + tol : !(x < hi)) return false;
        return true;
    }
    bool bounded() const {
        return std::isfinite(lo) && std::isfinite(hi);
    }
    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

enum class ProfileKind {
    wedge,
    isosceles_triangle,
    semi_ellipse,
    hyperbolic_lens,
    hyperbolic_hump,
    dai_hyperbola,
    parabolic_segment,
    involution_derived,
    custom,
};

const char* to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);  // UnknownKind

// Bottom profile z = -d(x).  d and its derivative are immutable callables;
// params keeps the named constants the profile was built from, kinks the
// abscissae where d' jumps (classification refuses to evaluate there).
struct DepthProfile {
    ProfileKind kind = ProfileKind::custom;
    std::map<std::string, double> params;
    Interval domain;
    double nu = 1.0;
    std::function<double(double)> depth;
    std::function<double(double)> depth_prime;
    std::vector<double> kinks;
    // Finite window used for sweeps/grids when the domain itself is infinite.
    Interval window;

    double d(double x) const;        // OutOfDomain outside `domain`
    double d_prime(double x) const;  // OutOfDomain; NonDifferentiable on a kink
    double param(const std::string& name, double fallback) const;
    bool has_param(const std::string& name) const;
};

enum class Criticality { subcritical, supercritical, critical_within_tolerance };

inline constexpr double kCriticalityTol = 1e-9;

DepthProfile make_profile(ProfileKind kind,
                          std::map<std::string, double> params = {},
                          double nu = 1.0);
DepthProfile make_custom_profile(const std::vector<std::pair<double, double>>& samples,
                                 double nu = 1.0);

// Pointwise slope class at an interior, non-kink abscissa.
Criticality classify(const DepthProfile& profile, double x, double tol = kCriticalityTol);
// Worst class over an interior sweep (kinks skipped).
Criticality classify_profile(const DepthProfile& profile, int samples = 200,
                             double tol = kCriticalityTol);

// Rescale (d, nu) -> (d/nu, 1).  Characteristic slopes, and therefore the
// forward map, are unchanged; catalog parameters are refolded where the family
// is closed under scaling and a `scale` parameter keeps the rest exact.
DepthProfile normalize_nu(const DepthProfile& profile);

const std::vector<ProfileKind>& catalog_kinds();

}  // namespace funcwave
