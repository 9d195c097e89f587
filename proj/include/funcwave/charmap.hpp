#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "funcwave/errors.hpp"
#include "funcwave/geometry.hpp"

namespace funcwave {

// How many self-compositions iterate() will attempt before giving up; also
// bounds the interval search in locate_interval.
inline constexpr int kIterationCap = 10000;

enum class MapForm { closed_form, numeric };

// Ray advance map T = delta_plus o delta_minus^{-1}: sends the surface point
// where a ray leaves z=0 to the surface point where it next returns.
struct ForwardMap {
    DepthProfile profile;  // profile the map was built from; synthetic maps
                           // (map_from_callables) carry an empty placeholder
    MapForm form = MapForm::numeric;
    std::function<double(double)> eval;
    std::function<double(double)> eval_inverse;  // empty when not invertible
    Interval domain;                             // where eval is defined
    // Endpoint fixed points (b-, b+); entries may be +/-infinity for
    // half-line families, or NaN when the family has no such endpoint.
    std::pair<double, double> fixed_points{std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::quiet_NaN()};
    std::map<std::string, double> params;  // derived constants (p, s+/-, ...)

    double operator()(double x) const;
    double inverse(double y) const;  // throws NotInvertible when absent
    bool has_inverse() const { return static_cast<bool>(eval_inverse); }
};

// delta_{+/-}(x) = x +/- d(x)/nu; sign is +1 or -1.
double delta(const DepthProfile& profile, int sign, double x);

// Closed-form map when the profile kind has one registered (and its
// parameters keep that form valid); numeric inversion of delta_minus
// otherwise.
ForwardMap build_forward_map(const DepthProfile& profile);

// Always the numeric path, regardless of registered closed forms.  The
// inverse branch is populated only when delta_plus is also monotone.
ForwardMap build_numeric_forward_map(const DepthProfile& profile);

// Wrap externally supplied callables as a map (inverse may be empty).
ForwardMap map_from_callables(std::function<double(double)> forward,
                              std::function<double(double)> inverse,
                              Interval domain,
                              MapForm form = MapForm::closed_form);

// T^[k](x); k may be negative when the map has an inverse.  k=0 is the
// identity.  Orbits that leave the domain with steps remaining raise
// OutOfDomain; |k| beyond kIterationCap raises IterationCapExceeded.
double iterate(const ForwardMap& map, double x, int k);

// | d((x+T(x))/2) - nu*(T(x)-x)/2 |: a ray reflecting off the bottom does so
// halfway between departure and arrival, so this vanishes for exact maps.
double reflection_identity_residual(const DepthProfile& profile, const ForwardMap& map,
                                    double x);

}  // namespace funcwave
