#include "funcwave/geometry.hpp"

#include <cmath>
#include <memory>

#include "funcwave/pchip.hpp"

namespace funcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_param(const std::map<std::string, double>& params, const char* name,
                     const char* kind) {
    auto it = params.find(name);
    if (it == params.end())
        throw InvalidParams(std::string(kind) + " profile needs parameter '" + name + "'");
    return it->second;
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

const char* to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::wedge: return "wedge";
        case ProfileKind::isosceles_triangle: return "isosceles_triangle";
        case ProfileKind::semi_ellipse: return "semi_ellipse";
        case ProfileKind::hyperbolic_lens: return "hyperbolic_lens";
        case ProfileKind::hyperbolic_hump: return "hyperbolic_hump";
        case ProfileKind::dai_hyperbola: return "dai_hyperbola";
        case ProfileKind::parabolic_segment: return "parabolic_segment";
        case ProfileKind::involution_derived: return "involution_derived";
        case ProfileKind::custom: return "custom";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    for (ProfileKind kind : catalog_kinds())
        if (name == to_string(kind)) return kind;
    throw UnknownKind("unknown profile kind '" + name + "'");
}

const std::vector<ProfileKind>& catalog_kinds() {
    static const std::vector<ProfileKind> kinds = {
        ProfileKind::wedge,
        ProfileKind::isosceles_triangle,
        ProfileKind::semi_ellipse,
        ProfileKind::hyperbolic_lens,
        ProfileKind::hyperbolic_hump,
        ProfileKind::dai_hyperbola,
        ProfileKind::parabolic_segment,
        ProfileKind::involution_derived,
        ProfileKind::custom,
    };
    return kinds;
}

double DepthProfile::d(double x) const {
    if (!domain.contains(x, 1e-12))
        throw OutOfDomain("abscissa outside profile domain");
    return depth(x);
}

double DepthProfile::d_prime(double x) const {
    if (!domain.contains(x, 1e-12))
        throw OutOfDomain("abscissa outside profile domain");
    for (double kink : kinks)
        if (x == kink)
            throw NonDifferentiable("depth profile has a kink at the requested abscissa");
    return depth_prime(x);
}

double DepthProfile::param(const std::string& name, double fallback) const {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

bool DepthProfile::has_param(const std::string& name) const {
    return params.count(name) != 0;
}

DepthProfile make_profile(ProfileKind kind, std::map<std::string, double> params, double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw InvalidParams("nu must be positive and finite");
    const double sc = params.count("scale") ? params.at("scale") : 1.0;
    if (!(sc > 0.0)) throw InvalidParams("scale must be positive");

    DepthProfile p;
    p.kind = kind;
    p.nu = nu;
    p.params = std::move(params);

    switch (kind) {
        case ProfileKind::wedge: {
            const double tau = require_param(p.params, "tau", "wedge");
            if (!(tau > 0.0)) throw InvalidParams("wedge needs tau > 0");
            const double b = p.param("b", 0.0);
            p.domain = {-kInf, b, false, true};
            p.depth = [sc, tau, b](double x) { return sc * tau * (b - x); };
            p.depth_prime = [sc, tau](double) { return -sc * tau; };
            p.window = Interval::closed(p.param("window_lo", b - 3.0),
                                        p.param("window_hi", b));
            break;
        }
        case ProfileKind::isosceles_triangle: {
            const double tau = require_param(p.params, "tau", "isosceles_triangle");
            if (!(tau > 0.0)) throw InvalidParams("isosceles_triangle needs tau > 0");
            p.domain = Interval::closed(-1.0, 1.0);
            p.depth = [sc, tau](double x) { return sc * tau * (1.0 - std::abs(x)); };
            p.depth_prime = [sc, tau](double x) { return -sc * tau * sgn(x); };
            p.kinks = {0.0};
            p.window = p.domain;
            break;
        }
        case ProfileKind::semi_ellipse: {
            p.domain = Interval::closed(-1.0, 1.0);
            p.depth = [sc](double x) {
                return sc * std::sqrt(std::max(0.0, 1.0 - x * x));
            };
            p.depth_prime = [sc](double x) {
                const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
                if (s == 0.0) return x > 0.0 ? -kInf : kInf;
                return -sc * x / s;
            };
            p.window = p.domain;
            break;
        }
        case ProfileKind::hyperbolic_lens: {
            const double c = require_param(p.params, "c", "hyperbolic_lens");
            if (!(c > 1.0)) throw InvalidParams("hyperbolic_lens needs c > 1");
            p.domain = Interval::closed(-1.0, 1.0);
            p.depth = [sc, c](double x) {
                return sc * (c - std::sqrt(c * c - 1.0 + x * x));
            };
            p.depth_prime = [sc, c](double x) {
                return -sc * x / std::sqrt(c * c - 1.0 + x * x);
            };
            p.window = p.domain;
            break;
        }
        case ProfileKind::hyperbolic_hump: {
            const double tau = require_param(p.params, "tau", "hyperbolic_hump");
            if (!(tau > 0.0 && tau < 1.0))
                throw InvalidParams("hyperbolic_hump needs tau in (0, 1)");
            const double a2 = 1.0 / (1.0 - tau * tau);
            p.domain = Interval::all();
            p.depth = [sc, tau, a2](double x) { return sc * tau * std::sqrt(a2 + x * x); };
            p.depth_prime = [sc, tau, a2](double x) {
                return sc * tau * x / std::sqrt(a2 + x * x);
            };
            p.window = Interval::closed(p.param("window_lo", -3.0),
                                        p.param("window_hi", 3.0));
            break;
        }
        case ProfileKind::dai_hyperbola: {
            const double r = require_param(p.params, "r", "dai_hyperbola");
            if (!(r > 0.0)) throw InvalidParams("dai_hyperbola needs r > 0");
            p.domain = Interval::all();
            p.depth = [sc, r](double x) {
                return x == 0.0 ? kInf : sc * r / std::abs(x);
            };
            p.depth_prime = [sc, r](double x) {
                return x == 0.0 ? -kInf : -sgn(x) * sc * r / (x * x);
            };
            p.kinks = {0.0};
            p.window = Interval::closed(p.param("window_lo", -2.0),
                                        p.param("window_hi", 2.0));
            break;
        }
        case ProfileKind::parabolic_segment: {
            // Bottom arc consistent with the forward map 2x(1-x) on [0, 1/2];
            // the reflection identity pins it down as x - 3/4 + sqrt(9-16x)/4.
            p.domain = Interval::closed(0.0, 0.5);
            p.depth = [sc](double x) {
                return sc * (x - 0.75 + 0.25 * std::sqrt(9.0 - 16.0 * x));
            };
            p.depth_prime = [sc](double x) {
                return sc * (1.0 - 2.0 / std::sqrt(9.0 - 16.0 * x));
            };
            p.window = p.domain;
            break;
        }
        case ProfileKind::involution_derived: {
            // Family selected by which parameters are present:
            //   m (>1)  : piecewise-linear corner wedge rising from x0,
            //   b (>0)  : circular/elliptic arc sqrt(b^2 - x^2),
            //   neither : hyperbolic corner sqrt(x^2 - 1) on x <= -1.
            if (p.has_param("m")) {
                const double m = p.params.at("m");
                if (!(m > 1.0)) throw InvalidParams("involution_derived needs m > 1");
                const double x0 = p.param("x0", 0.0);
                const double slope = sc * (m + 1.0) / (m - 1.0);
                p.domain = {x0, kInf, true, false};
                p.depth = [slope, x0](double x) { return slope * (x - x0); };
                p.depth_prime = [slope](double) { return slope; };
                p.window = Interval::closed(p.param("window_lo", x0),
                                            p.param("window_hi", x0 + 2.0));
            } else if (p.has_param("b")) {
                const double b = p.params.at("b");
                if (!(b > 0.0)) throw InvalidParams("involution_derived needs b > 0");
                p.domain = Interval::closed(-b, b);
                p.depth = [sc, b](double x) {
                    return sc * std::sqrt(std::max(0.0, b * b - x * x));
                };
                p.depth_prime = [sc, b](double x) {
                    const double s = std::sqrt(std::max(0.0, b * b - x * x));
                    if (s == 0.0) return x > 0.0 ? -kInf : kInf;
                    return -sc * x / s;
                };
                p.window = p.domain;
            } else {
                p.domain = {-kInf, -1.0, false, true};
                p.depth = [sc](double x) {
                    return sc * std::sqrt(std::max(0.0, x * x - 1.0));
                };
                p.depth_prime = [sc](double x) {
                    const double s = std::sqrt(std::max(0.0, x * x - 1.0));
                    if (s == 0.0) return -kInf;
                    return sc * x / s;
                };
                p.window = Interval::closed(p.param("window_lo", -3.0),
                                            p.param("window_hi", -1.0));
            }
            break;
        }
        case ProfileKind::custom:
            throw InvalidParams("custom profiles are built from samples; use make_custom_profile");
    }

    // Remember the effective window bounds so serialized profiles round-trip.
    if (p.window.bounded()) {
        p.params["window_lo"] = p.window.lo;
        p.params["window_hi"] = p.window.hi;
    }
    return p;
}

DepthProfile make_custom_profile(const std::vector<std::pair<double, double>>& samples,
                                 double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw InvalidParams("nu must be positive and finite");
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const auto& [x, y] : samples) {
        if (y < 0.0) throw InvalidParams("depth samples must be non-negative");
        xs.push_back(x);
        ys.push_back(y);
    }
    auto interp = std::make_shared<MonotoneCubic>(std::move(xs), std::move(ys));

    DepthProfile p;
    p.kind = ProfileKind::custom;
    p.nu = nu;
    p.domain = Interval::closed(interp->x_front(), interp->x_back());
    p.depth = [interp](double x) { return (*interp)(x); };
    p.depth_prime = [interp](double x) { return interp->derivative(x); };
    p.window = p.domain;
    return p;
}

Criticality classify(const DepthProfile& profile, double x, double tol) {
    if (!(x > profile.domain.lo && x < profile.domain.hi))
        throw OutOfDomain("classification needs an interior abscissa");
    for (double kink : profile.kinks)
        if (std::abs(x - kink) <= 1e-12)
            throw NonDifferentiable("depth profile has a kink at the requested abscissa");
    const double slope = std::abs(profile.depth_prime(x));
    if (slope < profile.nu - tol) return Criticality::subcritical;
    if (slope > profile.nu + tol) return Criticality::supercritical;
    return Criticality::critical_within_tolerance;
}

Criticality classify_profile(const DepthProfile& profile, int samples, double tol) {
    if (samples < 2) throw InvalidParams("classification sweep needs at least 2 samples");
    Interval w = profile.window;
    if (!w.bounded()) w = Interval::closed(-2.0, 2.0);
    w.lo = std::max(w.lo, profile.domain.lo);
    w.hi = std::min(w.hi, profile.domain.hi);

    Criticality worst = Criticality::subcritical;
    auto rank = [](Criticality c) {
        switch (c) {
            case Criticality::subcritical: return 0;
            case Criticality::critical_within_tolerance: return 1;
            case Criticality::supercritical: return 2;
        }
        return 0;
    };
    for (int i = 0; i < samples; ++i) {
        const double x = w.lo + (i + 0.5) * (w.hi - w.lo) / samples;
        try {
            const Criticality c = classify(profile, x, tol);
            if (rank(c) > rank(worst)) worst = c;
        } catch (const NonDifferentiable&) {
            // kink abscissae are reported via profile.kinks, not classified
        }
    }
    return worst;
}

DepthProfile normalize_nu(const DepthProfile& profile) {
    if (profile.nu == 1.0) return profile;
    const double nu = profile.nu;

    DepthProfile p = profile;
    p.nu = 1.0;
    // Fold the rescale into the parameter set where the family is closed
    // under vertical scaling; otherwise track it in `scale`.
    switch (profile.kind) {
        case ProfileKind::wedge:
        case ProfileKind::isosceles_triangle:
            p.params["tau"] = profile.params.at("tau") / nu;
            break;
        case ProfileKind::dai_hyperbola:
            p.params["r"] = profile.params.at("r") / nu;
            break;
        default:
            // Rescaling tau would also move the horizontal constant for the
            // hump family, so everything else folds into `scale`.
            p.params["scale"] = profile.param("scale", 1.0) / nu;
            break;
    }
    if (profile.kind == ProfileKind::custom) {
        auto base_d = profile.depth;
        auto base_dp = profile.depth_prime;
        p.depth = [base_d, nu](double x) { return base_d(x) / nu; };
        p.depth_prime = [base_dp, nu](double x) { return base_dp(x) / nu; };
        return p;
    }
    // Catalog families rebuild cleanly from the refolded parameters.
    DepthProfile fresh = make_profile(p.kind, p.params, 1.0);
    fresh.window = profile.window;
    return fresh;
}

}  // namespace funcwave
