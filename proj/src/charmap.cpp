#include "funcwave/charmap.hpp"

#include <cmath>

namespace funcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Probe window for monotonicity prechecks: the profile's finite sampling
// window clipped to the domain.
Interval probe_window(const DepthProfile& profile) {
    Interval w = profile.window;
    if (!w.bounded()) w = Interval::closed(-2.0, 2.0);
    w.lo = std::max(w.lo, profile.domain.lo);
    w.hi = std::min(w.hi, profile.domain.hi);
    return w;
}

bool delta_strictly_increasing(const DepthProfile& profile, int sign) {
    const Interval w = probe_window(profile);
    double prev = -kInf;
    for (int i = 0; i < 64; ++i) {
        const double x = w.lo + (i + 0.5) * (w.hi - w.lo) / 64.0;
        const double g = delta(profile, sign, x);
        if (!(g > prev)) return false;
        prev = g;
    }
    return true;
}

// Solve delta_sign(x) = target for strictly increasing delta_sign: bracket,
// bisect to width 1e-8, then Newton-polish to residual 1e-12 (bracket-
// safeguarded).
double invert_delta(const DepthProfile& profile, int sign, double target) {
    const Interval& dom = profile.domain;
    auto g = [&](double x) { return delta(profile, sign, x); };

    double lo, hi;
    if (sign < 0) {
        // delta_minus(x) <= x, so the preimage sits at or above target.
        if (std::isfinite(dom.lo)) {
            lo = dom.lo;
            if (g(lo) > target + 1e-12) throw OutOfDomain("value below range of delta_minus");
        } else {
            if (target > dom.hi) throw OutOfDomain("value above range of delta_minus");
            lo = target;
        }
        if (std::isfinite(dom.hi)) {
            hi = dom.hi;
            if (g(hi) < target - 1e-12) throw OutOfDomain("value above range of delta_minus");
        } else {
            hi = std::max(lo, target) + 1.0;
            int tries = 0;
            while (g(hi) < target) {
                hi += (hi - lo + 1.0);
                if (++tries > 200) throw OutOfDomain("bracket expansion failed for delta_minus");
            }
        }
    } else {
        // delta_plus(x) >= x, so the preimage sits at or below target.
        if (std::isfinite(dom.hi)) {
            hi = dom.hi;
            if (g(hi) < target - 1e-12) throw OutOfDomain("value above range of delta_plus");
        } else {
            if (target < dom.lo) throw OutOfDomain("value below range of delta_plus");
            hi = target;
        }
        if (std::isfinite(dom.lo)) {
            lo = dom.lo;
            if (g(lo) > target + 1e-12) throw OutOfDomain("value below range of delta_plus");
        } else {
            lo = std::min(hi, target) - 1.0;
            int tries = 0;
            while (g(lo) > target) {
                lo -= (hi - lo + 1.0);
                if (++tries > 200) throw OutOfDomain("bracket expansion failed for delta_plus");
            }
        }
    }

    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < target)
            lo = mid;
        else
            hi = mid;
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double r = g(x) - target;
        if (std::abs(r) <= 1e-12) return x;
        if (r > 0.0)
            hi = x;
        else
            lo = x;
        double gp = kNaN;
        try {
            gp = 1.0 + sign * profile.d_prime(x) / profile.nu;
        } catch (const NonDifferentiable&) {
            // a kink iterate just means no Newton hint this round
        }
        double next = (std::isfinite(gp) && gp > 0.0) ? x - r / gp : kNaN;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) break;  // bracket exhausted at machine precision
        x = next;
    }
    return x;
}

void note_finite_fixed_points(ForwardMap& map) {
    const DepthProfile& p = map.profile;
    auto endpoint = [&](double e) {
        if (!std::isfinite(e)) return e;
        return std::abs(p.depth(e)) < 1e-9 ? e : kNaN;
    };
    map.fixed_points = {endpoint(p.domain.lo), endpoint(p.domain.hi)};
}

}  // namespace

double ForwardMap::operator()(double x) const { return eval(x); }

double ForwardMap::inverse(double y) const {
    if (!eval_inverse) throw NotInvertible("map has no inverse branch");
    return eval_inverse(y);
}

double delta(const DepthProfile& profile, int sign, double x) {
    if (sign != 1 && sign != -1) throw InvalidParams("delta sign must be +1 or -1");
    return x + sign * profile.d(x) / profile.nu;
}

ForwardMap build_numeric_forward_map(const DepthProfile& profile) {
    if (!delta_strictly_increasing(profile, -1))
        throw NotInvertible("delta_minus is not strictly increasing on the probe window");

    ForwardMap map;
    map.profile = profile;
    map.form = MapForm::numeric;
    map.domain = profile.domain;
    const DepthProfile p = profile;  // immutable copy captured by the closures
    map.eval = [p](double y) { return delta(p, +1, invert_delta(p, -1, y)); };
    if (delta_strictly_increasing(profile, +1))
        map.eval_inverse = [p](double y) { return delta(p, -1, invert_delta(p, +1, y)); };
    note_finite_fixed_points(map);
    return map;
}

ForwardMap build_forward_map(const DepthProfile& profile) {
    const double sc = profile.param("scale", 1.0);
    const double nu = profile.nu;
    const bool unit_ratio = std::abs(sc / nu - 1.0) <= 1e-12;

    ForwardMap map;
    map.profile = profile;
    map.form = MapForm::closed_form;
    map.domain = profile.domain;

    switch (profile.kind) {
        case ProfileKind::wedge: {
            const double t = profile.params.at("tau") * sc / nu;
            if (!(t < 1.0)) break;  // critical or supercritical: numeric path decides
            const double b = profile.param("b", 0.0);
            const double p = (1.0 - t) / (1.0 + t);
            const double s = b * 2.0 * t / (1.0 + t);
            map.eval = [p, s](double x) { return p * x + s; };
            map.eval_inverse = [p, s](double y) { return (y - s) / p; };
            map.fixed_points = {-kInf, b};
            map.params = {{"p", p}, {"s", s}, {"t", t}};
            return map;
        }
        case ProfileKind::isosceles_triangle: {
            const double t = profile.params.at("tau") * sc / nu;
            if (!(t < 1.0)) break;
            const double p = (1.0 - t) / (1.0 + t);
            const double sp = 2.0 * t / (1.0 + t);
            const double sm = 2.0 * t / (1.0 - t);
            map.eval = [p, sp, sm, t](double x) {
                return x <= -t ? x / p + sm : p * x + sp;
            };
            map.eval_inverse = [p, sp, sm, t](double y) {
                return y <= t ? p * y - sp : y / p - sm;
            };
            map.fixed_points = {-1.0, 1.0};
            map.params = {{"p", p}, {"s_plus", sp}, {"s_minus", sm}, {"t", t}};
            return map;
        }
        case ProfileKind::hyperbolic_lens: {
            if (!unit_ratio) break;
            const double c = profile.params.at("c");
            map.eval = [c](double x) { return (1.0 + c * x) / (c + x); };
            map.eval_inverse = [c](double y) { return (c * y - 1.0) / (c - y); };
            map.fixed_points = {-1.0, 1.0};
            map.params = {{"c", c}};
            return map;
        }
        case ProfileKind::semi_ellipse: {
            const double ne = nu / sc;
            const double ne2 = ne * ne;
            map.eval = [ne2](double x) {
                return (2.0 * std::sqrt(std::max(0.0, 1.0 + ne2 - ne2 * x * x)) +
                        (ne2 - 1.0) * x) /
                       (ne2 + 1.0);
            };
            // The map folds; this inverse returns the left-branch preimage.
            map.eval_inverse = [ne2](double y) {
                return ((ne2 - 1.0) * y -
                        2.0 * std::sqrt(std::max(0.0, 1.0 + ne2 - ne2 * y * y))) /
                       (ne2 + 1.0);
            };
            map.fixed_points = {-1.0, 1.0};
            map.params = {{"nu_eff", ne}};
            return map;
        }
        case ProfileKind::hyperbolic_hump: {
            if (!unit_ratio) break;
            const double tau = profile.params.at("tau");
            const double den = 1.0 - tau * tau;
            map.eval = [tau, den](double x) {
                return ((1.0 + tau * tau) * x + 2.0 * tau * std::sqrt(1.0 + x * x)) / den;
            };
            map.eval_inverse = [tau, den](double y) {
                return ((1.0 + tau * tau) * y - 2.0 * tau * std::sqrt(1.0 + y * y)) / den;
            };
            map.fixed_points = {-kInf, kInf};
            map.params = {{"tau", tau}};
            return map;
        }
        case ProfileKind::dai_hyperbola: {
            const double re = profile.params.at("r") * sc / nu;
            map.eval = [re](double x) { return std::sqrt(4.0 * re + x * x); };
            // Folding map: the inverse returns the rightward-orbit preimage.
            map.eval_inverse = [re](double y) {
                const double arg = y * y - 4.0 * re;
                if (arg < 0.0) throw OutOfDomain("value below range of the advance map");
                return std::sqrt(arg);
            };
            map.fixed_points = {kNaN, kInf};
            map.params = {{"r_eff", re}};
            return map;
        }
        case ProfileKind::parabolic_segment: {
            if (!unit_ratio) break;
            map.eval = [](double x) { return 2.0 * x * (1.0 - x); };
            map.eval_inverse = [](double y) {
                return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 2.0 * y)));
            };
            map.fixed_points = {0.0, 0.5};
            return map;
        }
        default:
            break;
    }
    return build_numeric_forward_map(profile);
}

ForwardMap map_from_callables(std::function<double(double)> forward,
                              std::function<double(double)> inverse, Interval domain,
                              MapForm form) {
    if (!forward) throw InvalidParams("forward callable must be non-empty");
    ForwardMap map;
    map.form = form;
    map.eval = std::move(forward);
    map.eval_inverse = std::move(inverse);
    map.domain = domain;
    return map;
}

double iterate(const ForwardMap& map, double x, int k) {
    if (std::abs(k) > kIterationCap) throw IterationCapExceeded("iterate count beyond cap");
    if (!map.domain.contains(x, 1e-12)) throw OutOfDomain("iterate start outside map domain");
    if (k == 0) return x;
    const int steps = std::abs(k);
    for (int i = 0; i < steps; ++i) {
        x = k > 0 ? map.eval(x) : map.inverse(x);
        if (i + 1 < steps && !map.domain.contains(x, 1e-12))
            throw OutOfDomain("orbit left the map domain");
    }
    return x;
}

double reflection_identity_residual(const DepthProfile& profile, const ForwardMap& map,
                                    double x) {
    const double tx = map.eval(x);
    const double mid = 0.5 * (x + tx);
    return std::abs(profile.d(mid) - profile.nu * (tx - x) / 2.0);
}

}  // namespace funcwave
