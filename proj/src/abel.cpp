#include "funcwave/abel.hpp"

#include <cmath>
#include <memory>

#include "funcwave/pchip.hpp"
#include "funcwave/schroder.hpp"

namespace funcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLocTol = 1e-12;  // pulled toward the lower interval endpoint

std::function<double(double)> guarded(Interval dom, std::function<double(double)> fn) {
    return [dom, fn](double x) {
        if (!dom.contains(x, 1e-12))
            throw OutOfDomain("evaluation outside solution domain");
        return fn(x);
    };
}

// Open interval between the map's endpoint fixed points; falls back to the
// map domain where no such endpoint exists.
Interval open_between_fixed_points(const ForwardMap& map) {
    const double lo =
        std::isnan(map.fixed_points.first) ? map.domain.lo : map.fixed_points.first;
    const double hi =
        std::isnan(map.fixed_points.second) ? map.domain.hi : map.fixed_points.second;
    return Interval::open(lo, hi);
}

void check_seed_increasing(const SeedFunction& seed) {
    double prev = -kInf;
    for (int i = 0; i <= 32; ++i) {
        const double x = seed.interval.lo + i * seed.interval.length() / 32.0;
        const double v = seed.eval(x);
        if (!(v > prev)) throw InvalidParams("seed must be strictly increasing");
        prev = v;
    }
}

SeedFunction restriction_seed(const std::function<double(double)>& a, double x0,
                              double x1, double Q) {
    SeedFunction seed;
    seed.interval = Interval::half_open(x0, x1);
    seed.eval = a;
    seed.declared_jump = Q;
    return seed;
}

}  // namespace

SeedFunction seed_from_callable(Interval interval, std::function<double(double)> eval,
                                std::optional<double> declared_jump) {
    if (!eval) throw InvalidParams("seed callable must be non-empty");
    if (!interval.bounded() || !(interval.lo < interval.hi))
        throw InvalidParams("seed interval must be bounded and nonempty");
    SeedFunction seed;
    seed.interval = Interval::half_open(interval.lo, interval.hi);
    seed.eval = std::move(eval);
    seed.declared_jump = declared_jump;
    return seed;
}

SeedFunction seed_from_table(const std::vector<std::pair<double, double>>& samples,
                             std::optional<double> declared_jump) {
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    double prev = -kInf;
    for (const auto& [x, y] : samples) {
        if (!(y > prev)) throw InvalidParams("seed table values must be strictly increasing");
        prev = y;
        xs.push_back(x);
        ys.push_back(y);
    }
    auto interp = std::make_shared<MonotoneCubic>(std::move(xs), std::move(ys));
    SeedFunction seed;
    seed.interval = Interval::half_open(interp->x_front(), interp->x_back());
    seed.eval = [interp](double x) { return (*interp)(x); };
    seed.declared_jump = declared_jump;
    return seed;
}

int locate_interval(const ForwardMap& map, double x0, double x) {
    if (x >= x0 - kLocTol) {
        double xk = x0;
        for (int k = 0; k <= kIterationCap; ++k) {
            const double xk1 = map.eval(xk);
            if (x < xk1 - kLocTol) return k;
            if (!(xk1 > xk)) throw IterationCapExceeded("interval walk stalled at a fixed point");
            xk = xk1;
        }
    } else {
        double xk = x0;
        for (int k = 1; k <= kIterationCap; ++k) {
            const double xkm = map.inverse(xk);
            if (x >= xkm - kLocTol) return -k;
            if (!(xkm < xk)) throw IterationCapExceeded("interval walk stalled at a fixed point");
            xk = xkm;
        }
    }
    throw IterationCapExceeded("interval index beyond the iteration cap");
}

AbelSolution extend_seed(const ForwardMap& map, const SeedFunction& seed) {
    if (!seed.eval) throw InvalidParams("seed callable must be non-empty");
    const double x0 = seed.interval.lo;
    const double x1 = seed.interval.hi;
    const double tx0 = map.eval(x0);
    if (std::abs(tx0 - x1) > 1e-9 * std::max(1.0, std::abs(tx0)))
        throw SeedJumpMismatch("seed interval must end at the image of its base point");

    // A map with invol^[k] = id forces k*Q = 0 around every cycle, so no
    // increment can survive.
    if (detect_involution(map, 6))
        throw InvolutionObstruction("map is an involution; no solution with nonzero jump");

    const double lo_v = seed.eval(x0);
    const double hi_v = seed.eval(x1);
    if (!std::isfinite(lo_v) || !std::isfinite(hi_v))
        throw SeedJumpMismatch("seed not evaluable across its interval");
    const double jump = hi_v - lo_v;
    if (seed.declared_jump &&
        std::abs(jump - *seed.declared_jump) > 1e-9 * std::max(1.0, std::abs(jump)))
        throw SeedJumpMismatch("seed limit at the interval end disagrees with declared jump");
    const double Q = seed.declared_jump ? *seed.declared_jump : jump;
    if (!(Q > 0.0)) throw SeedJumpMismatch("seed jump must be positive");
    check_seed_increasing(seed);

    AbelSolution sol;
    sol.map = map;
    sol.Q = Q;
    sol.anchor = x0;
    sol.seed = seed;
    sol.strictly_increasing = true;
    sol.provenance = "extended_seed";
    sol.domain = open_between_fixed_points(map);

    const ForwardMap m = map;
    const SeedFunction sd = seed;
    sol.eval = [m, sd, Q](double x) {
        const int k = locate_interval(m, sd.interval.lo, x);
        double u = k == 0 ? x : iterate(m, x, -k);
        u = std::min(std::max(u, sd.interval.lo), sd.interval.hi);
        return sd.eval(u) + k * Q;
    };
    sol.inverse = [m, sd, Q, lo_v](double v) {
        const double kf = std::floor((v - lo_v) / Q);
        if (std::abs(kf) > kIterationCap)
            throw IterationCapExceeded("value maps beyond the iteration cap");
        const int k = static_cast<int>(kf);
        const double target = v - k * Q;
        double lo = sd.interval.lo, hi = sd.interval.hi;
        while (hi - lo > 1e-15 * std::max(1.0, std::abs(lo))) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (sd.eval(mid) < target ? lo : hi) = mid;
        }
        const double u = 0.5 * (lo + hi);
        return k == 0 ? u : iterate(m, u, k);
    };
    return sol;
}

AbelSolution closed_form_abel(ProfileKind kind, std::map<std::string, double> params) {
    double nu = 1.0;
    if (auto it = params.find("nu"); it != params.end()) {
        nu = it->second;
        params.erase(it);
    }
    const double Qp = params.count("Q") ? params.at("Q") : 1.0;

    // Shifted-hyperbola variant: same family name, depth 1/(d0 + r*x).
    if (kind == ProfileKind::dai_hyperbola && params.count("d0")) {
        if (std::abs(nu - 1.0) > 1e-12)
            throw InvalidParams("shifted hyperbola closed form requires nu = 1");
        const double d0 = params.at("d0");
        const double r = params.count("r") ? params.at("r") : 1.0;
        if (!(r > 0.0)) throw InvalidParams("shifted hyperbola needs r > 0");
        if (Qp == 0.0) throw InvalidParams("increment Q must be nonzero");
        const double lo = -d0 / r;

        AbelSolution sol;
        sol.Q = Qp;
        sol.domain = Interval::open(lo, kInf);
        sol.eval = guarded(sol.domain, [d0, r, Qp](double x) {
            return 0.5 * Qp * (d0 * x + 0.5 * r * x * x);
        });
        sol.inverse = [d0, r, Qp](double v) {
            const double disc = d0 * d0 + 4.0 * r * v / Qp;
            if (disc < 0.0) throw OutOfDomain("value below the solution range");
            return (-d0 + std::sqrt(disc)) / r;
        };
        sol.anchor = lo + 1.0;
        sol.strictly_increasing = Qp > 0.0;
        sol.provenance = "dai_shifted_variant";
        sol.map = map_from_abel(sol, Qp);

        DepthProfile vp;
        vp.kind = ProfileKind::dai_hyperbola;
        vp.params = {{"d0", d0}, {"r", r}};
        vp.nu = 1.0;
        vp.domain = Interval::open(lo, kInf);
        vp.depth = [d0, r](double x) { return 1.0 / (d0 + r * x); };
        vp.depth_prime = [d0, r](double x) {
            const double s = d0 + r * x;
            return -r / (s * s);
        };
        vp.window = Interval::closed(lo + 0.5, lo + 3.5);
        sol.map.profile = vp;
        sol.map.domain = sol.domain;

        sol.seed = restriction_seed(sol.eval, sol.anchor, sol.map.eval(sol.anchor), Qp);
        return sol;
    }

    const DepthProfile profile = make_profile(kind, params, nu);
    const double sc = profile.param("scale", 1.0);
    const bool unit_ratio = std::abs(sc / nu - 1.0) <= 1e-12;

    AbelSolution sol;
    sol.map = build_forward_map(profile);
    sol.strictly_increasing = true;

    switch (kind) {
        case ProfileKind::wedge: {
            if (sol.map.form != MapForm::closed_form)
                throw InvalidParams("wedge closed form needs tau*scale < nu");
            const double b = profile.param("b", 0.0);
            const double logp = std::log(sol.map.params.at("p"));
            sol.Q = 1.0;
            sol.domain = Interval::open(-kInf, b);
            sol.eval = guarded(sol.domain,
                               [b, logp](double x) { return std::log(b - x) / logp; });
            sol.inverse = [b, logp](double v) { return b - std::exp(v * logp); };
            sol.anchor = b - 1.0;
            sol.provenance = "wedge_log";
            break;
        }
        case ProfileKind::isosceles_triangle: {
            if (sol.map.form != MapForm::closed_form)
                throw InvalidParams("triangle closed form needs tau*scale < nu");
            const double t = sol.map.params.at("t");
            const double p = sol.map.params.at("p");
            const double logp = std::log(p);
            sol.Q = 2.0 * t;
            sol.domain = Interval::open(-1.0, 1.0);
            sol.eval = guarded(sol.domain, [t, p, logp](double x) {
                if (x >= -t) {
                    const double u = (1.0 - x) / (1.0 + t);
                    long n = std::lround(std::floor(std::log(u) / logp));
                    if (n > kIterationCap)
                        throw IterationCapExceeded("abscissa too close to the right endpoint");
                    auto in_n = [&](long j) {
                        return x >= 1.0 - std::pow(p, double(j)) * (1.0 + t) - kLocTol &&
                               x < 1.0 - std::pow(p, double(j + 1)) * (1.0 + t) - kLocTol;
                    };
                    for (int adj = 0; adj < 4 && !in_n(n); ++adj) n += (u > std::pow(p, double(n))) ? -1 : 1;
                    if (n < 0) n = 0;
                    return std::pow(p, double(-n)) * (x - 1.0) + 1.0 + 2.0 * t * n;
                }
                const double w = (1.0 + x) / (1.0 - t);
                long mIdx = std::lround(std::ceil(std::log(w) / logp));
                if (mIdx > kIterationCap)
                    throw IterationCapExceeded("abscissa too close to the left endpoint");
                auto in_m = [&](long j) {
                    return x >= -1.0 + std::pow(p, double(j)) * (1.0 - t) - kLocTol &&
                           x < -1.0 + std::pow(p, double(j - 1)) * (1.0 - t) - kLocTol;
                };
                for (int adj = 0; adj < 4 && !in_m(mIdx); ++adj)
                    mIdx += (w < std::pow(p, double(mIdx))) ? 1 : -1;
                if (mIdx < 1) mIdx = 1;
                return std::pow(p, double(-mIdx)) * (x + 1.0) - 1.0 - 2.0 * t * mIdx;
            });
            sol.inverse = [t, p](double v) {
                if (v >= -t) {
                    const double nf = std::floor((v / t + 1.0) / 2.0);
                    if (nf > kIterationCap)
                        throw IterationCapExceeded("value maps beyond the iteration cap");
                    return 1.0 + std::pow(p, nf) * (v - 1.0 - 2.0 * t * nf);
                }
                const double mf = std::floor((-v / t + 1.0) / 2.0);
                if (mf > kIterationCap)
                    throw IterationCapExceeded("value maps beyond the iteration cap");
                return -1.0 + std::pow(p, mf) * (v + 1.0 + 2.0 * t * mf);
            };
            sol.anchor = -t;
            sol.provenance = "triangle_piecewise";
            break;
        }
        case ProfileKind::hyperbolic_lens: {
            if (!unit_ratio)
                throw InvalidParams("lens closed form needs scale = nu");
            const double c = profile.params.at("c");
            sol.Q = std::atanh(1.0 / c);
            sol.domain = Interval::open(-1.0, 1.0);
            sol.eval = guarded(sol.domain, [](double x) { return std::atanh(x); });
            sol.inverse = [](double v) { return std::tanh(v); };
            sol.anchor = 0.0;
            sol.provenance = "lens_arctanh";
            break;
        }
        case ProfileKind::hyperbolic_hump: {
            if (!unit_ratio)
                throw InvalidParams("hump closed form needs scale = nu");
            const double tau = profile.params.at("tau");
            sol.Q = 2.0 * std::atanh(tau);
            sol.domain = Interval::all();
            sol.eval = [](double x) { return std::asinh(x); };
            sol.inverse = [](double v) { return std::sinh(v); };
            sol.anchor = 0.0;
            sol.provenance = "hump_arcsinh";
            break;
        }
        case ProfileKind::dai_hyperbola: {
            const double re = sol.map.params.at("r_eff");
            if (Qp == 0.0) throw InvalidParams("increment Q must be nonzero");
            sol.Q = Qp;
            sol.domain = Interval::open(0.0, kInf);
            // The quadratic is even, so it extends across x = 0 to the mirror
            // branch of the profile; evaluation is left unguarded so composed
            // standing waves stay defined on the whole line.  The monotone /
            // invertible contract still refers to the declared domain.
            sol.eval = [re, Qp](double x) { return Qp * x * x / (4.0 * re); };
            sol.inverse = [re, Qp](double v) {
                const double arg = 4.0 * re * v / Qp;
                if (arg < 0.0) throw OutOfDomain("value outside the solution range");
                return std::sqrt(arg);
            };
            sol.anchor = 1.0;
            sol.strictly_increasing = Qp > 0.0;
            sol.provenance = "dai_quadratic";
            // The declared branch is x > 0: keep sweeps there unless the
            // caller asked for an explicit window.
            if (!params.count("window_lo") && !params.count("window_hi")) {
                const double s = std::sqrt(re);
                sol.map.profile.window = Interval::closed(0.3 * s, 2.0 * s);
                sol.map.profile.params["window_lo"] = sol.map.profile.window.lo;
                sol.map.profile.params["window_hi"] = sol.map.profile.window.hi;
            }
            break;
        }
        case ProfileKind::parabolic_segment: {
            if (!unit_ratio)
                throw InvalidParams("parabolic segment closed form needs scale = nu");
            const double c = profile.param("c", 0.25);
            if (!(c > 0.0 && c < 0.5))
                throw InvalidParams("parabolic segment anchor needs c in (0, 1/2)");
            const double L = std::log(1.0 - 2.0 * c);
            const double log2 = std::log(2.0);
            sol.Q = 1.0;
            sol.domain = Interval::open(0.0, 0.5);
            sol.eval = guarded(sol.domain, [L, log2](double x) {
                return std::log(std::log(1.0 - 2.0 * x) / L) / log2;
            });
            sol.inverse = [L](double v) {
                return 0.5 * (1.0 - std::exp(std::exp2(v) * L));
            };
            sol.anchor = c;
            sol.provenance = "parabolic_log_log";
            break;
        }
        default:
            throw UnknownKind("no registered closed-form solution for this kind");
    }

    sol.seed = restriction_seed(sol.eval, sol.anchor, sol.map.eval(sol.anchor), sol.Q);
    return sol;
}

AbelSolution schroder_to_abel(std::function<double(double)> f, double s,
                              const ForwardMap& map) {
    if (!f) throw InvalidParams("callable must be non-empty");
    if (!(s > 0.0)) throw NotPositive("scale factor must be positive");
    if (std::abs(s - 1.0) <= 1e-12) throw ScaleIsOne("scale factor 1 carries no increment");

    Interval w = map.domain;
    if (!w.bounded()) {
        w = map.profile.window;
        if (!w.bounded()) w = Interval::closed(-2.0, 2.0);
        w.lo = std::max(w.lo, map.domain.lo);
        w.hi = std::min(w.hi, map.domain.hi);
    }
    for (int i = 0; i < 100; ++i) {
        const double x = w.lo + (i + 0.5) * w.length() / 100.0;
        const double fx = f(x);
        if (!(fx > 0.0)) throw NotPositive("callable must be positive on the sweep");
        const double r = f(map.eval(x)) - s * fx;
        if (std::abs(r) > 1e-9 * std::max(1.0, std::abs(s * fx)))
            throw NotSchroderSolution("callable fails the scaled equation on the sweep");
    }

    const double logs = std::log(s);
    AbelSolution sol;
    sol.map = map;
    sol.Q = 1.0;
    sol.domain = map.domain;
    sol.eval = [f, logs](double x) { return std::log(f(x)) / logs; };
    sol.anchor = w.midpoint();
    sol.provenance = "schroder_log";

    bool increasing = true;
    double prev = -kInf;
    for (int i = 0; i < 100; ++i) {
        const double v = sol.eval(w.lo + (i + 0.5) * w.length() / 100.0);
        if (!(v > prev)) increasing = false;
        prev = v;
    }
    sol.strictly_increasing = increasing;
    sol.seed = restriction_seed(sol.eval, sol.anchor, map.eval(sol.anchor), 1.0);
    return sol;
}

ForwardMap map_from_abel(const AbelSolution& a, double Q) {
    if (!a.has_inverse()) throw NotInvertible("solution has no inverse to build a map from");
    const auto eval = a.eval;
    const auto inv = a.inverse;
    ForwardMap map;
    map.form = MapForm::closed_form;
    map.domain = a.domain;
    map.eval = [eval, inv, Q](double x) { return inv(eval(x) + Q); };
    map.eval_inverse = [eval, inv, Q](double x) { return inv(eval(x) - Q); };
    return map;
}

AbelSolution rescale_to_unit(const AbelSolution& a) {
    if (a.Q == 0.0) throw InvalidParams("cannot rescale a zero increment");
    const double Q = a.Q;
    AbelSolution out = a;
    out.Q = 1.0;
    const auto eval = a.eval;
    out.eval = [eval, Q](double x) { return eval(x) / Q; };
    if (a.inverse) {
        const auto inv = a.inverse;
        out.inverse = [inv, Q](double v) { return inv(v * Q); };
    }
    if (a.seed) {
        const auto sev = a.seed->eval;
        out.seed->eval = [sev, Q](double x) { return sev(x) / Q; };
        if (a.seed->declared_jump) out.seed->declared_jump = *a.seed->declared_jump / Q;
    }
    out.provenance = a.provenance + "+rescaled";
    return out;
}

}  // namespace funcwave
