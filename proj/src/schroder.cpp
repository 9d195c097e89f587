#include "funcwave/schroder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace funcwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double wrap_angle(double th) {  // into [-pi, pi)
    th = std::fmod(th + kPi, 2.0 * kPi);
    if (th < 0.0) th += 2.0 * kPi;
    return th - kPi;
}

Interval finite_probe_window(const ForwardMap& map) {
    if (map.domain.bounded()) return map.domain;
    Interval w = map.profile.window;
    if (!w.bounded()) w = Interval::closed(-2.0, 2.0);
    w.lo = std::max(w.lo, map.domain.lo);
    w.hi = std::min(w.hi, map.domain.hi);
    return w;
}

// n such that whole = n * part, or 0 when no positive integer fits.
int period_multiple(double whole, double part) {
    if (!(part > 0.0) || !std::isfinite(part)) return 0;
    const int n = static_cast<int>(std::lround(whole / part));
    if (n < 1) return 0;
    if (std::abs(whole - n * part) > 1e-9 * std::max(1.0, std::abs(whole))) return 0;
    return n;
}

double uniform_probe(std::mt19937_64& gen, const Interval& w) {
    const double u = (gen() >> 11) * 0x1.0p-53;
    return w.lo + (w.hi - w.lo) * u;
}

}  // namespace

const char* to_string(PeriodicKind kind) {
    switch (kind) {
        case PeriodicKind::cosine: return "cosine";
        case PeriodicKind::sine: return "sine";
        case PeriodicKind::triangle_wave: return "triangle_wave";
        case PeriodicKind::tabulated: return "tabulated";
    }
    return "?";
}

PeriodicKind periodic_kind_from_string(const std::string& name) {
    for (PeriodicKind k : {PeriodicKind::cosine, PeriodicKind::sine,
                           PeriodicKind::triangle_wave, PeriodicKind::tabulated})
        if (name == to_string(k)) return k;
    throw UnknownKind("unknown periodic kind '" + name + "'");
}

PeriodicFunction make_periodic(PeriodicKind kind, double period, double amplitude,
                               double phase) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw InvalidParams("period must be positive and finite");
    if (kind == PeriodicKind::tabulated)
        throw InvalidParams("tabulated waveforms are built from samples");

    const double omega = 2.0 * kPi / period;
    PeriodicFunction P;
    P.period = period;
    P.kind = kind;
    switch (kind) {
        case PeriodicKind::cosine:
            P.eval = [amplitude, omega, phase](double x) {
                return amplitude * std::cos(omega * x + phase);
            };
            P.derivative_bound = std::abs(amplitude) * omega;
            break;
        case PeriodicKind::sine:
            P.eval = [amplitude, omega, phase](double x) {
                return amplitude * std::sin(omega * x + phase);
            };
            P.derivative_bound = std::abs(amplitude) * omega;
            break;
        default:  // triangle_wave
            P.eval = [amplitude, omega, phase](double x) {
                const double w = wrap_angle(omega * x + phase);
                return amplitude * (1.0 - 2.0 * std::abs(w) / kPi);
            };
            P.derivative_bound = 4.0 * std::abs(amplitude) / period;
            break;
    }
    return P;
}

PeriodicFunction periodic_from_table(const std::vector<std::pair<double, double>>& samples,
                                     std::optional<double> period) {
    if (samples.size() < 2) throw InvalidParams("tabulated waveform needs at least 2 samples");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : samples) {
        if (!xs.empty() && !(x > xs.back()))
            throw InvalidParams("tabulated abscissae must be strictly increasing");
        xs.push_back(x);
        ys.push_back(y);
    }
    const double span = xs.back() - xs.front();
    const double p = period.value_or(span);
    if (!(p > 0.0) || p < span - 1e-12 * std::max(1.0, span))
        throw InvalidParams("period must cover the sample span");

    double bound = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        bound = std::max(bound, std::abs((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])));
    if (p > span)
        bound = std::max(bound, std::abs((ys.front() - ys.back()) / (p - span)));

    PeriodicFunction P;
    P.period = p;
    P.kind = PeriodicKind::tabulated;
    P.derivative_bound = bound;
    const double x0 = xs.front();
    P.eval = [xs = std::move(xs), ys = std::move(ys), x0, p, span](double x) {
        double u = std::fmod(x - x0, p);
        if (u < 0.0) u += p;
        if (u > span) {  // wrap segment back to the first sample
            const double t = (u - span) / (p - span);
            return ys.back() + t * (ys.front() - ys.back());
        }
        const double target = x0 + u;
        const auto it = std::upper_bound(xs.begin(), xs.end(), target);
        const size_t i = std::min(xs.size() - 2,
                                  static_cast<size_t>(std::max<ptrdiff_t>(
                                      0, (it - xs.begin()) - 1)));
        const double t = (target - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] + t * (ys[i + 1] - ys[i]);
    };
    return P;
}

WaveProfileFunction compose_periodic(const AbelSolution& a, const PeriodicFunction& P) {
    if (!P.eval) throw InvalidParams("periodic callable must be non-empty");
    if (period_multiple(std::abs(a.Q), P.period) == 0)
        throw PeriodMismatch("increment must be a whole number of periods");

    WaveProfileFunction f;
    f.domain = a.domain;
    const auto ae = a.eval;
    const auto pe = P.eval;
    f.eval = [ae, pe](double x) { return pe(ae(x)); };
    f.provenance = WaveProvenance::periodic_composition;
    f.flux = 0.0;
    f.map = a.map;
    return f;
}

AbelSolution general_abel_solution(const AbelSolution& a, const PeriodicFunction& P) {
    if (!P.eval) throw InvalidParams("periodic callable must be non-empty");
    if (period_multiple(1.0, P.period) == 0)
        throw PeriodMismatch("period must divide the unit increment");

    AbelSolution out = rescale_to_unit(a);
    const auto base = out.eval;
    const auto pe = P.eval;
    out.eval = [base, pe](double x) {
        const double v = base(x);
        return v + pe(v);
    };
    out.inverse = nullptr;
    if (out.seed) {
        const auto sev = out.seed->eval;
        out.seed->eval = [sev, pe](double x) {
            const double v = sev(x);
            return v + pe(v);
        };
        out.seed->declared_jump = 1.0;
    }
    out.strictly_increasing = out.strictly_increasing && P.derivative_bound &&
                              *P.derivative_bound < 1.0;
    out.provenance = "general_perturbed";
    return out;
}

WaveProfileFunction postcompose(const WaveProfileFunction& f,
                                std::function<double(double)> F) {
    if (!F) throw InvalidParams("outer callable must be non-empty");
    if (f.flux != 0.0)
        throw InvalidParams("post-composition preserves only zero-flux solutions");
    WaveProfileFunction out = f;
    const auto inner = f.eval;
    out.eval = [inner, F](double x) { return F(inner(x)); };
    out.provenance = WaveProvenance::postcomposed;
    return out;
}

std::pair<double, WaveProfileFunction> barcilon_solution(int m, int k,
                                                         const PeriodicFunction& P) {
    if (!(m >= 1 && 2 * m < k))
        throw InvalidModeNumbers("mode numbers must satisfy 0 < 2m < k");
    const double theta = m * kPi / k;
    const double nu = std::cos(theta) / std::sin(theta);
    if (period_multiple(2.0 * theta, P.period) == 0)
        throw PeriodMismatch("period must divide twice the mode angle");

    const double cth = std::cos(theta);
    WaveProfileFunction f;
    f.domain = Interval::closed(-1.0 / cth, 1.0 / cth);
    const auto pe = P.eval;
    f.eval = [pe, cth](double X) {
        const double u = std::clamp(X * cth, -1.0, 1.0);
        return pe(std::acos(u));
    };
    f.provenance = WaveProvenance::barcilon;
    f.flux = 0.0;
    f.map = build_forward_map(make_profile(ProfileKind::semi_ellipse, {}, nu));
    return {nu, f};
}

WaveProfileFunction involution_solution(const Involution& invol,
                                        std::function<double(std::span<const double>)> S) {
    if (!invol.eval) throw InvalidParams("involution callable must be non-empty");
    if (!S) throw InvalidParams("combining callable must be non-empty");
    if (invol.order < 2) throw NotInvolution("order must be at least 2");

    Interval w = invol.probe_window.bounded() ? invol.probe_window : invol.domain;
    if (!w.bounded()) throw InvalidParams("involution needs a bounded probe window");

    const int ord = invol.order;
    std::mt19937_64 gen(20240817ull);
    std::vector<double> orbit(ord + 1);
    std::vector<double> rotated(ord);
    for (int probe = 0; probe < 100; ++probe) {
        const double x = uniform_probe(gen, w);
        orbit[0] = x;
        try {
            for (int j = 1; j <= ord; ++j) orbit[j] = invol.eval(orbit[j - 1]);
        } catch (const Error&) {
            throw NotInvolution("orbit left the evaluable domain");
        }
        if (std::abs(orbit[ord] - x) > 1e-10 * std::max(1.0, std::abs(x)))
            throw NotInvolution("k-fold self-composition is not the identity");

        const double base = S(std::span<const double>(orbit.data(), ord));
        for (int rot = 1; rot < ord; ++rot) {
            for (int j = 0; j < ord; ++j) rotated[j] = orbit[(j + rot) % ord];
            const double v = S(std::span<const double>(rotated.data(), ord));
            if (std::abs(v - base) > 1e-9 * std::max(1.0, std::abs(base)))
                throw NotCyclicInvariant("combining function changes under rotation");
        }
    }

    WaveProfileFunction f;
    f.domain = invol.domain;
    const auto iv = invol.eval;
    f.eval = [iv, S, ord](double x) {
        std::vector<double> u(ord);
        u[0] = x;
        for (int j = 1; j < ord; ++j) u[j] = iv(u[j - 1]);
        return S(std::span<const double>(u.data(), ord));
    };
    f.provenance = WaveProvenance::involution;
    f.flux = 0.0;
    f.map = map_from_callables(
        iv,
        [iv, ord](double y) {
            for (int j = 0; j < ord - 1; ++j) y = iv(y);
            return y;
        },
        invol.domain);
    return f;
}

std::optional<int> detect_involution(const ForwardMap& map, int max_order) {
    if (max_order < 2) return std::nullopt;
    const Interval w = finite_probe_window(map);
    constexpr double kGolden = 0.6180339887498949;

    std::vector<double> start(100), cur(100);
    for (int i = 0; i < 100; ++i) {
        const double frac = std::fmod((i + 1) * kGolden, 1.0);
        start[i] = w.lo + frac * (w.hi - w.lo);
    }
    auto matches = [&](double a, double b) {
        return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b));
    };

    try {
        bool identity = true;
        for (int i = 0; i < 100; ++i) {
            cur[i] = map.eval(start[i]);
            identity = identity && matches(cur[i], start[i]);
        }
        if (identity) return std::nullopt;  // degenerate order 1
        for (int order = 2; order <= max_order; ++order) {
            bool all = true;
            for (int i = 0; i < 100; ++i) {
                cur[i] = map.eval(cur[i]);
                all = all && matches(cur[i], start[i]);
            }
            if (all) return order;
        }
    } catch (const Error&) {
        return std::nullopt;  // orbit escaped: no finite order on this window
    }
    return std::nullopt;
}

}  // namespace funcwave
