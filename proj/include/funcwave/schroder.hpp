#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "funcwave/abel.hpp"

namespace funcwave {

enum class PeriodicKind { cosine, sine, triangle_wave, tabulated };

const char* to_string(PeriodicKind kind);
PeriodicKind periodic_kind_from_string(const std::string& name);

struct PeriodicFunction {
    double period = 1.0;
    PeriodicKind kind = PeriodicKind::cosine;
    std::function<double(double)> eval;
    std::optional<double> derivative_bound;  // sup |P'| when known

    double operator()(double x) const { return eval(x); }
};

// Analytic waveforms: amplitude * base(2*pi*x/period + phase).  The triangle
// wave is the even piecewise-linear profile agreeing with the cosine at crest
// and trough.
PeriodicFunction make_periodic(PeriodicKind kind, double period, double amplitude = 1.0,
                               double phase = 0.0);
// One period of samples, linear interpolation, exact wraparound; period
// defaults to the sample span.
PeriodicFunction periodic_from_table(const std::vector<std::pair<double, double>>& samples,
                                     std::optional<double> period = std::nullopt);

enum class WaveProvenance { periodic_composition, postcomposed, involution, barcilon, custom };

// Solution f of f(T(x)) = f(x) + flux; flux = 0 is the standing-wave case.
struct WaveProfileFunction {
    Interval domain;
    std::function<double(double)> eval;
    WaveProvenance provenance = WaveProvenance::custom;
    double flux = 0.0;
    std::optional<ForwardMap> map;  // the map the solution was built against

    double operator()(double x) const { return eval(x); }
};

// f = P o a solves the zero-increment equation whenever a full increment of a
// advances P by whole periods (|a.Q| = n * P.period).
WaveProfileFunction compose_periodic(const AbelSolution& a, const PeriodicFunction& P);

// General unit-increment solution a + P(a) built over a rescaled to Q=1;
// strictly increasing whenever sup|P'| < 1.
AbelSolution general_abel_solution(const AbelSolution& a, const PeriodicFunction& P);

// F o f solves the same zero-increment equation (zero-flux f only).
WaveProfileFunction postcompose(const WaveProfileFunction& f,
                                std::function<double(double)> F);

// Semi-ellipse closure: for mode numbers 0 < 2m < k returns nu = cot(m*pi/k)
// and f(X) = P(arccos(X cos(m*pi/k))), a standing solution over the elliptic
// advance map at that nu.  P must have period 2*m*pi/k (or divide it).
std::pair<double, WaveProfileFunction> barcilon_solution(int m, int k,
                                                         const PeriodicFunction& P);

struct Involution {
    int order = 2;
    std::function<double(double)> eval;
    Interval domain;
    // Finite window probes are drawn from; defaults to `domain` when bounded.
    Interval probe_window;
};

// f(x) = S(x, invol(x), ..., invol^[k-1](x)) for S invariant under cyclic
// rotation of its k arguments; solves f(invol(x)) = f(x).
WaveProfileFunction involution_solution(const Involution& invol,
                                        std::function<double(std::span<const double>)> S);

// Smallest order 2..max_order at which the map's self-composition is the
// identity on a probe sweep; the identity map itself reports none.
std::optional<int> detect_involution(const ForwardMap& map, int max_order);

}  // namespace funcwave
