#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "funcwave/schroder.hpp"

using namespace funcwave;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> midpoints(double lo, double hi, int n) {
    std::vector<double> xs;
    xs.reserve(n);
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * (i + 0.5) / n);
    return xs;
}

double sum_args(std::span<const double> u) {
    double s = 0.0;
    for (double v : u) s += v;
    return s;
}

}  // namespace

TEST_CASE("analytic waveforms hit their crests and zeros") {
    const PeriodicFunction c = make_periodic(PeriodicKind::cosine, 2.0);
    CHECK(c(0.0) == 1.0);
    CHECK(c(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(*c.derivative_bound == doctest::Approx(kPi).epsilon(1e-15));

    const PeriodicFunction s = make_periodic(PeriodicKind::sine, 2.0, 3.0);
    CHECK(s(0.5) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(*s.derivative_bound == doctest::Approx(3.0 * kPi).epsilon(1e-15));

    const PeriodicFunction t = make_periodic(PeriodicKind::triangle_wave, 2.0);
    CHECK(t(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(t(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(t(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(*t.derivative_bound == doctest::Approx(2.0).epsilon(1e-15));
    // even and periodic, like the cosine it replaces
    for (double x : midpoints(-3.0, 3.0, 50)) {
        CHECK(t(-x) == doctest::Approx(t(x)).epsilon(1e-13));
        CHECK(t(x + 2.0) == doctest::Approx(t(x)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(make_periodic(PeriodicKind::cosine, 0.0), InvalidParams);
    CHECK_THROWS_AS(make_periodic(PeriodicKind::cosine, -1.0), InvalidParams);
    CHECK_THROWS_AS(make_periodic(PeriodicKind::tabulated, 1.0), InvalidParams);
}

TEST_CASE("tabulated waveforms interpolate and wrap") {
    const std::vector<std::pair<double, double>> samples = {
        {0.0, 1.0}, {0.3, 0.0}, {0.6, -1.0}};
    const PeriodicFunction p = periodic_from_table(samples, 1.0);
    CHECK(p.period == 1.0);
    CHECK(p(0.0) == 1.0);
    CHECK(p(0.3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p(0.15) == doctest::Approx(0.5).epsilon(1e-15));
    // closing segment interpolates back to the first sample
    CHECK(p(0.8) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p(1.0) == 1.0);
    for (double x : midpoints(-2.0, 2.0, 40))
        CHECK(p(x + 1.0) == doctest::Approx(p(x)).epsilon(1e-13));
    CHECK(*p.derivative_bound == doctest::Approx(5.0).epsilon(1e-13));

    // period defaulting to the span makes the last sample wrap to the first
    const PeriodicFunction q = periodic_from_table(samples);
    CHECK(q.period == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(q(0.6) == 1.0);

    CHECK_THROWS_AS(periodic_from_table({{0.0, 1.0}}), InvalidParams);
    CHECK_THROWS_AS(periodic_from_table({{0.0, 1.0}, {0.0, 2.0}}), InvalidParams);
    CHECK_THROWS_AS(periodic_from_table(samples, 0.5), InvalidParams);
}

TEST_CASE("periodic composition closes the standing equation") {
    const AbelSolution a = closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}});
    const PeriodicFunction P = make_periodic(PeriodicKind::cosine, 0.7);
    const WaveProfileFunction f = compose_periodic(a, P);
    CHECK(f.flux == 0.0);
    CHECK(f.provenance == WaveProvenance::periodic_composition);
    REQUIRE(f.map.has_value());
    for (double x : midpoints(-0.95, 0.95, 300))
        CHECK(std::abs(f(f.map->eval(x)) - f(x)) < 1e-9);

    // two whole periods per increment close just as well
    const WaveProfileFunction g =
        compose_periodic(a, make_periodic(PeriodicKind::cosine, 0.35));
    for (double x : midpoints(-0.9, 0.9, 60))
        CHECK(std::abs(g(g.map->eval(x)) - g(x)) < 1e-9);

    CHECK_THROWS_AS(compose_periodic(a, make_periodic(PeriodicKind::cosine, 0.5)),
                    PeriodMismatch);
}

TEST_CASE("perturbed solutions keep the unit increment") {
    const AbelSolution lens = closed_form_abel(ProfileKind::hyperbolic_lens, {{"c", 2.0}});
    const PeriodicFunction gentle = make_periodic(PeriodicKind::cosine, 1.0, 0.1);
    const AbelSolution out = general_abel_solution(lens, gentle);
    CHECK(out.Q == 1.0);
    CHECK(out.strictly_increasing);
    CHECK_FALSE(out.has_inverse());
    for (double x : midpoints(-0.9, 0.9, 200))
        CHECK(std::abs(out(out.map.eval(x)) - out(x) - 1.0) < 1e-12);

    // the perturbed restriction still seeds the full solution
    REQUIRE(out.seed.has_value());
    const AbelSolution rebuilt = extend_seed(out.map, *out.seed);
    for (double x : midpoints(-0.8, 0.8, 80))
        CHECK(rebuilt(x) == doctest::Approx(out(x)).epsilon(1e-9));

    // a steep ripple can fold the solution back: monotonicity flag drops
    const AbelSolution steep =
        general_abel_solution(lens, make_periodic(PeriodicKind::cosine, 1.0, 0.5));
    CHECK_FALSE(steep.strictly_increasing);

    CHECK_THROWS_AS(general_abel_solution(lens, make_periodic(PeriodicKind::cosine, 0.7)),
                    PeriodMismatch);
}

TEST_CASE("outer compositions preserve standing solutions") {
    const AbelSolution a = closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}});
    const WaveProfileFunction f =
        compose_periodic(a, make_periodic(PeriodicKind::cosine, 0.7));
    const WaveProfileFunction g = postcompose(f, [](double y) { return y * y * y - y; });
    CHECK(g.provenance == WaveProvenance::postcomposed);
    for (double x : midpoints(-0.9, 0.9, 100))
        CHECK(std::abs(g(g.map->eval(x)) - g(x)) < 1e-12);

    WaveProfileFunction flux_carrier = f;
    flux_carrier.flux = 4.0;
    CHECK_THROWS_AS(postcompose(flux_carrier, [](double y) { return y; }), InvalidParams);
    CHECK_THROWS_AS(postcompose(f, nullptr), InvalidParams);
}

TEST_CASE("elliptic mode closure fixes the wave speed") {
    const double two_theta = 2.0 * kPi / 3.0;
    const auto [nu, f] =
        barcilon_solution(1, 3, make_periodic(PeriodicKind::cosine, two_theta));
    CHECK(nu == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(f.domain.hi == doctest::Approx(2.0).epsilon(1e-14));
    REQUIRE(f.map.has_value());
    for (double x : midpoints(-0.97, 0.97, 300))
        CHECK(std::abs(f(f.map->eval(x)) - f(x)) < 1e-9);

    // the piecewise-linear waveform closes the same advance
    const auto [nu_t, ft] =
        barcilon_solution(1, 3, make_periodic(PeriodicKind::triangle_wave, two_theta));
    CHECK(nu_t == nu);
    for (double x : midpoints(-0.97, 0.97, 300))
        CHECK(std::abs(ft(ft.map->eval(x)) - ft(x)) < 1e-9);
}

TEST_CASE("unit-speed elliptic mode reduces to a quartic") {
    const auto [nu, f] = barcilon_solution(1, 4, make_periodic(PeriodicKind::cosine, kPi / 2.0));
    CHECK(nu == doctest::Approx(1.0).epsilon(1e-14));
    const double edge = std::sqrt(2.0);
    CHECK(f.domain.hi == doctest::Approx(edge).epsilon(1e-14));
    for (double x : midpoints(-1.0, 1.0, 500)) {
        const double quartic = 2.0 * x * x * x * x - 4.0 * x * x + 1.0;
        CHECK(f(x) == doctest::Approx(quartic).epsilon(1e-12));
        // mirror symmetry under the circular advance x -> sqrt(2 - x^2)
        CHECK(f(std::sqrt(2.0 - x * x)) == doctest::Approx(f(x)).epsilon(1e-12));
    }
    CHECK(f(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f(1.0) == doctest::Approx(-1.0).epsilon(1e-14));

    CHECK_THROWS_AS(barcilon_solution(0, 3, make_periodic(PeriodicKind::cosine, 1.0)),
                    InvalidModeNumbers);
    CHECK_THROWS_AS(barcilon_solution(2, 4, make_periodic(PeriodicKind::cosine, 1.0)),
                    InvalidModeNumbers);
    CHECK_THROWS_AS(barcilon_solution(1, 3, make_periodic(PeriodicKind::cosine, 1.0)),
                    PeriodMismatch);
}

TEST_CASE("reciprocal corner pairing sums to a standing solution") {
    Involution inv;
    inv.order = 2;
    inv.eval = [](double x) { return 1.0 / x; };
    inv.domain = Interval::open(-std::numeric_limits<double>::infinity(), 0.0);
    inv.probe_window = Interval::closed(-2.5, -0.4);
    const WaveProfileFunction f = involution_solution(inv, sum_args);
    CHECK(f.provenance == WaveProvenance::involution);
    CHECK(f(-2.0) == -2.5);
    for (double x : midpoints(-3.0, -0.2, 100)) {
        CHECK(f(x) == doctest::Approx(x + 1.0 / x).epsilon(1e-14));
        CHECK(f(1.0 / x) == doctest::Approx(f(x)).epsilon(1e-12));
    }
}

TEST_CASE("circular quadrant pairing yields the quartic solution") {
    Involution inv;
    inv.order = 2;
    inv.eval = [](double x) { return std::copysign(std::sqrt(1.0 - x * x), x); };
    inv.domain = Interval::closed(-1.0, 1.0);
    const auto quartic_sum = [](std::span<const double> u) {
        double s = 1.0;
        for (double v : u) s += v * v * (v * v - 1.0);
        return s;
    };
    const WaveProfileFunction f = involution_solution(inv, quartic_sum);
    for (double x : midpoints(-1.0, 1.0, 200)) {
        // x^2(x^2-1) + y^2(y^2-1) at y^2 = 1-x^2 collapses to 2x^4 - 2x^2 + 1
        CHECK(f(x) == doctest::Approx(2.0 * x * x * x * x - 2.0 * x * x + 1.0).epsilon(1e-12));
        CHECK(f(inv.eval(x)) == doctest::Approx(f(x)).epsilon(1e-12));
    }
}

TEST_CASE("piecewise-linear refolding pairs across the corner") {
    Involution inv;
    inv.order = 2;
    inv.eval = [](double x) { return x < 0.0 ? -2.0 * x : -0.5 * x; };
    inv.domain = Interval::all();
    inv.probe_window = Interval::closed(-2.0, 2.0);
    const WaveProfileFunction f = involution_solution(inv, sum_args);
    CHECK(f(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f(2.0) == doctest::Approx(1.0).epsilon(1e-15));
    for (double x : midpoints(-2.0, 2.0, 100))
        CHECK(f(inv.eval(x)) == doctest::Approx(f(x)).epsilon(1e-12));
}

TEST_CASE("three-cycles feed the same construction") {
    Involution inv;
    inv.order = 3;
    inv.eval = [](double x) { return 1.0 / (1.0 - x); };
    inv.domain = Interval::all();
    inv.probe_window = Interval::closed(2.0, 5.0);
    // orbit of 2: 2 -> -1 -> 1/2 -> 2
    CHECK(inv.eval(2.0) == -1.0);
    CHECK(inv.eval(-1.0) == 0.5);
    CHECK(inv.eval(0.5) == 2.0);
    const WaveProfileFunction f = involution_solution(inv, sum_args);
    CHECK(f(2.0) == doctest::Approx(1.5).epsilon(1e-15));
    for (double x : midpoints(2.0, 5.0, 100))
        CHECK(f(inv.eval(x)) == doctest::Approx(f(x)).epsilon(1e-11));
}

TEST_CASE("construction rejects broken pairings") {
    Involution not_inv;
    not_inv.order = 2;
    not_inv.eval = [](double x) { return 1.0 / (1.0 - x); };  // actually order 3
    not_inv.domain = Interval::all();
    not_inv.probe_window = Interval::closed(2.0, 5.0);
    CHECK_THROWS_AS(involution_solution(not_inv, sum_args), NotInvolution);

    Involution inv;
    inv.order = 2;
    inv.eval = [](double x) { return 1.0 / x; };
    inv.domain = Interval::open(-std::numeric_limits<double>::infinity(), 0.0);
    inv.probe_window = Interval::closed(-2.5, -0.4);

    // picking one argument is not rotation-invariant
    CHECK_THROWS_AS(
        involution_solution(inv, [](std::span<const double> u) { return u[0]; }),
        NotCyclicInvariant);

    Involution low = inv;
    low.order = 1;
    CHECK_THROWS_AS(involution_solution(low, sum_args), NotInvolution);

    Involution unbounded = inv;
    unbounded.probe_window = Interval();
    unbounded.domain = Interval::all();
    CHECK_THROWS_AS(involution_solution(unbounded, sum_args), InvalidParams);
}

TEST_CASE("self-inverse maps are recognised from probes alone") {
    const ForwardMap pl = map_from_callables(
        [](double x) { return x < 0.0 ? -2.0 * x : -0.5 * x; },
        [](double y) { return y > 0.0 ? -0.5 * y : -2.0 * y; }, Interval::all());
    CHECK(detect_involution(pl, 6) == 2);
    CHECK(detect_involution(pl, 1) == std::nullopt);

    const ForwardMap cyc = map_from_callables(
        [](double x) { return 1.0 / (1.0 - x); },
        [](double y) { return 1.0 - 1.0 / y; }, Interval::all());
    CHECK(detect_involution(cyc, 6) == 3);
    CHECK(detect_involution(cyc, 2) == std::nullopt);

    const ForwardMap shift = map_from_callables(
        [](double x) { return x + 1.0; }, [](double y) { return y - 1.0; }, Interval::all());
    CHECK(detect_involution(shift, 8) == std::nullopt);

    const ForwardMap ident = map_from_callables(
        [](double x) { return x; }, [](double y) { return y; }, Interval::all());
    CHECK(detect_involution(ident, 6) == std::nullopt);

    // a genuine one-way advance is never mistaken for a pairing
    const AbelSolution tri = closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}});
    CHECK(detect_involution(tri.map, 6) == std::nullopt);
}
