// Final gate: each numbered criterion prints exactly one PASS/FAIL line; the
// exit status is the number of failures.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "funcwave/abel.hpp"
#include "funcwave/charmap.hpp"
#include "funcwave/schroder.hpp"
#include "funcwave/verify.hpp"
#include "funcwave/wavefield.hpp"

using namespace funcwave;

namespace {

int failures = 0;

template <typename Fn>
void criterion(int n, const char* what, Fn fn) {
    bool ok = false;
    std::string diag;
    try {
        ok = fn(diag);
    } catch (const std::exception& e) {
        ok = false;
        diag = e.what();
    }
    if (ok) {
        std::printf("PASS criterion %d: %s\n", n, what);
    } else {
        ++failures;
        if (diag.empty())
            std::printf("FAIL criterion %d: %s\n", n, what);
        else
            std::printf("FAIL criterion %d: %s [%s]\n", n, what, diag.c_str());
    }
}

std::vector<double> midpoints(double lo, double hi, int n) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs.push_back(lo + (hi - lo) * (i + 0.5) / n);
    return xs;
}

double advance_residual_max(const AbelSolution& a, double lo, double hi, int n) {
    double worst = 0.0;
    for (double x : midpoints(lo, hi, n))
        worst = std::max(worst, std::abs(a.eval(a.map.eval(x)) - a.eval(x) - a.Q));
    return worst;
}

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = std::string(FUNCWAVE_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

double orbit_sum(std::span<const double> orbit) {
    double s = 0.0;
    for (double v : orbit) s += v;
    return s;
}

}  // namespace

int main() {
    criterion(1, "closed-form ladder solutions advance by their increment to 1e-9",
              [](std::string& diag) {
                  struct Item {
                      const char* name;
                      AbelSolution a;
                      double lo, hi;
                  };
                  const Item items[] = {
                      {"wedge", closed_form_abel(ProfileKind::wedge, {{"tau", 0.5}}), -3.0,
                       -0.01},
                      {"triangle",
                       closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}}),
                       -0.99, 0.99},
                      {"lens", closed_form_abel(ProfileKind::hyperbolic_lens, {{"c", 2.0}}),
                       -0.97, 0.97},
                      {"hump",
                       closed_form_abel(ProfileKind::hyperbolic_hump, {{"tau", 0.5}}), -3.0,
                       3.0},
                      {"hyperbola",
                       closed_form_abel(ProfileKind::dai_hyperbola,
                                        {{"r", 1.0}, {"Q", 4.0}}),
                       0.3, 2.5},
                      {"parabola", closed_form_abel(ProfileKind::parabolic_segment, {}),
                       0.02, 0.48},
                  };
                  bool ok = true;
                  for (const Item& it : items) {
                      const double worst = advance_residual_max(it.a, it.lo, it.hi, 500);
                      if (!(worst < 1e-9)) {
                          ok = false;
                          diag += std::string(it.name) + " max " + std::to_string(worst) +
                                  "; ";
                      }
                  }
                  return ok;
              });

    criterion(2, "seed restrictions rebuild the closed forms with continuous boundaries",
              [](std::string& diag) {
                  bool ok = true;
                  const AbelSolution exact[] = {
                      closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}}),
                      closed_form_abel(ProfileKind::hyperbolic_lens, {{"c", 2.0}}),
                  };
                  for (const AbelSolution& a : exact) {
                      if (!a.seed) {
                          ok = false;
                          diag += "missing seed; ";
                          continue;
                      }
                      const AbelSolution rebuilt = extend_seed(a.map, *a.seed);
                      double worst = 0.0;
                      for (double x : midpoints(-0.95, 0.95, 200))
                          worst = std::max(worst, std::abs(rebuilt.eval(x) - a.eval(x)));
                      if (!(worst < 1e-8)) {
                          ok = false;
                          diag += "rebuild max " + std::to_string(worst) + "; ";
                      }
                      const SuiteEntry cont = continuity_check(a, 20);
                      if (!cont.passed || !(cont.report.max_abs < 1e-6)) {
                          ok = false;
                          diag += "boundary gap " + std::to_string(cont.report.max_abs) +
                                  " " + cont.detail + "; ";
                      }
                  }
                  return ok;
              });

    criterion(3, "mode closures pin the slope and the quartic mode is polynomial",
              [](std::string& diag) {
                  bool ok = true;
                  const auto [nu3, f3] = barcilon_solution(
                      1, 3,
                      make_periodic(PeriodicKind::cosine, 2.0 * std::numbers::pi / 3.0));
                  if (!(std::abs(nu3 - 1.0 / std::sqrt(3.0)) < 1e-12)) {
                      ok = false;
                      diag += "slope " + std::to_string(nu3) + "; ";
                  }
                  const auto [nu4, f4] = barcilon_solution(
                      1, 4, make_periodic(PeriodicKind::cosine, std::numbers::pi / 2.0));
                  (void)nu4;
                  double worst = 0.0;
                  for (double x : midpoints(-1.0, 1.0, 500)) {
                      const double poly = 2.0 * x * x * x * x - 4.0 * x * x + 1.0;
                      worst = std::max(worst, std::abs(f4.eval(x) - poly));
                  }
                  if (!(worst < 1e-12)) {
                      ok = false;
                      diag += "polynomial gap " + std::to_string(worst) + "; ";
                  }
                  return ok;
              });

    criterion(4, "the bottom-reflection identity holds on random sweeps of every map",
              [](std::string& diag) {
                  struct Item {
                      const char* name;
                      DepthProfile profile;
                      double lo, hi;
                  };
                  const Item items[] = {
                      {"wedge", make_profile(ProfileKind::wedge, {{"tau", 0.5}}), -3.0,
                       -0.05},
                      {"triangle",
                       make_profile(ProfileKind::isosceles_triangle, {{"tau", 0.35}}), -0.9,
                       0.9},
                      {"semi_ellipse", make_profile(ProfileKind::semi_ellipse, {}), -0.9,
                       0.9},
                      {"lens", make_profile(ProfileKind::hyperbolic_lens, {{"c", 2.0}}),
                       -0.9, 0.9},
                      {"hump", make_profile(ProfileKind::hyperbolic_hump, {{"tau", 0.5}}),
                       -2.0, 2.0},
                      {"hyperbola", make_profile(ProfileKind::dai_hyperbola, {{"r", 1.0}}),
                       0.3, 2.0},
                      {"parabola", make_profile(ProfileKind::parabolic_segment, {}), 0.05,
                       0.45},
                      {"corner", make_profile(ProfileKind::involution_derived, {}), -3.0,
                       -1.05},
                  };
                  bool ok = true;
                  for (const Item& it : items) {
                      const ForwardMap map = build_forward_map(it.profile);
                      SweepSpec spec;
                      spec.interval = Interval::closed(it.lo, it.hi);
                      spec.n = 100;
                      spec.placement = Placement::random_seeded;
                      spec.seed = 20240817;
                      double worst = 0.0;
                      for (double x : spec.points())
                          worst = std::max(worst,
                                           reflection_identity_residual(it.profile, map, x));
                      if (!(worst < 1e-9)) {
                          ok = false;
                          diag += std::string(it.name) + " max " + std::to_string(worst) +
                                  "; ";
                      }
                  }
                  return ok;
              });

    criterion(5, "fields vanish on the surface, carry their flux on the bottom, and are odd",
              [](std::string& diag) {
                  bool ok = true;
                  for (const auto& jcase : default_suite_config().at("cases")) {
                      const Construction c = build_construction(jcase);
                      const StreamField field = extend_field(c.f, c.nu);
                      SweepSpec spec = sweep_from_json(jcase.at("sweep"));
                      spec.n = 100;
                      bool surface_exact = true;
                      double bottom_worst = 0.0, parity_worst = 0.0;
                      for (double x : spec.points()) {
                          if (field.psi(x, 0.0) != 0.0) surface_exact = false;
                          const double dep = c.profile.d(x);
                          bottom_worst = std::max(
                              bottom_worst, std::abs(field.psi(x, -dep) - c.flux));
                          double cap = 0.45 * dep;
                          if (std::isfinite(c.f.domain.lo))
                              cap = std::min(cap, 0.45 * c.nu * (x - c.f.domain.lo));
                          if (std::isfinite(c.f.domain.hi))
                              cap = std::min(cap, 0.45 * c.nu * (c.f.domain.hi - x));
                          if (cap > 0.0 && std::isfinite(cap))
                              parity_worst =
                                  std::max(parity_worst, std::abs(field.psi(x, -cap) +
                                                                  field.psi(x, cap)));
                      }
                      if (!surface_exact || !(bottom_worst < 1e-9) ||
                          !(parity_worst <= 1e-12)) {
                          ok = false;
                          diag += c.name + " bottom " + std::to_string(bottom_worst) + "; ";
                      }
                  }
                  return ok;
              });

    criterion(6, "discrete wave-operator residuals shrink fourfold as the step halves",
              [](std::string& diag) {
                  const AbelSolution tri =
                      closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}});
                  const StreamField triangle_field = extend_field(
                      compose_periodic(tri, make_periodic(PeriodicKind::cosine, 0.7)), 1.0);

                  const AbelSolution lens =
                      closed_form_abel(ProfileKind::hyperbolic_lens, {{"c", 2.0}});
                  const StreamField lens_field = extend_field(
                      compose_periodic(lens, make_periodic(PeriodicKind::sine, lens.Q)),
                      1.0);

                  const AbelSolution dai = closed_form_abel(ProfileKind::dai_hyperbola,
                                                            {{"r", 1.0}, {"Q", 4.0}});
                  WaveProfileFunction dai_standing =
                      compose_periodic(dai, make_periodic(PeriodicKind::cosine, 4.0));
                  dai_standing.domain = Interval::all();
                  const StreamField dai_field = extend_field(dai_standing, 1.0);

                  struct Item {
                      const char* name;
                      const StreamField* field;
                      Rect rect;
                  };
                  const Item items[] = {
                      {"triangle", &triangle_field, {-0.12, 0.12, -0.18, -0.06}},
                      {"lens", &lens_field, {-0.2, 0.2, -0.2, -0.05}},
                      {"hyperbola", &dai_field, {0.8, 1.6, -0.5, -0.1}},
                  };
                  bool ok = true;
                  for (const Item& it : items) {
                      const double coarse = pde_residual(*it.field, it.rect, 0.02);
                      const double fine = pde_residual(*it.field, it.rect, 0.01);
                      const double ratio = coarse / fine;
                      if (!(coarse > 1e-6) || !(ratio > 3.0) || !(ratio < 5.0)) {
                          ok = false;
                          diag += std::string(it.name) + " ratio " + std::to_string(ratio) +
                                  " coarse " + std::to_string(coarse) + "; ";
                      }
                  }
                  return ok;
              });

    criterion(7, "involutive maps admit invariant solutions and refuse ladder seeds",
              [](std::string& diag) {
                  bool ok = true;
                  const auto check_invariance = [&](const char* name,
                                                    const WaveProfileFunction& f,
                                                    const std::function<double(double)>& m,
                                                    double lo, double hi) {
                      double worst = 0.0;
                      for (double x : midpoints(lo, hi, 200))
                          worst = std::max(worst, std::abs(f.eval(m(x)) - f.eval(x)));
                      if (!(worst < 1e-10)) {
                          ok = false;
                          diag += std::string(name) + " max " + std::to_string(worst) + "; ";
                      }
                  };

                  Involution pl;
                  pl.eval = [](double x) { return x < 0.0 ? -2.0 * x : -0.5 * x; };
                  pl.domain = Interval::all();
                  pl.probe_window = Interval::closed(-2.0, 2.0);
                  check_invariance("fold", involution_solution(pl, orbit_sum), pl.eval,
                                   -2.0, 2.0);

                  Involution rec;
                  rec.eval = [](double x) { return 1.0 / x; };
                  rec.domain = Interval::open(-std::numeric_limits<double>::infinity(), 0.0);
                  rec.probe_window = Interval::closed(-2.5, -0.4);
                  check_invariance("reciprocal", involution_solution(rec, orbit_sum),
                                   rec.eval, -3.0, -0.25);

                  Involution quad;
                  quad.eval = [](double x) {
                      return std::copysign(std::sqrt(1.0 - x * x), x);
                  };
                  quad.domain = Interval::closed(-1.0, 1.0);
                  quad.probe_window = quad.domain;
                  check_invariance("arc", involution_solution(quad, orbit_sum), quad.eval,
                                   -0.99, 0.99);

                  Involution cyc;
                  cyc.order = 3;
                  cyc.eval = [](double x) { return 1.0 / (1.0 - x); };
                  cyc.domain = Interval::all();
                  cyc.probe_window = Interval::closed(2.0, 5.0);
                  check_invariance("three-cycle", involution_solution(cyc, orbit_sum),
                                   cyc.eval, 2.05, 4.95);

                  const ForwardMap fold_map = map_from_callables(
                      [](double x) { return x < 0.0 ? -2.0 * x : -0.5 * x; },
                      [](double y) { return y > 0.0 ? -0.5 * y : -2.0 * y; },
                      Interval::all());
                  bool threw = false;
                  try {
                      extend_seed(fold_map,
                                  seed_from_callable(Interval::half_open(-1.0, 2.0),
                                                     [](double x) { return x; }));
                  } catch (const InvolutionObstruction&) {
                      threw = true;
                  }
                  if (!threw) {
                      ok = false;
                      diag += "ladder seed accepted on an involution; ";
                  }
                  return ok;
              });

    criterion(8, "invariant solutions close under min, convex mixing, and post-composition",
              [](std::string& diag) {
                  const AbelSolution tri =
                      closed_form_abel(ProfileKind::isosceles_triangle, {{"tau", 0.35}});
                  const WaveProfileFunction f1 =
                      compose_periodic(tri, make_periodic(PeriodicKind::cosine, 0.7));
                  const WaveProfileFunction f2 = compose_periodic(
                      tri, make_periodic(PeriodicKind::triangle_wave, 0.35));
                  bool ok = true;
                  double worst_min = 0.0, worst_mix = 0.0;
                  for (double x : midpoints(-0.95, 0.95, 300)) {
                      const double tx = tri.map.eval(x);
                      worst_min = std::max(
                          worst_min, std::abs(std::min(f1.eval(tx), f2.eval(tx)) -
                                              std::min(f1.eval(x), f2.eval(x))));
                      worst_mix = std::max(
                          worst_mix,
                          std::abs((0.3 * f1.eval(tx) + 0.7 * f2.eval(tx)) -
                                   (0.3 * f1.eval(x) + 0.7 * f2.eval(x))));
                  }
                  if (!(worst_min < 1e-9) || !(worst_mix < 1e-9)) {
                      ok = false;
                      diag += "min " + std::to_string(worst_min) + " mix " +
                              std::to_string(worst_mix) + "; ";
                  }

                  const PeriodicFunction wave =
                      make_periodic(PeriodicKind::triangle_wave, 2.0);
                  const std::pair<const char*, std::function<double(double)>> outers[] = {
                      {"square", [](double y) { return y * y; }},
                      {"cosine", [](double y) { return std::cos(y); }},
                      {"triangle-wave", [&wave](double y) { return wave(y); }},
                  };
                  for (const auto& [name, F] : outers) {
                      const WaveProfileFunction composed = postcompose(f1, F);
                      double worst = 0.0;
                      for (double x : midpoints(-0.95, 0.95, 300))
                          worst = std::max(worst, std::abs(composed.eval(tri.map.eval(x)) -
                                                           composed.eval(x)));
                      if (!(worst < 1e-9)) {
                          ok = false;
                          diag += std::string(name) + " max " + std::to_string(worst) + "; ";
                      }
                  }
                  return ok;
              });

    criterion(9, "the bundled configurations emit physical grids through the CLI",
              [](std::string& diag) {
                  struct Cfg {
                      const char* file;
                      bool expect_nodal;
                      DepthProfile profile;
                  };
                  const Cfg cfgs[] = {
                      {"fig1.json", true,
                       make_profile(ProfileKind::isosceles_triangle, {{"tau", 0.35}})},
                      {"fig2.json", true,
                       make_profile(ProfileKind::hyperbolic_lens, {{"c", 2.0}})},
                      {"dai.json", true,
                       make_profile(ProfileKind::dai_hyperbola, {{"r", 1.0}})},
                      {"corner.json", false,
                       make_profile(ProfileKind::involution_derived, {})},
                  };
                  bool ok = true;
                  for (const Cfg& cfg : cfgs) {
                      const CliRun r =
                          run_cli("field --config " + std::string(FUNCWAVE_CONFIG_DIR) +
                                  "/" + cfg.file + " --format json --nx 101 --nz 61");
                      if (r.code != 0) {
                          ok = false;
                          diag += std::string(cfg.file) + " exit " +
                                  std::to_string(r.code) + "; ";
                          continue;
                      }
                      const nlohmann::json parsed = nlohmann::json::parse(r.out);
                      FieldGrid grid;
                      grid.window = {parsed.at("window").at("x_lo").get<double>(),
                                     parsed.at("window").at("x_hi").get<double>(),
                                     parsed.at("window").at("z_lo").get<double>(),
                                     parsed.at("window").at("z_hi").get<double>()};
                      grid.nx = parsed.at("nx").get<int>();
                      grid.nz = parsed.at("nz").get<int>();
                      grid.values = parsed.at("values").get<std::vector<double>>();
                      for (const auto& m : parsed.at("inside_mask"))
                          grid.inside_mask.push_back(
                              static_cast<unsigned char>(m.get<int>()));

                      bool top_zero = true;
                      for (int i = 0; i < grid.nx; ++i)
                          if (grid.values[grid.index(i, grid.nz - 1)] != 0.0)
                              top_zero = false;

                      bool mask_ok = true;
                      long inside = 0;
                      for (int j = 0; j < grid.nz; ++j)
                          for (int i = 0; i < grid.nx; ++i) {
                              const double x = grid.x_at(i);
                              const double z = grid.z_at(j);
                              bool expect = cfg.profile.domain.contains(x, 1e-12);
                              if (expect) expect = z >= -cfg.profile.d(x) - 1e-12;
                              const bool got =
                                  grid.inside_mask[grid.index(i, j)] != 0;
                              if (expect != got) mask_ok = false;
                              inside += got;
                          }

                      const std::size_t cells = nodal_cells(grid).size();
                      const bool nodal_ok =
                          cfg.expect_nodal ? cells > 0 : cells == 0;
                      if (!top_zero || !mask_ok || inside <= 0 || !nodal_ok) {
                          ok = false;
                          diag += std::string(cfg.file) + (top_zero ? "" : " surface") +
                                  (mask_ok ? "" : " mask") +
                                  (nodal_ok ? "" : " nodal=" + std::to_string(cells)) +
                                  "; ";
                      }
                  }
                  return ok;
              });

    return failures;
}
