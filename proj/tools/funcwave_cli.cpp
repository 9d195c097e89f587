#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "funcwave/catalog.hpp"
#include "funcwave/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;

// FUNCWAVE_THREADS caps grid-sampling parallelism; 0 or unset leaves the
// runtime default in place.
void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("FUNCWAVE_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0)
            omp_set_num_threads(static_cast<int>(n));
    }
#endif
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw funcwave::InvalidParams("cannot open config file '" + path + "'");
    return json::parse(in);
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw funcwave::InvalidParams("cannot open output file '" + out_path + "'");
    out << text;
}

std::vector<double> parse_window(const std::string& arg) {
    std::vector<double> vals;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        vals.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
    }
    if (vals.size() != 4)
        throw funcwave::InvalidParams("--window needs x0,x1,z0,z1");
    return vals;
}

int cmd_list_profiles(const std::string& format, const std::string& out_path) {
    struct Row {
        const char* kind;
        const char* parameters;
        const char* map_form;
    };
    // Parameter lists mirror make_profile; every kind also accepts "scale".
    static const Row rows[] = {
        {"wedge", "tau;b", "closed_form"},
        {"isosceles_triangle", "tau", "closed_form"},
        {"semi_ellipse", "", "closed_form"},
        {"hyperbolic_lens", "c", "closed_form"},
        {"hyperbolic_hump", "tau", "closed_form"},
        {"dai_hyperbola", "r", "closed_form"},
        {"parabolic_segment", "", "closed_form"},
        {"involution_derived", "m;x0|b", "closed_form"},
        {"custom", "samples", "numeric"},
    };
    std::ostringstream os;
    if (format == "json") {
        json out = json::array();
        for (const Row& r : rows)
            out.push_back({{"kind", r.kind}, {"parameters", r.parameters}, {"map_form", r.map_form}});
        os << out.dump(2) << "\n";
    } else {
        os << "kind,parameters,map_form\n";
        for (const Row& r : rows)
            os << r.kind << "," << r.parameters << "," << r.map_form << "\n";
    }
    emit(out_path, os.str());
    return 0;
}

int cmd_solve(const std::string& config_path, const std::string& format,
              const std::string& out_path, int nx_flag) {
    const json config = load_config(config_path);
    const funcwave::Construction c = funcwave::build_construction(config);

    int n = nx_flag > 0 ? nx_flag : config.value("nx", 200);
    if (n < 2) throw funcwave::InvalidParams("need at least two sample points");
    const funcwave::Interval w = c.profile.window;
    if (!w.bounded()) throw funcwave::InvalidParams("profile window is unbounded");

    std::ostringstream os;
    if (format == "json") {
        json samples = json::array();
        for (int i = 0; i < n; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (i + 0.5) / n;
            samples.push_back({x, c.f.eval(x)});
        }
        os << json{{"name", c.name},
                   {"nu", c.nu},
                   {"flux", c.flux},
                   {"samples", std::move(samples)}}
                  .dump(2)
           << "\n";
    } else {
        os << "x,f\n";
        char line[80];
        for (int i = 0; i < n; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (i + 0.5) / n;
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", x, c.f.eval(x));
            os << line;
        }
    }
    emit(out_path, os.str());
    std::cerr << c.name << ": nu=" << c.nu << " flux=" << c.flux << " samples=" << n << "\n";
    return 0;
}

int cmd_field(const std::string& config_path, const std::string& format,
              const std::string& out_path, int nx_flag, int nz_flag,
              const std::string& window_flag) {
    const json config = load_config(config_path);
    const funcwave::Construction c = funcwave::build_construction(config);

    funcwave::Rect window;
    if (!window_flag.empty()) {
        const std::vector<double> w = parse_window(window_flag);
        window = {w[0], w[1], w[2], w[3]};
    } else if (config.contains("window")) {
        const auto& w = config.at("window");
        if (!w.is_array() || w.size() != 4)
            throw funcwave::InvalidParams("config \"window\" must be [x0, x1, z0, z1]");
        window = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(),
                  w[3].get<double>()};
    } else {
        throw funcwave::InvalidParams("no window: pass --window or put one in the config");
    }
    const int nx = nx_flag > 0 ? nx_flag : config.value("nx", 200);
    const int nz = nz_flag > 0 ? nz_flag : config.value("nz", 100);

    const funcwave::StreamField field = funcwave::extend_field(c.f, c.nu);
    const funcwave::FieldGrid grid = funcwave::sample_grid(field, c.profile, window, nx, nz);

    std::ostringstream os;
    if (format == "json") {
        json out = funcwave::grid_to_json(grid);
        out["name"] = c.name;
        os << out.dump() << "\n";
    } else {
        funcwave::write_csv(grid, os);
    }
    emit(out_path, os.str());

    long inside = 0;
    for (unsigned char m : grid.inside_mask) inside += m;
    std::cerr << c.name << ": grid " << nx << "x" << nz << ", " << inside
              << " inside nodes, " << funcwave::nodal_cells(grid).size()
              << " nodal cells\n";
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& suite,
               const std::string& out_path, std::uint64_t seed, bool seed_given) {
    json config;
    if (!config_path.empty())
        config = load_config(config_path);
    else if (suite == "default" || suite.empty())
        config = funcwave::default_suite_config();
    else
        throw funcwave::InvalidParams("unknown suite '" + suite + "'");

    if (seed_given && config.contains("cases"))
        for (auto& jcase : config.at("cases"))
            if (jcase.contains("sweep")) jcase.at("sweep")["seed"] = seed;

    const funcwave::SuiteReport report = funcwave::run_suite(config);
    emit(out_path, funcwave::report_to_json(report).dump(2) + "\n");

    for (const funcwave::SuiteEntry& entry : report.entries)
        if (!entry.passed)
            std::cerr << "failed: " << entry.name << " max_abs=" << entry.report.max_abs
                      << " tol=" << entry.tolerance
                      << (entry.detail.empty() ? "" : " (" + entry.detail + ")") << "\n";
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact standing internal waves over two-dimensional basins"};
    app.require_subcommand(1);

    std::string config_path, out_path, window_arg, suite, format = "csv";
    int nx = -1, nz = -1;
    std::uint64_t seed = 0;

    CLI::App* list = app.add_subcommand("list-profiles", "print the bottom-profile catalog");
    list->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    list->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* solve = app.add_subcommand("solve", "build a construction and sample its profile function");
    solve->add_option("--config", config_path, "construction config (JSON)")->required();
    solve->add_option("--nx", nx, "sample count across the profile window");
    solve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    solve->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* field = app.add_subcommand("field", "sample the stream function on a grid");
    field->add_option("--config", config_path, "construction config (JSON)")->required();
    field->add_option("--nx", nx, "grid columns (default 200)");
    field->add_option("--nz", nz, "grid rows (default 100)");
    field->add_option("--window", window_arg, "x0,x1,z0,z1 (overrides the config)");
    field->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    field->add_option("--out", out_path, "write to a file instead of stdout");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite, report JSON");
    verify->add_option("--config", config_path, "suite config (JSON)");
    verify->add_option("--suite", suite, "named suite (default)");
    CLI::Option* seed_opt =
        verify->add_option("--seed", seed, "override the seed of random-placement sweeps");
    verify->add_option("--out", out_path, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 2;  // --help exits 0; any parse failure is a usage error
    }

    apply_thread_cap();
    try {
        if (list->parsed()) return cmd_list_profiles(format, out_path);
        if (solve->parsed()) return cmd_solve(config_path, format, out_path, nx);
        if (field->parsed())
            return cmd_field(config_path, format, out_path, nx, nz, window_arg);
        if (verify->parsed())
            return cmd_verify(config_path, suite, out_path, seed, seed_opt->count() > 0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
