// Times the parallel grid sampler against the serial reference on a dense
// standing-wave field and confirms the outputs match bit for bit.
//
//   bench_field [nx] [nz] [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "funcwave/abel.hpp"
#include "funcwave/charmap.hpp"
#include "funcwave/wavefield.hpp"

using namespace funcwave;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int nx = argc > 1 ? std::atoi(argv[1]) : 1200;
    const int nz = argc > 2 ? std::atoi(argv[2]) : 600;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
    if (nx < 2 || nz < 2 || reps < 1) {
        std::fprintf(stderr, "usage: bench_field [nx>=2] [nz>=2] [reps>=1]\n");
        return 2;
    }

    const DepthProfile profile =
        make_profile(ProfileKind::hyperbolic_lens, {{"c", 2.0}});
    const AbelSolution lens =
        closed_form_abel(ProfileKind::hyperbolic_lens, {{"c", 2.0}});
    const StreamField field = extend_field(
        compose_periodic(lens, make_periodic(PeriodicKind::sine, lens.Q)), 1.0);
    const Rect window{-1.0, 1.0, -0.27, 0.0};

    std::printf("grid %dx%d, %d repetition(s)\n", nx, nz, reps);

    double best_serial = 0.0, best_parallel = 0.0;
    FieldGrid serial, parallel;
    for (int rep = 0; rep < reps; ++rep) {
        auto t0 = clock_type::now();
        serial = sample_grid_serial(field, profile, window, nx, nz);
        const double ts = seconds_since(t0);

        t0 = clock_type::now();
        parallel = sample_grid(field, profile, window, nx, nz);
        const double tp = seconds_since(t0);

        if (rep == 0 || ts < best_serial) best_serial = ts;
        if (rep == 0 || tp < best_parallel) best_parallel = tp;
        std::printf("  rep %d: serial %.3fs, parallel %.3fs\n", rep + 1, ts, tp);
    }

    const bool identical =
        serial.values.size() == parallel.values.size() &&
        std::memcmp(serial.values.data(), parallel.values.data(),
                    serial.values.size() * sizeof(double)) == 0 &&
        serial.inside_mask == parallel.inside_mask;

    std::printf("best: serial %.3fs, parallel %.3fs, speedup %.2fx\n", best_serial,
                best_parallel, best_serial / best_parallel);
    std::printf("outputs bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
