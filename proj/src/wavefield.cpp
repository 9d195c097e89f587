#include "funcwave/wavefield.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace funcwave {

namespace {

// One node of the lattice; shared by the serial and concurrent paths so they
// are bit-identical.
void sample_node(const StreamField& field, const DepthProfile& profile,
                 const FieldGrid& grid, int i, int j, double& value,
                 unsigned char& inside) {
    const double x = grid.x_at(i);
    const double z = grid.z_at(j);
    bool in = profile.domain.contains(x, 1e-12);
    if (in) {
        const double depth = profile.depth(x);
        in = z >= -depth - 1e-12;
    }
    inside = in ? 1 : 0;
    value = in ? field.psi(x, z) : 0.0;
}

FieldGrid sample_impl(const StreamField& field, const DepthProfile& profile,
                      const Rect& window, int nx, int nz, bool parallel) {
    if (nx < 2 || nz < 2) throw InvalidParams("grid needs nx, nz >= 2");
    FieldGrid grid;
    grid.window = window;
    grid.nx = nx;
    grid.nz = nz;
    grid.values.assign(static_cast<std::size_t>(nx) * nz, 0.0);
    grid.inside_mask.assign(static_cast<std::size_t>(nx) * nz, 0);

    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < nz; ++j) {
        try {
            for (int i = 0; i < nx; ++i)
                sample_node(field, profile, grid, i, j, grid.values[grid.index(i, j)],
                            grid.inside_mask[grid.index(i, j)]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

}  // namespace

double StreamField::psi(double x, double z) const {
    if (z == 0.0) return 0.0;  // exact, and keeps singular endpoints untouched
    const double u = x - z / nu;
    const double v = x + z / nu;
    if (!f.domain.contains(u, 1e-12) || !f.domain.contains(v, 1e-12))
        throw OutOfExtensionDomain("characteristic argument outside the solution domain");
    return f.eval(u) - f.eval(v);
}

StreamField extend_field(const WaveProfileFunction& f, double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw InvalidParams("nu must be positive and finite");
    return {f, nu, f.flux};
}

double FieldGrid::x_at(int i) const {
    if (i == 0) return window.x_lo;
    if (i == nx - 1) return window.x_hi;
    return window.x_lo + i * (window.x_hi - window.x_lo) / (nx - 1);
}

double FieldGrid::z_at(int j) const {
    if (j == 0) return window.z_lo;
    if (j == nz - 1) return window.z_hi;
    return window.z_lo + j * (window.z_hi - window.z_lo) / (nz - 1);
}

FieldGrid sample_grid(const StreamField& field, const DepthProfile& profile,
                      const Rect& window, int nx, int nz) {
    return sample_impl(field, profile, window, nx, nz, true);
}

FieldGrid sample_grid_serial(const StreamField& field, const DepthProfile& profile,
                             const Rect& window, int nx, int nz) {
    return sample_impl(field, profile, window, nx, nz, false);
}

ResidualReport boundary_residual(const StreamField& field, const DepthProfile& profile,
                                 int n) {
    if (n < 2) throw InvalidParams("boundary sweep needs at least 2 samples");
    Interval w = profile.window;
    if (!w.bounded()) w = Interval::closed(-2.0, 2.0);
    w.lo = std::max(w.lo, profile.domain.lo);
    w.hi = std::min(w.hi, profile.domain.hi);

    ResidualReport report;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = w.lo + (i + 0.5) * w.length() / n;
        const double r = std::abs(field.psi(x, -profile.d(x)) - field.flux);
        sum += r;
        if (r > report.max_abs || report.samples == 0) {
            report.max_abs = r;
            report.argmax_x = x;
            report.argmax_z = -profile.d(x);
        }
        ++report.samples;
    }
    report.mean_abs = sum / n;
    return report;
}

double pde_residual(const StreamField& field, const Rect& window, double h) {
    if (!(h > 0.0)) throw InvalidParams("step must be positive");
    const double hz = 0.5 * h;
    const double x0 = window.x_lo + h, x1 = window.x_hi - h;
    const double z0 = window.z_lo + hz, z1 = window.z_hi - hz;
    if (!(x1 >= x0 && z1 >= z0)) throw InvalidParams("window too small for the stencil");

    const double nu2 = field.nu * field.nu;
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double x = x0 + i * (x1 - x0) / 20.0;
        for (int j = 0; j <= 10; ++j) {
            const double z = z0 + j * (z1 - z0) / 10.0;
            const double center = field.psi(x, z);
            const double dxx =
                (field.psi(x + h, z) - 2.0 * center + field.psi(x - h, z)) / (h * h);
            const double dzz =
                (field.psi(x, z + hz) - 2.0 * center + field.psi(x, z - hz)) / (hz * hz);
            worst = std::max(worst, std::abs(dxx - nu2 * dzz));
        }
    }
    return worst;
}

std::vector<std::pair<int, int>> nodal_cells(const FieldGrid& grid) {
    std::vector<std::pair<int, int>> cells;
    for (int j = 0; j + 1 < grid.nz; ++j) {
        for (int i = 0; i + 1 < grid.nx; ++i) {
            const std::size_t k00 = grid.index(i, j), k10 = grid.index(i + 1, j);
            const std::size_t k01 = grid.index(i, j + 1), k11 = grid.index(i + 1, j + 1);
            if (!(grid.inside_mask[k00] && grid.inside_mask[k10] && grid.inside_mask[k01] &&
                  grid.inside_mask[k11]))
                continue;
            const double a = grid.values[k00], b = grid.values[k10];
            const double c = grid.values[k01], d = grid.values[k11];
            const double lo = std::min(std::min(a, b), std::min(c, d));
            const double hi = std::max(std::max(a, b), std::max(c, d));
            if (lo < 0.0 && hi > 0.0) cells.emplace_back(i, j);
        }
    }
    return cells;
}

void write_csv(const FieldGrid& grid, std::ostream& out) {
    out << "x,z,psi,inside\n";
    char line[128];
    for (int j = 0; j < grid.nz; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t k = grid.index(i, j);
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%d\n", grid.x_at(i),
                          grid.z_at(j), grid.values[k], int(grid.inside_mask[k]));
            out << line;
        }
    }
}

}  // namespace funcwave
