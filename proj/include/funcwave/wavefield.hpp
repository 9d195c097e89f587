#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "funcwave/schroder.hpp"

namespace funcwave {

struct Rect {
    double x_lo = 0.0, x_hi = 1.0;
    double z_lo = -1.0, z_hi = 0.0;
};

// Stream function psi(x,z) = f(x - z/nu) - f(x + z/nu); psi(x,0) = 0
// identically and psi is odd in z.
struct StreamField {
    WaveProfileFunction f;
    double nu = 1.0;
    double flux = 0.0;  // psi on the bottom boundary

    double psi(double x, double z) const;  // OutOfExtensionDomain when a
                                           // characteristic leaves f's domain
};

StreamField extend_field(const WaveProfileFunction& f, double nu);

// Uniform lattice over a window; nodes below the bottom (z < -d(x)) or
// outside the profile domain store exact 0 and mask 0.
struct FieldGrid {
    Rect window;
    int nx = 0, nz = 0;
    std::vector<double> values;             // row-major, x fastest
    std::vector<unsigned char> inside_mask;

    double x_at(int i) const;  // exact window bounds at the edge columns
    double z_at(int j) const;  // j=0 is the bottom row, j=nz-1 the top
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + i;
    }
};

// Concurrent over grid rows; sample_grid_serial is the reference
// implementation producing bit-identical values on one thread.
FieldGrid sample_grid(const StreamField& field, const DepthProfile& profile,
                      const Rect& window, int nx, int nz);
FieldGrid sample_grid_serial(const StreamField& field, const DepthProfile& profile,
                             const Rect& window, int nx, int nz);

struct ResidualReport {
    long samples = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double argmax_x = std::numeric_limits<double>::quiet_NaN();
    double argmax_z = std::numeric_limits<double>::quiet_NaN();  // NaN for 1-D sweeps
};

// |psi(x, -d(x)) - flux| over n abscissae spread across the profile's window.
ResidualReport boundary_residual(const StreamField& field, const DepthProfile& profile,
                                 int n);

// Max |central-difference wave operator| over an interior probe lattice.  The
// x and z steps are h and h/2: equal steps make the stencil exact on every
// field of this characteristic form at nu=1, which would hide the expected
// O(h^2) truncation behavior.
double pde_residual(const StreamField& field, const Rect& window, double h);

// Cells (lower-left node index) whose four corners are all inside and carry
// both a strictly positive and a strictly negative value; such cells straddle
// a nodal curve.
std::vector<std::pair<int, int>> nodal_cells(const FieldGrid& grid);

// Header "x,z,psi,inside", one node per row, 17 significant digits.
void write_csv(const FieldGrid& grid, std::ostream& out);

}  // namespace funcwave
