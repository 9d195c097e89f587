#include "funcwave/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "funcwave/errors.hpp"

namespace funcwave {

namespace {

// Non-centered three-point rule for the boundary slopes, clamped so the end
// segments cannot overshoot (same construction as the classic PCHIP edge
// case).
double edge_slope(double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return m;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
    if (x_.size() < 2 || x_.size() != y_.size())
        throw InvalidParams("tabulated data needs at least two (x, y) pairs");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw InvalidParams("tabulated abscissae must be strictly increasing");

    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    m_.assign(n, 0.0);
    if (n == 2) {
        m_[0] = m_[1] = del[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] == 0.0 || del[i] == 0.0 || (del[i - 1] > 0.0) != (del[i] > 0.0)) {
            m_[i] = 0.0;
        } else {
            // Weighted harmonic mean of the neighbouring secants; keeps the
            // interpolant monotone on monotone data.
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    m_[0] = edge_slope(h[0], h[1], del[0], del[1]);
    m_[n - 1] = edge_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double MonotoneCubic::operator()(double x) const {
    x = std::clamp(x, x_.front(), x_.back());
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
    x = std::clamp(x, x_.front(), x_.back());
    const std::size_t i = segment(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double g00 = (6.0 * t2 - 6.0 * t) / h;
    const double g10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double g01 = (-6.0 * t2 + 6.0 * t) / h;
    const double g11 = 3.0 * t2 - 2.0 * t;
    return g00 * y_[i] + g10 * m_[i] + g01 * y_[i + 1] + g11 * m_[i + 1];
}

}  // namespace funcwave
