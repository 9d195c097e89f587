#pragma once

#include <cstddef>
#include <vector>

namespace funcwave {

// Shape-preserving cubic Hermite interpolant (Fritsch/Carlson style slope
// limiting).  Monotone data produces a monotone interpolant, which is what
// tabulated depth profiles and tabulated Abel seeds need.
class MonotoneCubic {
  public:
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

    // Evaluation clamps to the sample range; domain checks are the caller's
    // business.
    double operator()(double x) const;
    double derivative(double x) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }

  private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, m_;
};

}  // namespace funcwave
