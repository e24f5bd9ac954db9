#pragma once

#include <cmath>

namespace snse {

/// Smooth cutoff: 1 on |x| <= M/2, 0 on |x| >= M, C-infinity in between
/// (standard e^{-1/x} mollifier blend).
class SmoothGate {
 public:
  explicit SmoothGate(double M) : M_(M) {}

  double level() const { return M_; }

  double operator()(double x) const {
    const double a = std::abs(x);
    if (a <= M_ / 2) return 1.0;
    if (a >= M_) return 0.0;
    const double t = (a - M_ / 2) / (M_ / 2);  // in (0,1)
    return bump(1.0 - t) / (bump(1.0 - t) + bump(t));
  }

 private:
  static double bump(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }
  double M_;
};

}  // namespace snse
