#pragma once

// Knuth two-sum accumulation.  Branch-free so that the SIMD kernels can use
// the identical update lane by lane.

namespace cuboid {

struct TwoSumAccumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    const double bp = t - sum;
    comp += (sum - (t - bp)) + (x - bp);
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace cuboid
