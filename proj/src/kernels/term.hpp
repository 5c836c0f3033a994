#pragma once

// Per-term arithmetic shared by every kernel.  The vector kernels repeat
// exactly these steps lane-wise; keep the two in sync.

#include <cmath>

#include "cuboid/kernels.hpp"

namespace cuboid::kernel_detail {

inline double ipow(double base, unsigned n) {
  double result = 1.0;
  for (;;) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n == 0) break;
    base *= base;
  }
  return result;
}

inline double raise(double r, const ExponentPlan& e) {
  switch (e.kind) {
    case ExponentPlan::Kind::Integer: return ipow(r, e.n);
    case ExponentPlan::Kind::HalfInteger: return ipow(r, e.n) * std::sqrt(r);
    case ExponentPlan::Kind::General: return std::pow(r, e.s);
  }
  return 0.0;
}

// r = norm / (A a^2 + (b^2 + e^2))
inline double base_ratio(const SeriesPlan& plan, double a, double b, double e) {
  const double q = plan.A * (a * a) + (b * b + e * e);
  return plan.norm / q;
}

// n^p r^(s+p) given rs = r^s
inline double channel_term(double rs, double r, int p, double n) {
  double t = rs;
  for (int q = 0; q < p; ++q) t = t * r;
  if (p == 0) return t;
  const double np = (p == 1) ? n : n * n;
  return t * np;
}

}  // namespace cuboid::kernel_detail
