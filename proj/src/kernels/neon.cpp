#include <arm_neon.h>

#include "cuboid/kernels.hpp"

namespace {

struct VecNeon {
  static constexpr int width = 2;
  using Mask = uint64x2_t;
  float64x2_t v;

  static VecNeon broadcast(double x) { return {vdupq_n_f64(x)}; }
  static VecNeon iota() {
    const double lanes[2] = {0.0, 1.0};
    return {vld1q_f64(lanes)};
  }
  static VecNeon load(const double* p) { return {vld1q_f64(p)}; }
  void store(double* p) const { vst1q_f64(p, v); }

  friend VecNeon operator+(VecNeon x, VecNeon y) { return {vaddq_f64(x.v, y.v)}; }
  friend VecNeon operator-(VecNeon x, VecNeon y) { return {vsubq_f64(x.v, y.v)}; }
  friend VecNeon operator*(VecNeon x, VecNeon y) { return {vmulq_f64(x.v, y.v)}; }
  friend VecNeon operator/(VecNeon x, VecNeon y) { return {vdivq_f64(x.v, y.v)}; }

  static VecNeon sqrt(VecNeon x) { return {vsqrtq_f64(x.v)}; }
  static VecNeon abs(VecNeon x) { return {vabsq_f64(x.v)}; }
  static Mask less(VecNeon x, VecNeon y) { return vcltq_f64(x.v, y.v); }
  static VecNeon select(Mask m, VecNeon t, VecNeon f) { return {vbslq_f64(m, t.v, f.v)}; }
};

}  // namespace

#include "simd_shell.inl"

namespace cuboid {

void neon_shell(const SeriesPlan& plan, int m, ShellSums& out) { simd_shell<VecNeon>(plan, m, out); }

}  // namespace cuboid
