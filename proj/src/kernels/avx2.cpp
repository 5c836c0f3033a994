#include <immintrin.h>

#include "cuboid/kernels.hpp"

namespace {

struct VecAvx2 {
  static constexpr int width = 4;
  using Mask = __m256d;
  __m256d v;

  static VecAvx2 broadcast(double x) { return {_mm256_set1_pd(x)}; }
  static VecAvx2 iota() { return {_mm256_set_pd(3.0, 2.0, 1.0, 0.0)}; }
  static VecAvx2 load(const double* p) { return {_mm256_load_pd(p)}; }
  void store(double* p) const { _mm256_store_pd(p, v); }

  friend VecAvx2 operator+(VecAvx2 x, VecAvx2 y) { return {_mm256_add_pd(x.v, y.v)}; }
  friend VecAvx2 operator-(VecAvx2 x, VecAvx2 y) { return {_mm256_sub_pd(x.v, y.v)}; }
  friend VecAvx2 operator*(VecAvx2 x, VecAvx2 y) { return {_mm256_mul_pd(x.v, y.v)}; }
  friend VecAvx2 operator/(VecAvx2 x, VecAvx2 y) { return {_mm256_div_pd(x.v, y.v)}; }

  static VecAvx2 sqrt(VecAvx2 x) { return {_mm256_sqrt_pd(x.v)}; }
  static VecAvx2 abs(VecAvx2 x) { return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), x.v)}; }
  static Mask less(VecAvx2 x, VecAvx2 y) { return _mm256_cmp_pd(x.v, y.v, _CMP_LT_OQ); }
  static VecAvx2 select(Mask m, VecAvx2 t, VecAvx2 f) { return {_mm256_blendv_pd(f.v, t.v, m)}; }
};

}  // namespace

#include "simd_shell.inl"

namespace cuboid {

void avx2_shell(const SeriesPlan& plan, int m, ShellSums& out) { simd_shell<VecAvx2>(plan, m, out); }

}  // namespace cuboid
