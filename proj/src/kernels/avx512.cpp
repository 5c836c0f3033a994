#include <immintrin.h>

#include "cuboid/kernels.hpp"

namespace {

struct VecAvx512 {
  static constexpr int width = 8;
  using Mask = __mmask8;
  __m512d v;

  static VecAvx512 broadcast(double x) { return {_mm512_set1_pd(x)}; }
  static VecAvx512 iota() { return {_mm512_set_pd(7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0)}; }
  static VecAvx512 load(const double* p) { return {_mm512_load_pd(p)}; }
  void store(double* p) const { _mm512_store_pd(p, v); }

  friend VecAvx512 operator+(VecAvx512 x, VecAvx512 y) { return {_mm512_add_pd(x.v, y.v)}; }
  friend VecAvx512 operator-(VecAvx512 x, VecAvx512 y) { return {_mm512_sub_pd(x.v, y.v)}; }
  friend VecAvx512 operator*(VecAvx512 x, VecAvx512 y) { return {_mm512_mul_pd(x.v, y.v)}; }
  friend VecAvx512 operator/(VecAvx512 x, VecAvx512 y) { return {_mm512_div_pd(x.v, y.v)}; }

  static VecAvx512 sqrt(VecAvx512 x) { return {_mm512_sqrt_pd(x.v)}; }
  static VecAvx512 abs(VecAvx512 x) { return {_mm512_abs_pd(x.v)}; }
  static Mask less(VecAvx512 x, VecAvx512 y) { return _mm512_cmp_pd_mask(x.v, y.v, _CMP_LT_OQ); }
  static VecAvx512 select(Mask m, VecAvx512 t, VecAvx512 f) { return {_mm512_mask_blend_pd(m, f.v, t.v)}; }
};

}  // namespace

#include "simd_shell.inl"

namespace cuboid {

void avx512_shell(const SeriesPlan& plan, int m, ShellSums& out) { simd_shell<VecAvx512>(plan, m, out); }

}  // namespace cuboid
