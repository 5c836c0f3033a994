// Lane-parallel shell kernel, instantiated once per instruction set.
//
// Include from a translation unit compiled for the target ISA after
// defining a vector wrapper V with:
//   static constexpr int width;
//   using Mask = ...;
//   static V broadcast(double);  static V iota();  static V load(const double*);
//   void store(double*) const;
//   V operator+ - * / (V, V);
//   static V sqrt(V);  static V abs(V);
//   static Mask less(V, V);  static V select(Mask, V if_true, V if_false);

#include <array>
#include <cmath>

#include "cuboid/compensated.hpp"
#include "cuboid/kernels.hpp"
#include "term.hpp"

namespace {

using cuboid::ExponentPlan;
using cuboid::kMaxChannels;
using cuboid::SeriesPlan;

template <class V>
V vipow(V base, unsigned n) {
  V result = V::broadcast(1.0);
  for (;;) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n == 0) break;
    base = base * base;
  }
  return result;
}

template <class V>
V vraise(V r, const ExponentPlan& e) {
  switch (e.kind) {
    case ExponentPlan::Kind::Integer: return vipow(r, e.n);
    case ExponentPlan::Kind::HalfInteger: return vipow(r, e.n) * V::sqrt(r);
    case ExponentPlan::Kind::General: {
      alignas(64) double lanes[V::width];
      r.store(lanes);
      for (int l = 0; l < V::width; ++l) lanes[l] = std::pow(lanes[l], e.s);
      return V::load(lanes);
    }
  }
  return r;
}

template <class V>
struct LaneState {
  std::array<V, kMaxChannels> sum, comp, abs;
  LaneState() {
    for (int c = 0; c < kMaxChannels; ++c) {
      sum[c] = V::broadcast(0.0);
      comp[c] = V::broadcast(0.0);
      abs[c] = V::broadcast(0.0);
    }
  }
};

// Terms at c0 + t*d for t = 0 .. count-1.
template <class V>
void line(const SeriesPlan& plan, const std::array<std::int64_t, 3>& c0,
          const std::array<std::int64_t, 3>& d, std::int64_t count, LaneState<V>& st) {
  const auto at = [](const auto& f, const std::array<std::int64_t, 3>& c) {
    return static_cast<double>(f(c[0], c[1], c[2]));
  };
  const std::array<std::int64_t, 3> c1{c0[0] + d[0], c0[1] + d[1], c0[2] + d[2]};

  const V a0 = V::broadcast(at(plan.a, c0)), ad = V::broadcast(at(plan.a, d));
  const V b0 = V::broadcast(at(plan.b, c0)), bd = V::broadcast(at(plan.b, d));
  const V e0 = V::broadcast(at(plan.e, c0)), ed = V::broadcast(at(plan.e, d));
  const V coefA = V::broadcast(plan.A), norm = V::broadcast(plan.norm);
  const V one = V::broadcast(1.0), zero = V::broadcast(0.0);
  const V limit = V::broadcast(static_cast<double>(count));

  // n(c0 + t d) = n0 + t (n1 + t n2), all exact integers
  std::array<V, kMaxChannels> n0, n1, n2;
  for (int ch = 0; ch < plan.channels; ++ch) {
    const double q0 = at(plan.numerator[ch], c0);
    const double q2 = at(plan.numerator[ch], d);
    const double q1 = at(plan.numerator[ch], c1) - q0 - q2;
    n0[ch] = V::broadcast(q0);
    n1[ch] = V::broadcast(q1);
    n2[ch] = V::broadcast(q2);
  }

  const bool compensated = plan.accumulation == cuboid::Accumulation::Compensated;
  for (std::int64_t t0 = 0; t0 < count; t0 += V::width) {
    const V t = V::broadcast(static_cast<double>(t0)) + V::iota();
    const auto valid = V::less(t, limit);
    const V a = a0 + t * ad;
    const V b = b0 + t * bd;
    const V e = e0 + t * ed;
    V q = coefA * (a * a) + (b * b + e * e);
    q = V::select(valid, q, one);
    const V r = norm / q;
    const V rs = vraise(r, plan.exponent);
    for (int ch = 0; ch < plan.channels; ++ch) {
      const int p = plan.power[ch];
      V term = rs;
      for (int k = 0; k < p; ++k) term = term * r;
      if (p > 0) {
        const V n = n0[ch] + t * (n1[ch] + t * n2[ch]);
        term = term * ((p == 1) ? n : n * n);
      }
      term = V::select(valid, term, zero);
      if (compensated) {
        const V s = st.sum[ch] + term;
        const V bp = s - st.sum[ch];
        st.comp[ch] = st.comp[ch] + ((st.sum[ch] - (s - bp)) + (term - bp));
        st.sum[ch] = s;
      } else {
        st.sum[ch] = st.sum[ch] + term;
      }
      st.abs[ch] = st.abs[ch] + V::abs(term);
    }
  }
}

template <class V>
void simd_shell(const SeriesPlan& plan, int m, cuboid::ShellSums& out) {
  LaneState<V> st;
  const std::int64_t mm = m;
  const std::array<std::int64_t, 3> along_k{0, 0, 1}, along_j{0, 1, 0};
  for (std::int64_t i = -mm; i <= mm; ++i) {
    if (i == -mm || i == mm) {
      for (std::int64_t j = -mm; j <= mm; ++j) line<V>(plan, {i, j, -mm}, along_k, 2 * mm + 1, st);
    } else {
      line<V>(plan, {i, -mm, -mm}, along_k, 2 * mm + 1, st);
      line<V>(plan, {i, -mm + 1, -mm}, along_j, 2 * mm - 1, st);
      line<V>(plan, {i, -mm + 1, mm}, along_j, 2 * mm - 1, st);
      line<V>(plan, {i, mm, -mm}, along_k, 2 * mm + 1, st);
    }
  }
  for (int ch = 0; ch < plan.channels; ++ch) {
    alignas(64) double s[V::width], c[V::width], ab[V::width];
    st.sum[ch].store(s);
    st.comp[ch].store(c);
    st.abs[ch].store(ab);
    cuboid::TwoSumAccumulator tot;
    double comp = 0.0, abs_sum = 0.0;
    for (int l = 0; l < V::width; ++l) {
      if (plan.accumulation == cuboid::Accumulation::Compensated)
        tot.add(s[l]);
      else
        tot.sum += s[l];
      comp += c[l];
      abs_sum += ab[l];
    }
    out.ch[ch].sum = tot.sum;
    out.ch[ch].comp = tot.comp + comp;
    out.ch[ch].abs_sum = abs_sum;
  }
}

}  // namespace
