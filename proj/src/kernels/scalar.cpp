#include <cmath>

#include "cuboid/compensated.hpp"
#include "cuboid/kernels.hpp"
#include "term.hpp"

namespace cuboid {

using namespace kernel_detail;

namespace {

struct ScalarAccumulators {
  std::array<TwoSumAccumulator, kMaxChannels> acc{};
  std::array<double, kMaxChannels> abs{};
};

inline void visit(const SeriesPlan& plan, std::int64_t i, std::int64_t j, std::int64_t k,
                  ScalarAccumulators& st) {
  const double a = static_cast<double>(plan.a(i, j, k));
  const double b = static_cast<double>(plan.b(i, j, k));
  const double e = static_cast<double>(plan.e(i, j, k));
  const double r = base_ratio(plan, a, b, e);
  const double rs = raise(r, plan.exponent);
  for (int ch = 0; ch < plan.channels; ++ch) {
    const int p = plan.power[ch];
    const double n = p ? static_cast<double>(plan.numerator[ch](i, j, k)) : 1.0;
    const double term = channel_term(rs, r, p, n);
    if (plan.accumulation == Accumulation::Compensated)
      st.acc[ch].add(term);
    else
      st.acc[ch].sum += term;
    st.abs[ch] += std::abs(term);
  }
}

}  // namespace

double reference_term(const SeriesPlan& plan, int ch, std::int64_t i, std::int64_t j, std::int64_t k) {
  const double r = base_ratio(plan, static_cast<double>(plan.a(i, j, k)),
                              static_cast<double>(plan.b(i, j, k)),
                              static_cast<double>(plan.e(i, j, k)));
  const int p = plan.power[ch];
  const double n = p ? static_cast<double>(plan.numerator[ch](i, j, k)) : 1.0;
  return channel_term(raise(r, plan.exponent), r, p, n);
}

void scalar_shell(const SeriesPlan& plan, int m, ShellSums& out) {
  ScalarAccumulators st;
  const std::int64_t mm = m;
  for (std::int64_t i = -mm; i <= mm; ++i) {
    const bool i_face = (i == -mm || i == mm);
    for (std::int64_t j = -mm; j <= mm; ++j) {
      if (i_face || j == -mm || j == mm) {
        for (std::int64_t k = -mm; k <= mm; ++k) visit(plan, i, j, k, st);
      } else {
        visit(plan, i, j, -mm, st);
        visit(plan, i, j, mm, st);
      }
    }
  }
  for (int ch = 0; ch < plan.channels; ++ch) {
    out.ch[ch].sum = st.acc[ch].sum;
    out.ch[ch].comp = st.acc[ch].comp;
    out.ch[ch].abs_sum = st.abs[ch];
  }
}

}  // namespace cuboid
