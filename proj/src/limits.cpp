#include "cuboid/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuboid/compensated.hpp"
#include "cuboid/errors.hpp"
#include "kernels/term.hpp"

namespace cuboid {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool strictly_decreasing(const std::vector<LimitProbe>& probes) {
  for (std::size_t i = 1; i < probes.size(); ++i)
    if (!(probes[i].deviation < probes[i - 1].deviation)) return false;
  return true;
}

void require_probes(const std::vector<double>& probes, const char* what) {
  if (probes.empty()) throw DomainError(std::string(what) + ": no probes given");
  for (std::size_t i = 1; i < probes.size(); ++i)
    if (!(probes[i] > probes[i - 1])) throw DomainError(std::string(what) + ": probes must be increasing");
}

struct SquareSums {
  double sum = 0.0;
  double residual = 0.0;
  double abs_sum = 0.0;
};

SquareSums square_sum(const ExponentPlan& plan, int N, LoopOrder order, Accumulation acc) {
  TwoSumAccumulator total;
  double comp = 0.0;
  for (int m = 1; m <= N; ++m) {
    TwoSumAccumulator shell;
    for (int x = -m; x <= m; ++x) {
      const bool edge = (x == -m || x == m);
      for (int y = -m; y <= m; y += edge ? 1 : 2 * m) {
        const int a = (order == LoopOrder::RowMajor) ? x : y;
        const int b = (order == LoopOrder::RowMajor) ? y : x;
        const double q = static_cast<double>(a * a + b * b);
        const double t = kernel_detail::raise(1.0 / q, plan);
        if (acc == Accumulation::Compensated) shell.add(t);
        else shell.sum += t;
      }
    }
    if (acc == Accumulation::Compensated) {
      total.add(shell.sum);
      comp += shell.comp;
    } else {
      total.sum += shell.sum;
    }
  }
  SquareSums out;
  out.sum = total.sum + (total.comp + comp);
  out.residual = (total.sum - out.sum) + (total.comp + comp);
  out.abs_sum = out.sum;
  return out;
}

}  // namespace

std::string_view to_string(LimitDirection d) {
  switch (d) {
    case LimitDirection::AToInfinity: return "A_TO_INF";
    case LimitDirection::AToZero: return "A_TO_ZERO";
    case LimitDirection::SToInfinity: return "S_TO_INF";
  }
  return "?";
}

std::vector<SublatticePoint> finite_sublattice_vectors(double A, int window) {
  if (!std::isfinite(A) || !(A > 1.0))
    throw DomainError("finite_sublattice_vectors: requires A > 1, got A=" + std::to_string(A));
  if (window < 1) throw DomainError("finite_sublattice_vectors: window must be >= 1");
  const double v = std::sqrt(0.5);
  std::vector<SublatticePoint> pts;
  for (int c1 = -window; c1 <= window; ++c1)
    for (int c3 = -window; c3 <= window; ++c3)
      pts.push_back({c1, c3, {0.0, v * c1 + v * c3, v * c3 - v * c1}});
  return pts;
}

double isometry_defect(const std::vector<SublatticePoint>& pts) {
  double worst = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d3 = 0.0;
      for (int r = 0; r < 3; ++r) d3 += (pts[a].x[r] - pts[b].x[r]) * (pts[a].x[r] - pts[b].x[r]);
      const double dc1 = pts[a].c1 - pts[b].c1, dc3 = pts[a].c3 - pts[b].c3;
      worst = std::max(worst, std::abs(std::sqrt(d3) - std::sqrt(dc1 * dc1 + dc3 * dc3)));
    }
  }
  return worst;
}

double square_lattice_tail_bound(double s, int N) {
  if (!std::isfinite(s) || !(s > 1.0)) throw DomainError("square lattice sum needs s > 1, got s=" + std::to_string(s));
  if (N < 1) throw DomainError("square_lattice_tail_bound: N must be >= 1");
  return 4.0 * std::pow(N + 0.5, 2.0 - 2.0 * s) / (s - 1.0);
}

ZetaValue square_lattice_zeta(double s, const SumSpec& spec, LoopOrder order) {
  if (!std::isfinite(s) || !(s > 1.0))
    throw DomainError("square_lattice_zeta: s must exceed 1 (the sum diverges for s <= 1), got s=" +
                      std::to_string(s));
  spec.validate();
  const ExponentPlan plan = ExponentPlan::make(s);
  int n = 0;
  if (spec.cutoff) {
    n = *spec.cutoff;
  } else {
    const double abs_tol = *spec.target_tol * square_sum(plan, kPilotCutoff, order, spec.accumulation).abs_sum;
    const double radius = std::pow(4.0 / ((s - 1.0) * abs_tol), 1.0 / (2.0 * s - 2.0));
    const double guess = std::ceil(radius - 0.5);
    if (!(guess <= kMaxCutoff))
      throw UnattainableTolerance("square_lattice_zeta: tolerance needs a cutoff beyond N=" +
                                  std::to_string(kMaxCutoff));
    n = std::max(kMinCutoff, static_cast<int>(guess));
    while (square_lattice_tail_bound(s, n) > abs_tol)
      if (++n > kMaxCutoff)
        throw UnattainableTolerance("square_lattice_zeta: tolerance needs a cutoff beyond N=" +
                                    std::to_string(kMaxCutoff));
  }
  const SquareSums sums = square_sum(plan, n, order, spec.accumulation);
  ZetaValue z;
  z.value = sums.sum;
  z.residual = sums.residual;
  z.magnitude = sums.abs_sum;
  z.tail_bound = square_lattice_tail_bound(s, n);
  z.cutoff_used = n;
  z.term_count = static_cast<std::int64_t>(2 * n + 1) * (2 * n + 1) - 1;
  z.target_tol = spec.target_tol;
  z.requested_cutoff = spec.cutoff;
  if (spec.enforce_gate && !(z.tail_bound < kReportingGate * z.magnitude))
    throw UnattainableTolerance("square_lattice_zeta: tail bound not below 1e-3 of the sum at N=" +
                                std::to_string(n));
  return z;
}

LimitReport verify_A_to_inf(double s, const std::vector<double>& probes, const SumSpec& base) {
  if (!std::isfinite(s) || !(s > 1.5)) throw DomainError("verify_A_to_inf: s must exceed 3/2");
  require_probes(probes, "verify_A_to_inf");
  for (double a : probes)
    if (!std::isfinite(a) || !(a > 1.0)) throw DomainError("verify_A_to_inf: probes must exceed 1");

  int n = 0;
  if (base.cutoff && !base.target_tol) {
    n = *base.cutoff;
  } else {
    const double rel = base.target_tol.value_or(s >= 4.0 ? 1e-12 : 1e-6);
    for (double a : probes) {
      const auto need = cutoff_for_tolerance(classify(a), s, rel);
      if (!need) throw UnattainableTolerance("verify_A_to_inf: tolerance unattainable at A=" + std::to_string(a));
      n = std::max(n, *need);
    }
  }
  SumSpec spec = base;
  spec.target_tol.reset();
  spec.cutoff = n;
  const ZetaValue z2 = square_lattice_zeta(s, spec);

  LimitReport r;
  r.direction = LimitDirection::AToInfinity;
  r.fixed = s;
  for (double a : probes) {
    const ZetaValue l = epstein_zeta(classify(a), s, spec);
    const double dev = (l.value - z2.value) + (l.residual - z2.residual);
    // the discarded off-sublattice terms are a subset of L's discarded tail
    r.probes.push_back({a, std::abs(dev), l.tail_bound, l.value, n});
  }
  const double estimate = 2.0 * kPi * std::riemann_zeta(2.0 * s - 2.0) / (s - 1.0);
  r.threshold = 2.0 * estimate * std::pow(2.0 / probes.back(), s - 1.0);
  r.threshold_rule = "2 * 2 pi zeta(2s-2)/(s-1) * (2/A_max)^(s-1)";
  r.converged = strictly_decreasing(r.probes) && r.probes.back().deviation < r.threshold;
  return r;
}

LimitReport verify_A_to_zero(const std::vector<double>& probes, int window) {
  if (probes.empty()) throw DomainError("verify_A_to_zero: no probes given");
  if (window < 1) throw DomainError("verify_A_to_zero: window must be >= 1");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double a = probes[i];
    if (!std::isfinite(a) || !(a > 0.0 && a < 1.0 / 3.0))
      throw DomainError("verify_A_to_zero: probes must lie in (0, 1/3)");
    if (i > 0 && !(a < probes[i - 1])) throw DomainError("verify_A_to_zero: probes must be decreasing");
  }

  LimitReport r;
  r.direction = LimitDirection::AToZero;
  bool line_exact = true;
  for (double a : probes) {
    const AnisotropyParam p = classify(a);
    double off_line = std::numeric_limits<double>::infinity();
    for (int i = -window; i <= window; ++i)
      for (int j = -window; j <= window; ++j)
        for (int k = -window; k <= window; ++k) {
          if (i == 0 && j == 0 && k == 0) continue;
          if (j + k == 0 && i + k == 0) continue;
          off_line = std::min(off_line, quadratic_form(p, {i, j, k}));
        }
    for (int t = 1; t <= window; ++t)
      if (std::abs(quadratic_form(p, {t, t, -t}) - double(t) * t) > 1e-13 * t * t) line_exact = false;
    r.probes.push_back({a, 1.0 / off_line, 0.0, 0.0, window});
  }
  r.threshold = 8.0 * probes.back();
  r.threshold_rule = "8 A_min (off-line norms grow like 1/(4A))";
  r.converged = line_exact && strictly_decreasing(r.probes) && r.probes.back().deviation < r.threshold;
  return r;
}

LimitReport verify_s_to_inf(double A, const std::vector<double>& s_probes, const SumSpec& base) {
  const AnisotropyParam p = classify(A);
  if (p.regime() != Regime::Mid) throw DomainError("verify_s_to_inf: requires 1/3 <= A <= 1");
  require_probes(s_probes, "verify_s_to_inf");
  for (double s : s_probes)
    if (!std::isfinite(s) || !(s > 1.5)) throw DomainError("verify_s_to_inf: probes must exceed 3/2");

  const int kiss = kissing_number(p);
  double mu2 = std::numeric_limits<double>::infinity();
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j)
      for (int k = -3; k <= 3; ++k) {
        const double g = quadratic_form(p, {i, j, k});
        if (g > 1.0 + 1e-9) mu2 = std::min(mu2, g);
      }

  LimitReport r;
  r.direction = LimitDirection::SToInfinity;
  r.fixed = A;
  bool positive = true;
  for (double s : s_probes) {
    SumSpec spec = base;
    if (!spec.cutoff && !spec.target_tol) spec.target_tol = 1e-12;
    const ZetaValue l = epstein_zeta(p, s, spec);
    const double dev = (l.value - kiss) + l.residual;
    if (!(dev > 0.0)) positive = false;
    r.probes.push_back({s, std::abs(dev), l.tail_bound, l.value, l.cutoff_used});
  }
  r.threshold = 100.0 * std::pow(mu2, -s_probes.back());
  r.threshold_rule = "100 * mu2^(-s_max), mu2 = second-smallest norm";
  r.converged = positive && strictly_decreasing(r.probes) && r.probes.back().deviation < r.threshold;
  return r;
}

}  // namespace cuboid
