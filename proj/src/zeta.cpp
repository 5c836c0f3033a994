#include "cuboid/zeta.hpp"

#include <cmath>
#include <string>

#include "cuboid/cube_sum.hpp"
#include "cuboid/errors.hpp"

namespace cuboid {

namespace {

constexpr IntLinear kDirectA{1, 1, 0}, kDirectB{0, 1, 1}, kDirectE{1, 0, 1};
// (I, J, K) = (i - j, -k, j):  I + J = i - j - k,  J + K = j - k,  I + K = i
constexpr IntLinear kSwapA{1, -1, -1}, kSwapB{1, 0, 0}, kSwapE{0, 1, -1};

constexpr IntQuadratic kNumIJ{0, 0, 0, 1, 1, -2};  // ij + ik - 2jk
constexpr IntQuadratic kNumIK{0, 0, 0, 1, -2, 1};  // ij + jk - 2ik
constexpr IntQuadratic kNumJK{0, 0, 0, -2, 1, 1};  // jk + ik - 2ij

struct Series {
  SeriesPlan plan;
  std::array<double, kMaxChannels> prefactor{};
  std::array<double, kMaxChannels> tail_factor{};  // |prefactor| kappa^p
  double lambda = 0.0;
  double s = 0.0;
};

Mat3 form_matrix(const SeriesPlan& plan) {
  const std::array<std::array<double, 3>, 3> v{{
      {double(plan.a.ci), double(plan.a.cj), double(plan.a.ck)},
      {double(plan.b.ci), double(plan.b.cj), double(plan.b.ck)},
      {double(plan.e.ci), double(plan.e.cj), double(plan.e.ck)},
  }};
  const std::array<double, 3> w{plan.A, 1.0, 1.0};
  Mat3 m{};
  for (int f = 0; f < 3; ++f)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m[r][c] += w[f] * v[f][r] * v[f][c] / plan.norm;
  return m;
}

Mat3 numerator_matrix(const IntQuadratic& q) {
  return {{{double(q.ii), 0.5 * double(q.ij), 0.5 * double(q.ik)},
           {0.5 * double(q.ij), double(q.jj), 0.5 * double(q.jk)},
           {0.5 * double(q.ik), 0.5 * double(q.jk), double(q.kk)}}};
}

void require_convergent(double s) {
  if (!std::isfinite(s) || !(s > 1.5))
    throw DomainError("s must exceed 3/2 (the lattice sum diverges for s <= 3/2), got s=" + std::to_string(s));
}

void require_mid(const AnisotropyParam& p, const char* what) {
  if (p.regime() != Regime::Mid)
    throw DomainError(std::string(what) + ": requires 1/3 <= A <= 1, got A=" + std::to_string(p.A()));
}

Series make_series(double A, double norm, IntLinear a, IntLinear b, IntLinear e, double s,
                   const SumSpec& spec) {
  Series out;
  out.s = s;
  out.plan.A = A;
  out.plan.norm = norm;
  out.plan.a = a;
  out.plan.b = b;
  out.plan.e = e;
  out.plan.exponent = ExponentPlan::make(s);
  out.plan.accumulation = spec.accumulation;
  out.plan.channels = 0;
  out.lambda = certified_min_eigenvalue(form_matrix(out.plan));
  if (!(out.lambda > 0.0)) throw DomainError("quadratic form is not positive definite");
  return out;
}

void add_channel(Series& series, const IntQuadratic& num, int power, double prefactor) {
  const int ch = series.plan.channels++;
  series.plan.numerator[ch] = num;
  series.plan.power[ch] = power;
  series.prefactor[ch] = prefactor;
  double factor = std::abs(prefactor);
  if (power > 0) {
    const double kappa = certified_relative_bound(numerator_matrix(num), form_matrix(series.plan));
    factor *= std::pow(kappa, power);
  }
  series.tail_factor[ch] = factor;
}

double series_tail(const Series& series, int N) {
  double f = 0.0;
  for (int ch = 0; ch < series.plan.channels; ++ch) f += series.tail_factor[ch];
  return f * shell_tail_bound(series.lambda, series.s, N);
}

double magnitude(const Series& series, const CubeSums& sums) {
  double m = 0.0;
  for (int ch = 0; ch < series.plan.channels; ++ch) m += std::abs(series.prefactor[ch]) * sums.ch[ch].abs_sum;
  return m;
}

std::optional<int> try_cutoff(const Series& series, double abs_tol) {
  double f = 0.0;
  for (int ch = 0; ch < series.plan.channels; ++ch) f += series.tail_factor[ch];
  const double expo = 2.0 * series.s - 3.0;
  // f * 24/expo * R^(-expo) <= abs_tol
  const double radius = std::pow(24.0 * f / (expo * abs_tol), 1.0 / expo);
  const double guess = std::ceil((radius + 0.5) / std::sqrt(series.lambda) - 1.0);
  if (!(guess <= kMaxCutoff)) return std::nullopt;
  int n = std::max(kMinCutoff, static_cast<int>(guess));
  while (series_tail(series, n) > abs_tol)
    if (++n > kMaxCutoff) return std::nullopt;
  return n;
}

int choose_cutoff(const Series& series, double abs_tol) {
  if (auto n = try_cutoff(series, abs_tol)) return *n;
  throw UnattainableTolerance("target tolerance " + std::to_string(abs_tol) +
                              " (absolute) needs a cutoff beyond the cap N=" + std::to_string(kMaxCutoff));
}

double pilot_magnitude(const Series& series, const ShellKernel& kernel) {
  return magnitude(series, sum_cube(series.plan, kPilotCutoff, kernel, 1));
}

struct Evaluated {
  CubeSums sums;
  ZetaValue z;
};

Evaluated evaluate(const Series& series, const SumSpec& spec) {
  spec.validate();
  const ShellKernel& kernel = select_kernel(spec.kernel);
  const int workers = resolve_workers(spec.workers);

  int n = 0;
  if (spec.cutoff) {
    n = *spec.cutoff;
  } else {
    n = choose_cutoff(series, *spec.target_tol * pilot_magnitude(series, kernel));
  }

  Evaluated out;
  out.sums = sum_cube(series.plan, n, kernel, workers);
  ZetaValue& z = out.z;
  for (int ch = 0; ch < series.plan.channels; ++ch) z.value += series.prefactor[ch] * out.sums.ch[ch].value();
  if (series.plan.channels == 1 && series.prefactor[0] == 1.0) {
    const ChannelSum& c = out.sums.ch[0];
    z.residual = (c.sum - z.value) + c.comp;
  }
  z.magnitude = magnitude(series, out.sums);
  z.tail_bound = series_tail(series, n);
  z.cutoff_used = n;
  z.term_count = out.sums.term_count;
  z.target_tol = spec.target_tol;
  z.requested_cutoff = spec.cutoff;
  if (spec.enforce_gate && !(z.tail_bound < kReportingGate * z.magnitude))
    throw UnattainableTolerance("tail bound " + std::to_string(z.tail_bound) + " at cutoff N=" +
                                std::to_string(n) + " is not below 1e-3 of the series magnitude " +
                                std::to_string(z.magnitude));
  return out;
}

Series transformed_series(double A, double s, const SumSpec& spec) {
  return make_series(A, A + 1.0, kSwapA, kSwapB, kSwapE, s, spec);
}

}  // namespace

void SumSpec::validate() const {
  if (cutoff.has_value() == target_tol.has_value())
    throw DomainError("SumSpec: exactly one of cutoff and target_tol must be set");
  if (cutoff && (*cutoff < kMinCutoff || *cutoff > kMaxCutoff))
    throw DomainError("SumSpec: cutoff must lie in [" + std::to_string(kMinCutoff) + ", " +
                      std::to_string(kMaxCutoff) + "], got " + std::to_string(*cutoff));
  if (target_tol && !(std::isfinite(*target_tol) && *target_tol > 0.0))
    throw DomainError("SumSpec: target_tol must be positive and finite");
  if (workers < 0) throw DomainError("SumSpec: workers must be >= 0");
}

double shell_tail_bound(double lambda_min, double s, int N) {
  require_convergent(s);
  if (!(lambda_min > 0.0)) throw DomainError("tail bound: lambda_min must be positive");
  if (N < 1) throw DomainError("tail bound: N must be >= 1");
  const double radius = std::sqrt(lambda_min) * (N + 1.0) - 0.5;
  if (!(radius > 0.0)) throw DomainError("tail bound: cutoff too small for this form");
  return 24.0 / (2.0 * s - 3.0) * std::pow(radius, 3.0 - 2.0 * s);
}

double gram_lambda_min(const AnisotropyParam& p) {
  return certified_min_eigenvalue(build_lattice(p).gram.entries);
}

double tail_bound(const AnisotropyParam& p, double s, int N) {
  require_convergent(s);
  if (N < kMinCutoff) throw DomainError("tail_bound: N must be >= " + std::to_string(kMinCutoff));
  return shell_tail_bound(gram_lambda_min(p), s, N);
}

std::optional<int> cutoff_for_tolerance(const AnisotropyParam& p, double s, double rel_tol,
                                        SumCoordinates coords) {
  require_convergent(s);
  if (!(std::isfinite(rel_tol) && rel_tol > 0.0)) throw DomainError("cutoff_for_tolerance: tolerance must be positive");
  const SumSpec spec;
  if (coords == SumCoordinates::Permuted) require_mid(p, "cutoff_for_tolerance");
  Series series = (coords == SumCoordinates::Direct)
                      ? make_series(p.A(), form_denominator(p), kDirectA, kDirectB, kDirectE, s, spec)
                      : transformed_series(p.A(), s, spec);
  add_channel(series, {}, 0, 1.0);
  return try_cutoff(series, rel_tol * pilot_magnitude(series, select_kernel(KernelChoice::Scalar)));
}

ZetaValue epstein_zeta(const AnisotropyParam& p, double s, const SumSpec& spec) {
  require_convergent(s);
  Series series = make_series(p.A(), form_denominator(p), kDirectA, kDirectB, kDirectE, s, spec);
  add_channel(series, {}, 0, 1.0);
  return evaluate(series, spec).z;
}

ZetaValue epstein_zeta_transformed(const AnisotropyParam& p, double s, const SumSpec& spec) {
  require_convergent(s);
  require_mid(p, "epstein_zeta_transformed");
  Series series = transformed_series(p.A(), s, spec);
  add_channel(series, {}, 0, 1.0);
  return evaluate(series, spec).z;
}

ZetaValue dLdA(const AnisotropyParam& p, double s, const SumSpec& spec) {
  require_convergent(s);
  require_mid(p, "dLdA");
  const double a1 = p.A() + 1.0;
  Series series = transformed_series(p.A(), s, spec);
  add_channel(series, kNumIJ, 1, 2.0 * s / (a1 * a1));
  return evaluate(series, spec).z;
}

SymmetrizedDerivative dLdA_at_half_symmetrized(double s, const SumSpec& spec) {
  require_convergent(s);
  const double pref = 8.0 * s / 9.0;
  Series series = transformed_series(0.5, s, spec);
  add_channel(series, kNumIJ, 1, pref);
  add_channel(series, kNumIK, 1, pref);
  add_channel(series, kNumJK, 1, pref);
  SumSpec ungated = spec;
  ungated.enforce_gate = false;
  const Evaluated ev = evaluate(series, ungated);

  SymmetrizedDerivative out;
  double total = 0.0;
  for (int ch = 0; ch < 3; ++ch) {
    out.series[ch] = pref * ev.sums.ch[ch].value();
    total += ev.sums.ch[ch].value();
  }
  out.value = pref * total / 3.0;
  out.cutoff_used = ev.z.cutoff_used;
  out.term_count = ev.z.term_count;
  // every term is at most kappa in magnitude because D >= 1 on the lattice
  const double kappa = series.tail_factor[0] / pref;
  out.rounding_budget = 1e-12 * static_cast<double>(out.term_count) * pref * kappa;
  return out;
}

ZetaValue d2LdA2(const AnisotropyParam& p, double s, const SumSpec& spec) {
  require_convergent(s);
  require_mid(p, "d2LdA2");
  const double a1 = p.A() + 1.0;
  Series series = transformed_series(p.A(), s, spec);
  add_channel(series, kNumIJ, 1, -4.0 * s / (a1 * a1 * a1));
  add_channel(series, kNumIJ, 2, 4.0 * s * (s + 1.0) / (a1 * a1 * a1 * a1));
  return evaluate(series, spec).z;
}

ZetaValue d2LdA2_at_half(double s, const SumSpec& spec) {
  require_convergent(s);
  Series series = transformed_series(0.5, s, spec);
  add_channel(series, kNumJK, 2, 64.0 * s * (s + 1.0) / 81.0);
  return evaluate(series, spec).z;
}

}  // namespace cuboid
