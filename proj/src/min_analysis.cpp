#include "cuboid/min_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cuboid/errors.hpp"

namespace cuboid {

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kGoldenWidth = 1e-4;

void require_mid_interval(double lo, double hi, const char* what) {
  if (!(lo >= kThird && lo < hi && hi <= 1.0))
    throw DomainError(std::string(what) + ": need 1/3 <= A_min < A_max <= 1");
}

SumSpec row_spec(const SumSpec& base, double s, std::optional<double> tol) {
  SumSpec spec = base;
  if (tol || !base.cutoff) {
    spec.cutoff.reset();
    spec.target_tol = tol.value_or(default_scan_tolerance(s));
  }
  return spec;
}

}  // namespace

TheoremReport verify_theorem(double s, double tol_first, double tol_second_rel, const TheoremOptions& opts) {
  if (!std::isfinite(s) || !(s > 1.5)) throw DomainError("verify_theorem: s must exceed 3/2");
  if (!(tol_first > 0.0) || !(tol_second_rel > 0.0))
    throw DomainError("verify_theorem: tolerances must be positive");
  if (!(opts.h_first > 0.0) || !(opts.h_second > 0.0))
    throw DomainError("verify_theorem: finite-difference steps must be positive");

  const AnisotropyParam half = classify(0.5);
  int n = 0;
  if (opts.cutoff) {
    n = *opts.cutoff;
  } else {
    n = cutoff_for_tolerance(half, s, 1e-10, SumCoordinates::Permuted).value_or(64);
    n = std::clamp(n, 16, 64);
  }
  SumSpec spec = SumSpec::with_cutoff(n);
  spec.enforce_gate = false;
  spec.workers = opts.workers;
  spec.kernel = opts.kernel;

  const auto L = [&](double a) { return epstein_zeta_transformed(classify(a), s, spec).value; };
  const double h1 = opts.h_first, h2 = opts.h_second;

  TheoremReport r;
  r.s = s;
  r.cutoff = n;
  r.first_deriv_fd = (L(0.5 + h1) - L(0.5 - h1)) / (2.0 * h1);
  r.second_deriv_fd = (L(0.5 + h2) - 2.0 * L(0.5) + L(0.5 - h2)) / (h2 * h2);

  const ZetaValue d1 = dLdA(half, s, spec);
  r.first_deriv_analytic = d1.value;
  r.first_deriv_analytic_tail = d1.tail_bound;
  r.first_deriv_symmetrized = dLdA_at_half_symmetrized(s, spec).value;

  const ZetaValue d2 = d2LdA2_at_half(s, spec);
  r.second_deriv_analytic = d2.value;
  r.second_deriv_analytic_tail = d2.tail_bound;
  const ZetaValue d2g = d2LdA2(half, s, spec);
  r.second_deriv_general = d2g.value;
  r.second_deriv_general_tail = d2g.tail_bound;

  const auto add = [&](std::string name, double value, double bound, bool pass) {
    r.checks.push_back({std::move(name), value, bound, pass});
  };
  add("first_deriv_symmetrized", std::abs(r.first_deriv_symmetrized), 1e-10,
      std::abs(r.first_deriv_symmetrized) <= 1e-10);
  add("first_deriv_analytic", std::abs(d1.value), d1.tail_bound + 1e-9,
      std::abs(d1.value) <= d1.tail_bound + 1e-9);
  add("first_deriv_fd", std::abs(r.first_deriv_fd), tol_first, std::abs(r.first_deriv_fd) <= tol_first);
  add("second_deriv_margin", d2.value - d2.tail_bound, 0.0, d2.value - d2.tail_bound > 0.0);
  add("second_deriv_fd_positive", r.second_deriv_fd, 0.0, r.second_deriv_fd > 0.0);
  const double rel = std::abs(d2.value - r.second_deriv_fd) / std::abs(d2.value);
  add("second_deriv_fd_agreement", rel, tol_second_rel, rel <= tol_second_rel);
  const double formula_gap = std::abs(d2.value - d2g.value);
  const double formula_bound = d2.tail_bound + d2g.tail_bound;
  add("second_deriv_formulas", formula_gap, formula_bound, formula_gap <= formula_bound);

  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  return r;
}

double default_scan_tolerance(double s) { return s >= 4.0 ? 1e-8 : 1e-6; }

std::vector<double> uniform_grid(double min, double max, int steps) {
  if (steps < 2) throw DomainError("grid: steps must be >= 2");
  if (!(min < max)) throw DomainError("grid: min must be below max");
  std::vector<double> g(static_cast<std::size_t>(steps));
  const double width = max - min;
  for (int k = 0; k < steps; ++k) g[k] = min + width * k / (steps - 1);
  g.back() = max;
  return g;
}

ScanTable scan_L_at(double s, std::vector<double> As, std::optional<double> tol, const SumSpec& base) {
  std::sort(As.begin(), As.end());
  ScanTable t;
  t.s = s;
  if (!As.empty()) t.grid = {As.front(), As.back(), static_cast<int>(As.size())};
  const SumSpec spec = row_spec(base, s, tol);
  t.rows.reserve(As.size());
  for (double a : As) {
    const ZetaValue z = epstein_zeta(classify(a), s, spec);
    t.rows.push_back({a, z.value, z.tail_bound, z.cutoff_used});
  }
  return t;
}

ScanTable scan_L(double s, double A_min, double A_max, int steps, std::optional<double> tol,
                 const SumSpec& base) {
  require_mid_interval(A_min, A_max, "scan_L");
  ScanTable t = scan_L_at(s, uniform_grid(A_min, A_max, steps), tol, base);
  t.grid = {A_min, A_max, steps};
  return t;
}

ArgminResult argmin_scan(double s, double A_min, double A_max, int steps, std::optional<double> tol,
                         const SumSpec& base) {
  require_mid_interval(A_min, A_max, "argmin_scan");
  if (steps < 8) throw DomainError("argmin_scan: steps must be >= 8");
  const std::vector<double> grid = uniform_grid(A_min, A_max, steps);

  SumSpec spec = base;
  if (tol || !base.cutoff) {
    const double rel = tol.value_or(default_scan_tolerance(s));
    int n = kMinCutoff;
    for (double a : grid) {
      const auto need = cutoff_for_tolerance(classify(a), s, rel);
      if (!need) throw UnattainableTolerance("argmin_scan: tolerance unattainable at A=" + std::to_string(a));
      n = std::max(n, *need);
    }
    spec.target_tol.reset();
    spec.cutoff = n;
  }
  const auto f = [&](double a) { return epstein_zeta(classify(a), s, spec); };

  std::vector<ZetaValue> vals;
  vals.reserve(grid.size());
  for (double a : grid) vals.push_back(f(a));
  const auto best = std::min_element(vals.begin(), vals.end(),
                                     [](const ZetaValue& x, const ZetaValue& y) { return x.value < y.value; });
  const std::size_t i = static_cast<std::size_t>(best - vals.begin());

  ArgminResult out;
  out.cutoff = best->cutoff_used;
  if (i == 0 || i + 1 == grid.size()) {
    out.A_star = grid[i];
    out.L_star = best->value;
    out.tail_bound = best->tail_bound;
    out.at_boundary = true;
    return out;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = grid[i - 1], hi = grid[i + 1];
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double fc = f(c).value, fd = f(d).value;
  while (hi - lo > kGoldenWidth) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c).value;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d).value;
    }
  }
  out.A_star = 0.5 * (lo + hi);
  const ZetaValue z = f(out.A_star);
  out.L_star = z.value;
  out.tail_bound = z.tail_bound;
  return out;
}

std::vector<DensityRow> density_table(double A_min, double A_max, int steps) {
  if (!(A_min > 0.0)) throw DomainError("density_table: A_min must be positive");
  std::vector<DensityRow> rows;
  for (double a : uniform_grid(A_min, A_max, steps)) rows.push_back({a, packing_density(classify(a))});
  return rows;
}

}  // namespace cuboid
