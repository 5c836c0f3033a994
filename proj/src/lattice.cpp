#include "cuboid/lattice.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cuboid/errors.hpp"

namespace cuboid {

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kBoundarySnap = 1e-12;

// A snapped onto 1/3 or 1 when it is within kBoundarySnap of either.
double snapped(double a) {
  if (std::abs(a - kThird) < kBoundarySnap) return kThird;
  if (std::abs(a - 1.0) < kBoundarySnap) return 1.0;
  return a;
}

double integer_form(double a, const IntVec3& c) {
  const double s = static_cast<double>(c[0] + c[1]);
  const double t = static_cast<double>(c[1] + c[2]);
  const double w = static_cast<double>(c[0] + c[2]);
  // t^2 + w^2 is grouped first so that swapping c[0] and c[1] is exact
  return a * (s * s) + (t * t + w * w);
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Low: return "low";
    case Regime::Mid: return "mid";
    case Regime::High: return "high";
  }
  return "?";
}

AnisotropyParam classify(double A) {
  if (!std::isfinite(A)) throw DomainError("A must be finite");
  if (A <= 0.0) throw DomainError("A must be positive, got " + std::to_string(A));
  if (A < kThird) return {A, Regime::Low};
  if (A <= 1.0) return {A, Regime::Mid};
  return {A, Regime::High};
}

double normalization_scale_squared(const AnisotropyParam& p) {
  const double a = p.A();
  switch (p.regime()) {
    case Regime::Low: return 1.0 / (4.0 * a);
    case Regime::Mid: return 1.0 / (a + 1.0);
    case Regime::High: return 0.5;
  }
  return 0.0;
}

double normalization_scale(const AnisotropyParam& p) {
  switch (p.regime()) {
    case Regime::Low: return 1.0 / (2.0 * std::sqrt(p.A()));
    case Regime::Mid: return 1.0 / std::sqrt(p.A() + 1.0);
    case Regime::High: return 1.0 / std::numbers::sqrt2;
  }
  return 0.0;
}

double form_denominator(const AnisotropyParam& p) {
  switch (p.regime()) {
    case Regime::Low: return 4.0 * p.A();
    case Regime::Mid: return p.A() + 1.0;
    case Regime::High: return 2.0;
  }
  return 1.0;
}

std::array<Vec3, 3> basis_vectors(const AnisotropyParam& p, double v) {
  const double u = v * std::sqrt(p.A());
  return {{{u, v, 0.0}, {u, 0.0, v}, {0.0, v, v}}};
}

GramMatrix gram_matrix(const AnisotropyParam& p, double v) {
  const double a = p.A();
  const double v2 = v * v;
  return {{{{v2 * (a + 1.0), v2 * a, v2},
            {v2 * a, v2 * (a + 1.0), v2},
            {v2, v2, 2.0 * v2}}}};
}

CuboidalLattice build_lattice(const AnisotropyParam& p) {
  const double a = p.A();
  const double v = normalization_scale(p);
  // closed-form scale of the normalized Gram matrix: 1/(4A), 1/(A+1), 1/2
  const double d = form_denominator(p);
  GramMatrix g{{{{(a + 1.0) / d, a / d, 1.0 / d},
                 {a / d, (a + 1.0) / d, 1.0 / d},
                 {1.0 / d, 1.0 / d, 2.0 / d}}}};
  return CuboidalLattice{p, v, v * std::sqrt(a), basis_vectors(p, v), g};
}

double quadratic_form(const AnisotropyParam& p, const IntVec3& c) {
  return integer_form(p.A(), c) / form_denominator(p);
}

double minimum_norm(const AnisotropyParam& p, double v) {
  if (!(v > 0.0)) throw DomainError("minimum_norm: v must be positive");
  const double v2 = v * v;
  switch (p.regime()) {
    case Regime::Low: return 4.0 * p.A() * v2;
    case Regime::Mid: return (p.A() + 1.0) * v2;
    case Regime::High: return 2.0 * v2;
  }
  return 0.0;
}

double enumerated_minimum_norm(const AnisotropyParam& p, double v, int window) {
  if (window < 1) throw DomainError("enumerated_minimum_norm: window must be >= 1");
  const GramMatrix g = gram_matrix(p, v);
  double best = std::numeric_limits<double>::infinity();
  for (int i = -window; i <= window; ++i)
    for (int j = -window; j <= window; ++j)
      for (int k = -window; k <= window; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        const Vec3 c{double(i), double(j), double(k)};
        double q = 0.0;
        for (int r = 0; r < 3; ++r) q += c[r] * dot(g.entries[r], c);
        best = std::min(best, q);
      }
  return best;
}

double packing_density(const AnisotropyParam& p) {
  const double a = p.A();
  constexpr double pi = std::numbers::pi;
  switch (p.regime()) {
    case Regime::Low: return 2.0 * pi * a / 3.0;
    case Regime::Mid: return pi / 12.0 * std::sqrt((a + 1.0) * (a + 1.0) * (a + 1.0) / a);
    case Regime::High: return pi / 6.0 * std::sqrt(2.0 / a);
  }
  return 0.0;
}

double density_derivative(const AnisotropyParam& p) {
  const double a = p.A();
  if (p.regime() != Regime::Mid || a == kThird || a == 1.0)
    throw DomainError("density_derivative: A must lie strictly inside (1/3, 1)");
  return std::numbers::pi / 24.0 * std::sqrt((a + 1.0) / (a * a * a)) * (2.0 * a - 1.0);
}

int kissing_number(const AnisotropyParam& p, double tol, int window) {
  if (!(tol > 0.0)) throw DomainError("kissing_number: tol must be positive");
  if (window < 1) throw DomainError("kissing_number: window must be >= 1");
  const AnisotropyParam q = classify(snapped(p.A()));
  int count = 0;
  for (std::int64_t i = -window; i <= window; ++i)
    for (std::int64_t j = -window; j <= window; ++j)
      for (std::int64_t k = -window; k <= window; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        if (std::abs(quadratic_form(q, {i, j, k}) - 1.0) < tol) ++count;
      }
  return count;
}

int tabulated_kissing_number(const AnisotropyParam& p) {
  const double a = snapped(p.A());
  if (a == kThird) return 10;
  if (a == 1.0) return 12;
  switch (p.regime()) {
    case Regime::Low: return 2;
    case Regime::Mid: return 8;
    case Regime::High: return 4;
  }
  return 0;
}

}  // namespace cuboid
