#pragma once

// Geometry of the cuboidal family Lambda(u, v) generated by
//   r1 = (u, v, 0),  r2 = (u, 0, v),  r3 = (0, v, v),   A = u^2 / v^2.
// A = 1 is fcc, 1/sqrt(2) mcc, 1/2 bcc and 1/3 acc.

#include <array>
#include <cstdint>
#include <string_view>

#include "cuboid/linalg.hpp"

namespace cuboid {

enum class Regime { Low, Mid, High };  // (0,1/3), [1/3,1], (1,inf)

std::string_view to_string(Regime r);

/// The family parameter A > 0 with its regime tag.  Construct through
/// classify(), which validates A.
class AnisotropyParam {
 public:
  double A() const { return a_; }
  Regime regime() const { return regime_; }

  friend AnisotropyParam classify(double A);

 private:
  AnisotropyParam(double a, Regime r) : a_(a), regime_(r) {}
  double a_;
  Regime regime_;
};

/// Validates A (positive, finite) and tags the regime.  A = 1/3 and A = 1
/// are Mid.
AnisotropyParam classify(double A);

using IntVec3 = std::array<std::int64_t, 3>;

struct GramMatrix {
  Mat3 entries;
  double operator()(int i, int j) const { return entries[i][j]; }
};

struct CuboidalLattice {
  AnisotropyParam param;
  double v;
  double u;
  std::array<Vec3, 3> basis;
  GramMatrix gram;
};

/// Scale v making the minimum norm equal to 1.
double normalization_scale(const AnisotropyParam& p);

/// v^2 computed directly from the regime's closed form (avoids squaring a
/// rounded square root).
double normalization_scale_squared(const AnisotropyParam& p);

/// Denominator d with g = (A(i+j)^2 + (j+k)^2 + (i+k)^2) / d for the
/// normalized lattice: 4A, A+1 or 2.
double form_denominator(const AnisotropyParam& p);

CuboidalLattice build_lattice(const AnisotropyParam& p);

/// Basis vectors of Lambda(u, v) for an arbitrary scale v.
std::array<Vec3, 3> basis_vectors(const AnisotropyParam& p, double v);

/// Gram matrix v^2 [[A+1, A, 1], [A, A+1, 1], [1, 1, 2]].
GramMatrix gram_matrix(const AnisotropyParam& p, double v);

/// Squared norm of c1 r1 + c2 r2 + c3 r3 in the normalized lattice.
double quadratic_form(const AnisotropyParam& p, const IntVec3& c);

/// mu = min ||x||^2 over nonzero x in Lambda(u, v).
double minimum_norm(const AnisotropyParam& p, double v);

/// Smallest value of c G c' over 0 < max|c_i| <= window.
double enumerated_minimum_norm(const AnisotropyParam& p, double v, int window = 2);

double packing_density(const AnisotropyParam& p);

/// d(Delta)/dA on the interior of the Mid regime.
double density_derivative(const AnisotropyParam& p);

/// Number of c with 0 < max|c_i| <= window and |g(c) - 1| < tol.  A within
/// 1e-12 of 1/3 or 1 is snapped onto the boundary before counting.
int kissing_number(const AnisotropyParam& p, double tol = 1e-9, int window = 3);

/// Regime value of the kissing number, used as a cross-check of the count.
int tabulated_kissing_number(const AnisotropyParam& p);

}  // namespace cuboid
