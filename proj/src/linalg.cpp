#include "cuboid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cuboid/errors.hpp"

namespace cuboid {

namespace {

// Relative padding applied to eigenvalue estimates.  The trigonometric
// solution is accurate to a few ulps of the spectral radius.
constexpr double kEigenPad = 1e-12;

}  // namespace

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<double, 3> symmetric_eigenvalues(const Mat3& m) {
  const double a = m[0][0], b = m[1][1], c = m[2][2];
  const double d = m[0][1], e = m[0][2], f = m[1][2];
  const double off = d * d + e * e + f * f;
  std::array<double, 3> ev;
  if (off == 0.0) {
    ev = {a, b, c};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double q = (a + b + c) / 3.0;
  const double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * off;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 bm = m;
  for (int i = 0; i < 3; ++i) {
    bm[i][i] -= q;
    for (int j = 0; j < 3; ++j) bm[i][j] /= p;
  }
  // symmetrize from the upper triangle
  bm[1][0] = bm[0][1];
  bm[2][0] = bm[0][2];
  bm[2][1] = bm[1][2];
  const double r = std::clamp(determinant(bm) / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double largest = q + 2.0 * p * std::cos(phi);
  const double smallest = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  ev = {smallest, 3.0 * q - largest - smallest, largest};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double certified_min_eigenvalue(const Mat3& m) {
  const auto ev = symmetric_eigenvalues(m);
  const double scale = std::max(std::abs(ev[0]), std::abs(ev[2]));
  return ev[0] - kEigenPad * scale;
}

bool is_positive_definite(const Mat3& m) {
  const double m1 = m[0][0];
  const double m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return m1 > 0.0 && m2 > 0.0 && determinant(m) > 0.0;
}

double certified_relative_bound(const Mat3& q, const Mat3& m) {
  if (!is_positive_definite(m)) throw DomainError("relative bound: matrix is not positive definite");
  // Cholesky factor m = L L'
  Mat3 l{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double acc = m[i][j];
      for (int k = 0; k < j; ++k) acc -= l[i][k] * l[j][k];
      l[i][j] = (i == j) ? std::sqrt(acc) : acc / l[j][j];
    }
  }
  // inverse of the lower-triangular factor
  Mat3 li{};
  for (int i = 0; i < 3; ++i) {
    li[i][i] = 1.0 / l[i][i];
    for (int j = 0; j < i; ++j) {
      double acc = 0.0;
      for (int k = j; k < i; ++k) acc -= l[i][k] * li[k][j];
      li[i][j] = acc / l[i][i];
    }
  }
  // c = Li q Li'
  Mat3 tmp{}, c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) tmp[i][j] += li[i][k] * q[k][j];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += tmp[i][k] * li[j][k];
  const auto ev = symmetric_eigenvalues(c);
  const double rho = std::max(std::abs(ev[0]), std::abs(ev[2]));
  // the factorization and the triple product each lose a few ulps
  return rho * (1.0 + 1e-10) + 1e-300;
}

}  // namespace cuboid
