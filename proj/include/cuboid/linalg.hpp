#pragma once

#include <array>

namespace cuboid {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double determinant(const Mat3& m);

/// Eigenvalues of a symmetric 3x3 matrix in ascending order (closed-form
/// trigonometric solution; only the upper triangle is read).
std::array<double, 3> symmetric_eigenvalues(const Mat3& m);

/// Lower bound on the smallest eigenvalue of a symmetric matrix, padded
/// against the rounding of the closed-form solution.
double certified_min_eigenvalue(const Mat3& m);

/// Upper bound on max |x'Qx| / x'Mx over x != 0, for symmetric Q and
/// positive definite M.  Throws DomainError if M is not positive definite.
double certified_relative_bound(const Mat3& q, const Mat3& m);

bool is_positive_definite(const Mat3& m);

}  // namespace cuboid
