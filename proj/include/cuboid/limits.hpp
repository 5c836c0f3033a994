#pragma once

// Degenerations of the family: A -> infinity (the finite part of the
// normalized lattice is a square lattice), A -> 0 (a line) and s -> infinity
// (L tends to the kissing number).

#include <string>
#include <string_view>
#include <vector>

#include "cuboid/zeta.hpp"

namespace cuboid {

enum class LimitDirection { AToInfinity, AToZero, SToInfinity };

std::string_view to_string(LimitDirection d);

struct LimitProbe {
  double probe = 0.0;      // A or s
  double deviation = 0.0;
  double tail_bound = 0.0;  // truncation uncertainty of the deviation
  double value = 0.0;       // L at the probe (0 for the A -> 0 check)
  int cutoff = 0;
};

struct LimitReport {
  LimitDirection direction = LimitDirection::AToInfinity;
  double fixed = 0.0;  // s for the A limits, A for the s limit
  std::vector<LimitProbe> probes;
  double threshold = 0.0;
  std::string threshold_rule;
  bool converged = false;
};

struct SublatticePoint {
  int c1 = 0;
  int c3 = 0;
  Vec3 x{};
};

/// Points c1 (0, v, -v) + c3 (0, v, v), v = 1/sqrt(2), for |c1|, |c3| <= W:
/// the lattice vectors with c2 = -c1, whose length does not depend on A.
std::vector<SublatticePoint> finite_sublattice_vectors(double A, int window = 3);

/// Largest |dist(x_a, x_b) - dist((c1,c3)_a, (c1,c3)_b)| over all pairs.
double isometry_defect(const std::vector<SublatticePoint>& pts);

enum class LoopOrder { RowMajor, ColumnMajor };

/// sum' (m^2 + n^2)^(-s) over max(|m|,|n|) <= N, with tail bound
/// 4 R^(2-2s) / (s-1), R = N + 1/2.
ZetaValue square_lattice_zeta(double s, const SumSpec& spec, LoopOrder order = LoopOrder::RowMajor);

double square_lattice_tail_bound(double s, int N);

/// L_N(A) - Z2_N over a shared cutoff N for each probe.  The difference is
/// the sum over lattice points off the square sublattice, which behaves like
/// (2 pi zeta(2s-2)/(s-1)) (2/A)^(s-1).  Converged when the deviations fall
/// strictly and the last is below twice that estimate.
LimitReport verify_A_to_inf(double s, const std::vector<double>& probes, const SumSpec& base = {});

/// For decreasing probes in (0, 1/3): 1 / (smallest norm off the line
/// t (1, 1, -1)), which tends to 0 while the line keeps norms t^2.
LimitReport verify_A_to_zero(const std::vector<double>& probes, int window = 3);

/// L(A; s) - kiss(A) along increasing s.  Converged when the deviations are
/// positive, fall strictly and the last is below 100 mu2^(-s_max), mu2 the
/// second-smallest norm.
LimitReport verify_s_to_inf(double A, const std::vector<double>& s_probes, const SumSpec& base = {});

}  // namespace cuboid
