#pragma once

// Epstein zeta function of the normalized cuboidal lattice
//
//     L(A; s) = sum'_{i,j,k} g(A; i, j, k)^(-s),     s > 3/2,
//
// and its first and second A-derivatives, by direct summation over the cube
// max(|i|,|j|,|k|) <= N with a certified bound on the discarded tail.
//
// Tail bounds.  Every lattice point y of the normalized lattice carries a
// disjoint ball of radius 1/2, and |y|^(-2s) is subharmonic away from the
// origin, so a term is at most the ball average of |y|^(-2s).  A point
// outside the cube has ||c||_2 >= N + 1 and hence |y| >= sqrt(lambda)(N+1),
// with lambda the smallest eigenvalue of the form.  Integrating over
// |y| >= R = sqrt(lambda)(N+1) - 1/2 gives
//
//     tail <= 24 / (2s - 3) * R^(3 - 2s).
//
// Derivative series have numerators n(c) with |n(c)| <= kappa * D(c), kappa
// the largest generalized eigenvalue of (n, D); a numerator power p then
// costs a factor kappa^p on the same bound.

#include <cstdint>
#include <optional>

#include "cuboid/kernels.hpp"
#include "cuboid/lattice.hpp"

namespace cuboid {

inline constexpr int kMinCutoff = 4;
inline constexpr int kMaxCutoff = 2000;
/// Results whose tail bound is not below this fraction of the series
/// magnitude are refused.
inline constexpr double kReportingGate = 1e-3;
/// Cube size of the pilot sum used to translate a relative target into an
/// absolute one.
inline constexpr int kPilotCutoff = 4;

/// Controls one summation.  Exactly one of `cutoff` and `target_tol` drives
/// the cube size.  `target_tol` is relative: the engine picks the smallest N
/// whose tail bound is at most target_tol times the series magnitude
/// (sum of |terms|, which for L is L itself).
struct SumSpec {
  std::optional<int> cutoff;
  std::optional<double> target_tol;
  Accumulation accumulation = Accumulation::Compensated;
  int workers = 0;  // 0: CUBOID_THREADS or hardware concurrency
  KernelChoice kernel = KernelChoice::Auto;
  // Disable the reporting gate for callers that report the raw truncation
  // together with its bound (theorem checks at slowly converging s).
  bool enforce_gate = true;

  static SumSpec with_cutoff(int n) {
    SumSpec s;
    s.cutoff = n;
    return s;
  }
  static SumSpec with_tolerance(double tol) {
    SumSpec s;
    s.target_tol = tol;
    return s;
  }

  void validate() const;
};

struct ZetaValue {
  double value = 0.0;
  // low-order part of a compensated single-series sum: value + residual
  // carries the sum to roughly twice working precision
  double residual = 0.0;
  double tail_bound = 0.0;  // certified bound on |value - limit| from truncation
  int cutoff_used = 0;
  std::int64_t term_count = 0;
  double magnitude = 0.0;   // sum of |terms| with prefactors
  std::optional<double> target_tol;
  std::optional<int> requested_cutoff;
};

/// Tail bound of sum' D(c)^(-s) over max|c_i| > N for a form with minimum
/// norm 1 and smallest eigenvalue `lambda_min`.  Decreasing in N.
double shell_tail_bound(double lambda_min, double s, int N);

/// Smallest eigenvalue bound of the normalized Gram matrix of `p`.
double gram_lambda_min(const AnisotropyParam& p);

/// Tail bound for epstein_zeta truncated at cube N.
double tail_bound(const AnisotropyParam& p, double s, int N);

ZetaValue epstein_zeta(const AnisotropyParam& p, double s, const SumSpec& spec);

/// L(A; s) summed in the coordinates (I, J, K) = (i - j, -k, j), where the
/// form reads i^2 + j^2 + k^2 - 2(ij + ik) A/(A+1) + 2jk (A-1)/(A+1).
/// Same limit as epstein_zeta, different truncation region.  Mid only.
ZetaValue epstein_zeta_transformed(const AnisotropyParam& p, double s, const SumSpec& spec);

/// dL/dA = 2s/(A+1)^2 sum' (ij + ik - 2jk) / D^(s+1).  Mid only.
ZetaValue dLdA(const AnisotropyParam& p, double s, const SumSpec& spec);

struct SymmetrizedDerivative {
  double value = 0.0;            // (8s/9) (S1 + S2 + S3) / 3
  std::array<double, 3> series{};  // (8s/9) S_n for the three numerators
  double rounding_budget = 0.0;  // 1e-12 * terms * largest possible term
  int cutoff_used = 0;
  std::int64_t term_count = 0;
};

/// dL/dA at A = 1/2 as the average of the series with numerators
/// ij+ik-2jk, ij+jk-2ik and jk+ik-2ij, which cancel term by term.
SymmetrizedDerivative dLdA_at_half_symmetrized(double s, const SumSpec& spec);

/// d^2L/dA^2 = -4s/(A+1)^3 sum' n/D^(s+1) + 4s(s+1)/(A+1)^4 sum' n^2/D^(s+2).
/// Mid only.
ZetaValue d2LdA2(const AnisotropyParam& p, double s, const SumSpec& spec);

/// d^2L/dA^2 at A = 1/2: (64 s(s+1)/81) sum' (jk + ik - 2ij)^2 / D^(s+2).
ZetaValue d2LdA2_at_half(double s, const SumSpec& spec);

enum class SumCoordinates { Direct, Permuted };

/// Cutoff a target_tol-driven evaluation of L would use, or nullopt when it
/// exceeds kMaxCutoff.
std::optional<int> cutoff_for_tolerance(const AnisotropyParam& p, double s, double rel_tol,
                                        SumCoordinates coords = SumCoordinates::Direct);

}  // namespace cuboid
