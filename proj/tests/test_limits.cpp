#include <doctest.h>

#include <cmath>

#include "cuboid/errors.hpp"
#include "cuboid/limits.hpp"
#include "oracles.hpp"

using namespace cuboid;

TEST_CASE("finite sublattice generators") {
  const auto pts = finite_sublattice_vectors(5.0, 3);
  CHECK(pts.size() == 49);
  const double h = std::sqrt(0.5);
  for (const SublatticePoint& p : pts) {
    if (p.c1 == 1 && p.c3 == 0) {
      CHECK(p.x[0] == 0.0);
      CHECK(std::abs(p.x[1] - h) <= 1e-16);
      CHECK(std::abs(p.x[2] + h) <= 1e-16);
    }
    if (p.c1 == 1 && p.c3 == 1) {
      CHECK(std::abs(p.x[1] - std::sqrt(2.0)) <= 1e-15);
      CHECK(p.x[2] == 0.0);
    }
  }
  CHECK_THROWS_AS(finite_sublattice_vectors(1.0, 3), DomainError);
  CHECK_THROWS_AS(finite_sublattice_vectors(0.5, 3), DomainError);
}

TEST_CASE("finite sublattice does not depend on A and is isometric to Z^2") {
  const auto a = finite_sublattice_vectors(2.0, 3), b = finite_sublattice_vectors(1000.0, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].x == b[i].x);
  CHECK(isometry_defect(a) <= 1e-13);
}

TEST_CASE("finite sublattice vectors are lattice vectors of the normalized lattice") {
  const AnisotropyParam p = classify(9.0);
  const CuboidalLattice lat = build_lattice(p);
  for (const SublatticePoint& q : finite_sublattice_vectors(9.0, 2)) {
    Vec3 y{};
    for (int r = 0; r < 3; ++r) y[r] = q.c1 * lat.basis[0][r] - q.c1 * lat.basis[1][r] + q.c3 * lat.basis[2][r];
    for (int r = 0; r < 3; ++r) CHECK(std::abs(y[r] - q.x[r]) <= 1e-14);
  }
}

TEST_CASE("square lattice sum matches a brute-force double loop") {
  for (double s : {1.5, 2.0, 3.0, 6.0}) {
    for (int n : {10, 20}) {
      SumSpec spec = SumSpec::with_cutoff(n);
      spec.enforce_gate = false;
      const ZetaValue z = square_lattice_zeta(s, spec);
      CHECK(std::abs(z.value - oracle::Z2(s, n)) <= 1e-14L * z.value);
    }
  }
}

TEST_CASE("square lattice sum obeys its own tail bound") {
  for (double s : {2.0, 6.0}) {
    const int n = s == 2.0 ? 200 : 20;
    const ZetaValue a = square_lattice_zeta(s, SumSpec::with_cutoff(n));
    const ZetaValue b = square_lattice_zeta(s, SumSpec::with_cutoff(2 * n));
    CHECK(b.value >= a.value);
    CHECK(b.value - a.value <= a.tail_bound);
  }
}

TEST_CASE("square lattice sum is invariant under the loop-order swap") {
  for (double s : {2.0, 3.7, 6.0}) {
    const ZetaValue a = square_lattice_zeta(s, SumSpec::with_cutoff(50), LoopOrder::RowMajor);
    const ZetaValue b = square_lattice_zeta(s, SumSpec::with_cutoff(50), LoopOrder::ColumnMajor);
    CHECK(std::abs(a.value - b.value) <= 2e-16 * a.value);
  }
}

TEST_CASE("square lattice sum at s = 6 against its product formula") {
  // 4 zeta(s) beta(s) with the Dirichlet beta summed directly
  long double beta = 0;
  for (int k = 0; k < 200; ++k) beta += (k % 2 ? -1.0L : 1.0L) / std::pow(2.0L * k + 1, 6.0L);
  const long double want = 4 * std::riemann_zeta(6.0) * beta;
  const ZetaValue z = square_lattice_zeta(6.0, SumSpec::with_tolerance(1e-14));
  CHECK(std::abs(z.value - want) <= z.tail_bound + 1e-15L);
  CHECK_THROWS_AS(square_lattice_zeta(1.0, SumSpec::with_cutoff(10)), DomainError);
}

TEST_CASE("A to infinity approaches the square lattice") {
  for (double s : {3.0, 6.0}) {
    CAPTURE(s);
    const LimitReport r = verify_A_to_inf(s, {4.0, 16.0, 64.0});
    CHECK(r.converged);
    CHECK(r.direction == LimitDirection::AToInfinity);
    REQUIRE(r.probes.size() == 3);
    CHECK(r.probes[1].deviation < r.probes[0].deviation);
    CHECK(r.probes[2].deviation < r.probes[1].deviation);
    if (s == 6.0) CHECK(r.probes[2].deviation < 1e-3);
    // deviations fall like A^(1-s): ratio over a factor 4 in A is 4^(s-1)
    CHECK(r.probes[1].deviation / r.probes[2].deviation >= std::pow(4.0, s - 1.0) / 2.0);
    for (const LimitProbe& p : r.probes) CHECK(p.tail_bound < 1e-2 * p.deviation);
  }
}

TEST_CASE("A to infinity validates probes") {
  CHECK_THROWS_AS(verify_A_to_inf(6.0, {16.0, 4.0}), DomainError);
  CHECK_THROWS_AS(verify_A_to_inf(6.0, {0.5, 4.0}), DomainError);
  CHECK_THROWS_AS(verify_A_to_inf(1.4, {4.0}), DomainError);
  CHECK_THROWS_AS(verify_A_to_inf(6.0, {}), DomainError);
}

TEST_CASE("A to zero collapses onto a line") {
  const LimitReport r = verify_A_to_zero({0.2, 0.1, 0.01, 0.001});
  CHECK(r.converged);
  for (const LimitProbe& p : r.probes) CHECK(p.deviation <= 4.0 * p.probe / (1.0 + p.probe) * (1 + 1e-12));
  CHECK_THROWS_AS(verify_A_to_zero({0.1, 0.2}), DomainError);
  CHECK_THROWS_AS(verify_A_to_zero({0.5}), DomainError);
}

TEST_CASE("s to infinity approaches the kissing number") {
  for (double a : {0.5, 1.0}) {
    CAPTURE(a);
    const LimitReport r = verify_s_to_inf(a, {10.0, 20.0, 50.0});
    CHECK(r.converged);
    for (const LimitProbe& p : r.probes) CHECK(p.deviation > 0.0);
  }
  const LimitReport half = verify_s_to_inf(0.5, {20.0});
  CHECK(std::abs(half.probes[0].value - 8.0190273087) <= 1e-8 * 8.019);
  const LimitReport third = verify_s_to_inf(1.0 / 3.0, {20.0});
  CHECK(std::abs(third.probes[0].value - 10.00118) <= 1e-4 * 10.0);
  const LimitReport fcc = verify_s_to_inf(1.0, {20.0});
  CHECK(std::abs(fcc.probes[0].value - 12.0000057) <= 1e-7 * 12.0);
}

TEST_CASE("s to infinity: deviation at s = 50 is carried below double rounding of L") {
  // L(1; 50) - 12 is dominated by the six vectors of norm 2
  const LimitReport r = verify_s_to_inf(1.0, {50.0});
  const double want = 6.0 * std::pow(2.0, -50.0) + 24.0 * std::pow(3.0, -50.0);
  CHECK(std::abs(r.probes[0].deviation - want) <= 1e-3 * want);
}

TEST_CASE("L at s = 50 against the kissing number") {
  // within 1e-3 at bcc; at A = 0.4 and 0.75 a second shell lies only ~14%
  // above the minimum, so the excess is a few 1e-3 and is checked exactly
  const ZetaValue half = epstein_zeta(classify(0.5), 50.0, SumSpec::with_tolerance(1e-12));
  CHECK(std::abs(half.value - 8.0) <= 1e-3);
  for (double a : {0.4, 0.5, 0.75}) {
    const ZetaValue z = epstein_zeta(classify(a), 50.0, SumSpec::with_tolerance(1e-12));
    const long double d = oracle::min_raw_form(a);
    long double excess = 0;
    oracle::cube(4, [&](int i, int j, int k) {
      const long double g = oracle::raw_form(a, i, j, k) / d;
      if (g > 1 + 1e-12L) excess += std::pow(g, -50.0L);
    });
    CHECK(std::abs((z.value - kissing_number(classify(a))) - excess) <= 1e-6L * excess + 1e-15L);
  }
}

TEST_CASE("s to infinity validates its inputs") {
  CHECK_THROWS_AS(verify_s_to_inf(0.2, {10.0}), DomainError);
  CHECK_THROWS_AS(verify_s_to_inf(2.0, {10.0}), DomainError);
  CHECK_THROWS_AS(verify_s_to_inf(0.5, {20.0, 10.0}), DomainError);
}
