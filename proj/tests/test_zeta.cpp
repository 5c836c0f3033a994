#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cuboid/errors.hpp"
#include "cuboid/zeta.hpp"
#include "oracles.hpp"

using namespace cuboid;

namespace {

SumSpec cut(int n) {
  SumSpec s = SumSpec::with_cutoff(n);
  s.enforce_gate = false;
  return s;
}

}  // namespace

TEST_CASE("SumSpec needs exactly one sizing rule") {
  CHECK_THROWS_AS(SumSpec{}.validate(), DomainError);
  SumSpec both = SumSpec::with_cutoff(10);
  both.target_tol = 1e-8;
  CHECK_THROWS_AS(both.validate(), DomainError);
  CHECK_THROWS_AS(SumSpec::with_cutoff(2).validate(), DomainError);
  CHECK_THROWS_AS(SumSpec::with_cutoff(kMaxCutoff + 1).validate(), DomainError);
  CHECK_THROWS_AS(SumSpec::with_tolerance(0.0).validate(), DomainError);
  CHECK_THROWS_AS(SumSpec::with_tolerance(-1.0).validate(), DomainError);
  CHECK_NOTHROW(SumSpec::with_tolerance(1e-6).validate());
}

TEST_CASE("divergent exponents are rejected") {
  const AnisotropyParam p = classify(0.5);
  CHECK_THROWS_AS(epstein_zeta(p, 1.5, SumSpec::with_cutoff(10)), DomainError);
  CHECK_THROWS_AS(epstein_zeta(p, 1.4, SumSpec::with_cutoff(10)), DomainError);
  CHECK_THROWS_AS(epstein_zeta(p, std::nan(""), SumSpec::with_cutoff(10)), DomainError);
  CHECK_THROWS_AS(tail_bound(p, 1.5, 10), DomainError);
  CHECK_THROWS_AS(tail_bound(p, 3.0, 3), DomainError);
}

TEST_CASE("mid-only operations reject other regimes") {
  for (double a : {0.2, 2.0}) {
    const AnisotropyParam p = classify(a);
    CHECK_THROWS_AS(epstein_zeta_transformed(p, 3.0, cut(8)), DomainError);
    CHECK_THROWS_AS(dLdA(p, 3.0, cut(8)), DomainError);
    CHECK_THROWS_AS(d2LdA2(p, 3.0, cut(8)), DomainError);
  }
}

TEST_CASE("truncated sum matches the brute-force oracle in every regime") {
  for (double a : {0.15, 1.0 / 3.0, 0.5, 0.8, 1.0, 2.5})
    for (double s : {2.0, 3.5, 6.0}) {
      CAPTURE(a);
      CAPTURE(s);
      const ZetaValue z = epstein_zeta(classify(a), s, cut(10));
      const long double want = oracle::L(a, s, 10);
      CHECK(std::abs(z.value - want) <= 1e-14L * want);
      CHECK(z.cutoff_used == 10);
      CHECK(z.term_count == 21 * 21 * 21 - 1);
      CHECK(z.magnitude == doctest::Approx(z.value).epsilon(1e-14));
    }
}

TEST_CASE("permuted-coordinate sum matches its oracle") {
  for (double a : {1.0 / 3.0, 0.5, 0.9})
    for (double s : {2.5, 4.0}) {
      const ZetaValue z = epstein_zeta_transformed(classify(a), s, cut(9));
      const long double want = oracle::L_permuted(a, s, 9);
      CHECK(std::abs(z.value - want) <= 1e-14L * want);
    }
}

TEST_CASE("derivative series match the chain-rule oracle at equal cutoff") {
  for (double a : {0.4, 0.5, 0.7, 1.0})
    for (double s : {2.0, 3.0, 6.0}) {
      CAPTURE(a);
      CAPTURE(s);
      const AnisotropyParam p = classify(a);
      const ZetaValue d1 = dLdA(p, s, cut(9));
      const ZetaValue d2 = d2LdA2(p, s, cut(9));
      const long double want1 = oracle::dL_permuted(a, s, 9);
      const long double want2 = oracle::d2L_permuted(a, s, 9);
      CHECK(std::abs(d1.value - want1) <= 1e-13L * d1.magnitude);
      CHECK(std::abs(d2.value - want2) <= 1e-13L * d2.magnitude);
    }
}

TEST_CASE("derivatives at the bcc point") {
  for (double s : {2.0, 3.0, 6.0, 20.0}) {
    CAPTURE(s);
    const SymmetrizedDerivative sym = dLdA_at_half_symmetrized(s, cut(12));
    CHECK(std::abs(sym.value) <= sym.rounding_budget);
    CHECK(std::abs(sym.series[0] - sym.series[1]) <= sym.rounding_budget);
    CHECK(std::abs(sym.series[1] - sym.series[2]) <= sym.rounding_budget);
    const ZetaValue d2 = d2LdA2_at_half(s, cut(12));
    const ZetaValue d2g = d2LdA2(classify(0.5), s, cut(12));
    CHECK(d2.value > 0.0);
    CHECK(std::abs(d2.value - d2g.value) <= 1e-12 * d2.magnitude);
    CHECK(std::abs(d2.value - static_cast<double>(oracle::d2L_permuted(0.5L, s, 12))) <= 1e-13 * d2.magnitude);
  }
}

TEST_CASE("analytic derivatives agree with finite differences of the truncated sum") {
  const double h = 1e-4;
  for (double a : {0.42, 0.5, 0.63, 0.9})
    for (double s : {3.0, 6.0}) {
      const auto L = [&](double x) { return epstein_zeta_transformed(classify(x), s, cut(12)).value; };
      const double fd1 = (L(a + h) - L(a - h)) / (2 * h);
      const double fd2 = (L(a + 10 * h) - 2 * L(a) + L(a - 10 * h)) / (100 * h * h);
      const ZetaValue d1 = dLdA(classify(a), s, cut(12));
      const ZetaValue d2 = d2LdA2(classify(a), s, cut(12));
      CHECK(std::abs(d1.value - fd1) <= 1e-6 * d1.magnitude);
      CHECK(std::abs(d2.value - fd2) <= 1e-4 * d2.magnitude);
    }
}

TEST_CASE("tail bound is decreasing and bounds the discarded sum") {
  for (double a : {1.0 / 3.0, 0.5, 0.75, 1.0, 0.2, 3.0})
    for (double s : {2.0, 3.0, 6.0}) {
      const AnisotropyParam p = classify(a);
      for (int n = kMinCutoff; n < 40; ++n) CHECK(tail_bound(p, s, n + 1) < tail_bound(p, s, n));
      const long double diff = oracle::L(a, s, 24) - oracle::L(a, s, 8);
      CHECK(diff <= tail_bound(p, s, 8));
    }
}

TEST_CASE("tail bounds of derivative series bound their own truncation change") {
  for (double a : {0.45, 0.5, 0.8})
    for (double s : {2.5, 4.0}) {
      const AnisotropyParam p = classify(a);
      const ZetaValue d1 = dLdA(p, s, cut(8)), d1b = dLdA(p, s, cut(32));
      const ZetaValue d2 = d2LdA2(p, s, cut(8)), d2b = d2LdA2(p, s, cut(32));
      CHECK(std::abs(d1b.value - d1.value) <= d1.tail_bound);
      CHECK(std::abs(d2b.value - d2.value) <= d2.tail_bound);
    }
}

TEST_CASE("truncation soundness on random samples") {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> A(1.0 / 3.0, 1.0), S(2.0, 8.0);
  const int cutoffs[] = {25, 50};
  for (int trial = 0; trial < 12; ++trial) {
    const double a = A(rng), s = S(rng);
    const int n = cutoffs[trial % 2];
    CAPTURE(a);
    CAPTURE(s);
    const AnisotropyParam p = classify(a);
    const ZetaValue small = epstein_zeta(p, s, cut(n));
    const ZetaValue big = epstein_zeta(p, s, cut(2 * n));
    CHECK(big.value >= small.value);
    CHECK(big.value - small.value <= small.tail_bound);
  }
}

TEST_CASE("tolerance-driven cutoff is the smallest that meets the target") {
  for (double a : {0.5, 1.0})
    for (double s : {3.0, 6.0}) {
      const AnisotropyParam p = classify(a);
      const double tol = 1e-8;
      const ZetaValue z = epstein_zeta(p, s, SumSpec::with_tolerance(tol));
      const double abs_tol = tol * epstein_zeta(p, s, cut(kPilotCutoff)).magnitude;
      CHECK(z.tail_bound <= abs_tol);
      if (z.cutoff_used > kMinCutoff) CHECK(tail_bound(p, s, z.cutoff_used - 1) > abs_tol);
      CHECK(z.target_tol == tol);
      CHECK(!z.requested_cutoff.has_value());
      CHECK(cutoff_for_tolerance(p, s, tol) == z.cutoff_used);
    }
}

TEST_CASE("unreachable targets raise UnattainableTolerance") {
  const AnisotropyParam p = classify(0.5);
  CHECK_THROWS_AS(epstein_zeta(p, 1.6, SumSpec::with_tolerance(1e-10)), UnattainableTolerance);
  CHECK(!cutoff_for_tolerance(p, 1.6, 1e-10).has_value());
  // a small cube at s close to 3/2 trips the reporting gate
  CHECK_THROWS_AS(epstein_zeta(p, 1.6, SumSpec::with_cutoff(10)), UnattainableTolerance);
}

TEST_CASE("both summation coordinates converge to the same limit") {
  for (double a : {1.0 / 3.0, 0.5, 0.6, 0.8, 1.0})
    for (double s : {3.0, 6.0}) {
      const double tol = s >= 4.0 ? 1e-10 : 1e-6;
      const AnisotropyParam p = classify(a);
      const ZetaValue d = epstein_zeta(p, s, SumSpec::with_tolerance(tol));
      const ZetaValue t = epstein_zeta_transformed(p, s, SumSpec::with_tolerance(tol));
      CHECK(std::abs(d.value - t.value) <= d.tail_bound + t.tail_bound);
    }
}

TEST_CASE("plain and compensated accumulation agree closely") {
  SumSpec plain = cut(40);
  plain.accumulation = Accumulation::Plain;
  const AnisotropyParam p = classify(0.6);
  const double a = epstein_zeta(p, 3.0, plain).value, b = epstein_zeta(p, 3.0, cut(40)).value;
  CHECK(std::abs(a - b) <= 1e-12 * b);
}

TEST_CASE("every kernel gives the same value to rounding") {
  const AnisotropyParam p = classify(0.55);
  SumSpec spec = cut(40);
  spec.kernel = KernelChoice::Scalar;
  const double ref = epstein_zeta(p, 4.0, spec).value;
  for (const ShellKernel& k : available_kernels()) {
    if (k.name == "avx2") spec.kernel = KernelChoice::Avx2;
    else if (k.name == "avx512") spec.kernel = KernelChoice::Avx512;
    else if (k.name == "neon") spec.kernel = KernelChoice::Neon;
    else continue;
    CHECK(std::abs(epstein_zeta(p, 4.0, spec).value - ref) <= 1e-14 * ref);
  }
}

TEST_CASE("known values of L") {
  // fcc at s = 6 and s = 3
  CHECK(std::abs(epstein_zeta(classify(1.0), 6.0, SumSpec::with_tolerance(1e-10)).value - 12.131880196544579717) <=
        1e-9 * 12.13188);
  CHECK(std::abs(epstein_zeta(classify(1.0), 3.0, SumSpec::with_tolerance(1e-7)).value - 14.453921043744471864) <=
        1e-6 * 14.45392);
}
