#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cuboid/errors.hpp"
#include "cuboid/lattice.hpp"
#include "oracles.hpp"

using namespace cuboid;

namespace {

const std::vector<double> kGrid{0.05, 0.2, 0.3, 1.0 / 3.0, 0.4, 0.5, 0.6, 1.0 / std::numbers::sqrt2, 0.9, 1.0,
                                1.5, 2.0, 7.0};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("classify tags regimes with closed boundaries in Mid") {
  CHECK(classify(0.2).regime() == Regime::Low);
  CHECK(classify(0.3333333).regime() == Regime::Low);
  CHECK(classify(1.0 / 3.0).regime() == Regime::Mid);
  CHECK(classify(0.5).regime() == Regime::Mid);
  CHECK(classify(1.0).regime() == Regime::Mid);
  CHECK(classify(std::nextafter(1.0, 2.0)).regime() == Regime::High);
  CHECK(classify(0.5).A() == 0.5);
}

TEST_CASE("classify rejects non-positive and non-finite A") {
  CHECK_THROWS_AS(classify(0.0), DomainError);
  CHECK_THROWS_AS(classify(-1.0), DomainError);
  CHECK_THROWS_AS(classify(std::nan("")), DomainError);
  CHECK_THROWS_AS(classify(INFINITY), DomainError);
}

TEST_CASE("Gram matrix equals the basis dot products") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    const double v = 0.7;
    const auto basis = basis_vectors(p, v);
    const GramMatrix g = gram_matrix(p, v);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(g(r, c) - dot(basis[r], basis[c])) <= 1e-14);
  }
}

TEST_CASE("determinant of the Gram matrix is 4 A v^6") {
  for (double a : kGrid)
    for (double v : {0.3, 1.0, 2.5}) {
      const double det = determinant(gram_matrix(classify(a), v).entries);
      CHECK(rel(det, 4.0 * a * std::pow(v, 6)) <= 1e-12);
    }
}

TEST_CASE("normalized lattice has minimum norm 1") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    const double v = normalization_scale(p);
    CHECK(std::abs(enumerated_minimum_norm(p, v) - 1.0) <= 1e-12);
    CHECK(std::abs(minimum_norm(p, v) - 1.0) <= 1e-12);
    CHECK(rel(normalization_scale_squared(p), v * v) <= 1e-15);
  }
}

TEST_CASE("closed-form minimum norm matches enumeration for arbitrary scale") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    CHECK(rel(minimum_norm(p, 1.3), enumerated_minimum_norm(p, 1.3, 3)) <= 1e-13);
  }
}

TEST_CASE("normalized Gram matrix agrees with the scaled one") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    const CuboidalLattice lat = build_lattice(p);
    const GramMatrix g = gram_matrix(p, lat.v);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(lat.gram(r, c) - g(r, c)) <= 1e-14);
    CHECK(rel(lat.u * lat.u, a * lat.v * lat.v) <= 1e-14);
  }
}

TEST_CASE("quadratic form matches the long double oracle") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    const long double d = oracle::min_raw_form(a);
    for (int i = -3; i <= 3; ++i)
      for (int j = -3; j <= 3; ++j)
        for (int k = -3; k <= 3; ++k) {
          const double want = static_cast<double>(oracle::raw_form(a, i, j, k) / d);
          CHECK(std::abs(quadratic_form(p, {i, j, k}) - want) <= 1e-14 * std::max(1.0, want));
        }
  }
}

TEST_CASE("quadratic form is exactly symmetric under i <-> j") {
  for (double a : {0.2, 0.37, 0.5, 0.71, 1.0, 3.3}) {
    const AnisotropyParam p = classify(a);
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j)
        for (int k = -4; k <= 4; ++k) CHECK(quadratic_form(p, {i, j, k}) == quadratic_form(p, {j, i, k}));
  }
}

TEST_CASE("packing density closed forms") {
  using std::numbers::pi;
  CHECK(std::abs(packing_density(classify(1.0)) - pi * std::sqrt(2.0) / 6.0) <= 1e-12);
  CHECK(std::abs(packing_density(classify(0.5)) - pi * std::sqrt(3.0) / 8.0) <= 1e-12);
  CHECK(std::abs(packing_density(classify(1.0 / 3.0)) - 2.0 * pi / 9.0) <= 1e-12);
}

TEST_CASE("packing density equals ball volume over cell volume") {
  for (double a : kGrid) {
    const AnisotropyParam p = classify(a);
    const double v = 1.1;
    const double mu = enumerated_minimum_norm(p, v, 3);
    const double vol = std::sqrt(determinant(gram_matrix(p, v).entries));
    const double want = 4.0 / 3.0 * std::numbers::pi * std::pow(std::sqrt(mu) / 2.0, 3) / vol;
    CHECK(rel(packing_density(p), want) <= 1e-12);
  }
}

TEST_CASE("packing density is continuous at the regime boundaries") {
  for (double b : {1.0 / 3.0, 1.0}) {
    const double left = packing_density(classify(std::nextafter(b, 0.0)));
    const double right = packing_density(classify(std::nextafter(b, 2.0)));
    CHECK(std::abs(left - right) <= 1e-12);
    CHECK(std::abs(left - packing_density(classify(b))) <= 1e-12);
  }
}

TEST_CASE("density is maximal at fcc and its derivative matches finite differences") {
  CHECK(packing_density(classify(1.0)) > packing_density(classify(0.9)));
  CHECK(packing_density(classify(1.0)) > packing_density(classify(1.1)));
  for (double a : {0.4, 0.5, 0.6, 0.8, 0.95}) {
    const double h = 1e-6;
    const double fd = (packing_density(classify(a + h)) - packing_density(classify(a - h))) / (2 * h);
    CHECK(std::abs(density_derivative(classify(a)) - fd) <= 1e-8);
  }
  CHECK(density_derivative(classify(0.45)) < 0.0);
  CHECK(density_derivative(classify(0.55)) > 0.0);
  CHECK_THROWS_AS(density_derivative(classify(1.0 / 3.0)), DomainError);
  CHECK_THROWS_AS(density_derivative(classify(1.0)), DomainError);
  CHECK_THROWS_AS(density_derivative(classify(2.0)), DomainError);
}

TEST_CASE("kissing numbers by regime") {
  const std::vector<std::pair<double, int>> table{{0.2, 2},  {1.0 / 3.0, 10}, {0.4, 8}, {0.5, 8},
                                                  {1.0 / std::numbers::sqrt2, 8}, {0.9, 8}, {1.0, 12},
                                                  {2.0, 4}};
  for (const auto& [a, k] : table) {
    CAPTURE(a);
    const AnisotropyParam p = classify(a);
    CHECK(kissing_number(p) == k);
    CHECK(tabulated_kissing_number(p) == k);
    CHECK(oracle::kissing(a) == k);
  }
}

TEST_CASE("kissing count does not grow with a larger window") {
  for (double a : {0.1, 0.2, 1.0 / 3.0, 0.4, 0.5, 0.7, 0.9, 1.0, 2.0, 5.0}) {
    const AnisotropyParam p = classify(a);
    CHECK(kissing_number(p, 1e-9, 3) == kissing_number(p, 1e-9, 5));
  }
}

TEST_CASE("kissing number snaps A near the boundaries") {
  CHECK(kissing_number(classify(1.0 / 3.0 + 1e-14)) == 10);
  CHECK(kissing_number(classify(1.0 - 1e-14)) == 12);
  CHECK(kissing_number(classify(0.3333333)) == 2);
  CHECK_THROWS_AS(kissing_number(classify(0.5), 0.0), DomainError);
}
