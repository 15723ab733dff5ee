#include <cmath>
#include <random>

#include "doctest.h"
#include "meanlab/spd.hpp"
#include "test_helpers.hpp"

using namespace meanlab;
using namespace meanlab::testing;

TEST_CASE("hermitize") {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0, 2), Complex(0, 0), Complex(1, 0);
  const Matrix h = hermitize(m);
  CHECK(h(0, 0) == Complex(1, 0));
  CHECK(h(0, 1) == Complex(0, 1));
  CHECK(h(1, 0) == Complex(0, -1));
  CHECK(h(1, 1) == Complex(1, 0));

  // Idempotence on random input.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g(3, 3);
    for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = Complex(gauss(rng), gauss(rng));
    CHECK(max_abs_diff(hermitize(hermitize(g)), hermitize(g)) == 0.0);
  }

  CHECK_THROWS_AS(hermitize(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("PdMatrix construction enforces invariants") {
  CHECK_THROWS_AS(PdMatrix(Matrix::Zero(2, 2)), std::invalid_argument);
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(PdMatrix{indefinite}, std::invalid_argument);
  Matrix skew(2, 2);
  skew << Complex(1, 0), Complex(1, 0), Complex(-1, 0), Complex(1, 0);
  CHECK_THROWS_AS(PdMatrix{skew}, std::invalid_argument);
}

TEST_CASE("eig reconstruction and basic spectra") {
  const PdMatrix d = diag_pd({4.0, 9.0});
  const EigenPair pair = eig(d);
  CHECK(pair.values[0] == doctest::Approx(4.0));
  CHECK(pair.values[1] == doctest::Approx(9.0));

  const EigenPair id_pair = eig(PdMatrix::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(id_pair.values[i] == doctest::Approx(1.0));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const PdMatrix a = random_pd(5, 1000.0, seed);
    const EigenPair p = eig(a);
    const Matrix rebuilt = p.vectors * p.values.asDiagonal() * p.vectors.adjoint();
    const double norm = a.raw().cwiseAbs().maxCoeff();
    CHECK(max_abs_diff(rebuilt, a.raw()) <= kEigTol * norm);
    CHECK(max_abs_diff(p.vectors.adjoint() * p.vectors, Matrix::Identity(5, 5)) <= 1e-10);
    for (int i = 1; i < 5; ++i) CHECK(p.values[i] >= p.values[i - 1]);
  }
}

TEST_CASE("mpow") {
  const PdMatrix d = diag_pd({4.0, 9.0});
  const PdMatrix root = mpow(d, 0.5);
  CHECK(root.raw()(0, 0).real() == doctest::Approx(2.0));
  CHECK(root.raw()(1, 1).real() == doctest::Approx(3.0));

  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const PdMatrix a = random_pd(4, 100.0, seed);
    CHECK(max_abs_diff(mpow(a, 1.0).raw(), a.raw()) <= 1e-12 * a.norm_inf());
    CHECK(max_abs_diff(mpow(a, 0.0).raw(), Matrix::Identity(4, 4)) <= 1e-12);
    CHECK(max_abs_diff(mpow(a, -1.0).raw() * a.raw(), Matrix::Identity(4, 4)) <= 1e-10);
    CHECK(rel_diff(mpow(mpow(a, 0.3), 1.0 / 0.3).raw(), a.raw()) <= 1e-9);
  }
}

TEST_CASE("congruence") {
  const PdMatrix a = diag_pd({1.0, 1.0});
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 2.0;
  c(1, 1) = 1.0;
  const PdMatrix out = congruence(c, a);
  CHECK(out.raw()(0, 0).real() == doctest::Approx(4.0));
  CHECK(out.raw()(1, 1).real() == doctest::Approx(1.0));

  CHECK(max_abs_diff(congruence(Matrix::Identity(2, 2), a).raw(), a.raw()) == 0.0);
  CHECK_THROWS_AS(congruence(Matrix::Zero(2, 2), a), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PdMatrix x = random_pd(3, 100.0, seed);
    const Matrix g = random_pd(3, 100.0, seed + 1000).raw();  // PD hence invertible
    const PdMatrix forward = congruence(g, x);
    const PdMatrix back = congruence(g.inverse(), forward);
    CHECK(rel_diff(back.raw(), x.raw()) <= 1e-9);
  }
}

TEST_CASE("loewner_leq") {
  const PdMatrix id = PdMatrix::identity(2);
  const PdMatrix two(2.0 * Matrix::Identity(2, 2));
  const OrderResult up = loewner_leq(id, two);
  CHECK(up.holds);
  CHECK(up.margin == doctest::Approx(1.0));
  const OrderResult down = loewner_leq(two, id);
  CHECK_FALSE(down.holds);
  CHECK(down.margin == doctest::Approx(-1.0));

  // Incomparable pair: the order is partial.
  const OrderResult incomparable = loewner_leq(diag_pd({1.0, 3.0}), diag_pd({2.0, 2.0}));
  CHECK_FALSE(incomparable.holds);
  CHECK(incomparable.margin == doctest::Approx(-1.0));

  CHECK_THROWS_AS(loewner_leq(id, PdMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("thompson metric") {
  const PdMatrix id = PdMatrix::identity(2);
  CHECK(thompson(id, PdMatrix(4.0 * Matrix::Identity(2, 2))) ==
        doctest::Approx(std::log(4.0)));
  CHECK(thompson(diag_pd({1.0, std::exp(2.0)}), id) == doctest::Approx(2.0));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const PdMatrix a = random_pd(3, 100.0, rng());
    const PdMatrix b = random_pd(3, 100.0, rng());
    const PdMatrix c = random_pd(3, 100.0, rng());
    CHECK(thompson(a, a) <= 1e-10);
    CHECK(thompson(a, b) == doctest::Approx(thompson(b, a)).epsilon(1e-10));
    CHECK(thompson(a, c) <= thompson(a, b) + thompson(b, c) + 1e-10);
    const double alpha = 0.1 + 3.0 * std::uniform_real_distribution<double>()(rng);
    const PdMatrix sa(alpha * a.raw());
    const PdMatrix sb(alpha * b.raw());
    CHECK(thompson(sa, sb) == doctest::Approx(thompson(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("random_pd determinism and invariants") {
  const PdMatrix a = random_pd(4, 100.0, 42);
  const PdMatrix b = random_pd(4, 100.0, 42);
  CHECK(max_abs_diff(a.raw(), b.raw()) == 0.0);

  const PdMatrix scalar = random_pd(1, 1.0, 7);
  CHECK(scalar.raw()(0, 0).real() > 0.0);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const double cond_max = 1.0 + 999.0 * std::uniform_real_distribution<double>()(rng);
    const PdMatrix m = random_pd(1 + trial % 6, cond_max, rng());
    CHECK(m.lambda_min() > 0.0);
    CHECK(hermiticity_defect(m.raw()) <= kHermTol * (1.0 + m.raw().cwiseAbs().maxCoeff()));
    const EigenPair p = eig(m);
    CHECK(p.values.maxCoeff() / p.values.minCoeff() <= cond_max * (1.0 + 1e-9));
  }
}

TEST_CASE("mpow is Loewner-monotone for r in [0,1]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [a, b] = comparable_pair(3, rng());
    const double r = std::uniform_real_distribution<double>()(rng);
    CHECK(loewner_leq(mpow(a, r), mpow(b, r), 1e-9).holds);
  }
}

TEST_CASE("congruence preserves the Loewner order") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 500; ++trial) {
    const auto [a, b] = comparable_pair(3, rng());
    Matrix c(3, 3);
    for (int i = 0; i < 9; ++i) c(i / 3, i % 3) = Complex(gauss(rng), gauss(rng));
    c += 3.0 * Matrix::Identity(3, 3);  // keep it comfortably invertible
    CHECK(loewner_leq(congruence(c, a), congruence(c, b), 1e-9).holds);
  }
}
