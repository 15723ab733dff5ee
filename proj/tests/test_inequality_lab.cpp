#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "meanlab/inequality_lab.hpp"
#include "test_helpers.hpp"

using namespace meanlab;
using namespace meanlab::testing;

namespace {
const AtomicMeasure kCommutingPair({diag_pd({4.0, 1.0}), diag_pd({9.0, 16.0})},
                                   {0.5, 0.5});
}

TEST_CASE("sandwich: single atom is degenerate with margin 0") {
  const PdMatrix a = random_pd(3, 100.0, 1);
  const CheckReport report = check_sandwich(AtomicMeasure({a}, {1.0}), 0.5, 1.0);
  CHECK(report.holds);
  CHECK(std::abs(report.margin) <= 1e-9);
}

TEST_CASE("sandwich: commuting example has the scalar power-mean chain") {
  // Entrywise: harmonic (72/13, 32/17) <= P_{-1} <= P_{-1/2} = (5.76, 2.56)
  // <= P_{1/2} = (6.25, 6.25) <= arithmetic (6.5, 8.5).
  const CheckReport report = check_sandwich(kCommutingPair, 0.5, 1.0);
  CHECK(report.holds);

  const PdMatrix p_neg_half = solve(kCommutingPair, -0.5).mean;
  CHECK(p_neg_half.raw()(0, 0).real() == doctest::Approx(5.76).epsilon(1e-9));
  CHECK(p_neg_half.raw()(1, 1).real() == doctest::Approx(2.56).epsilon(1e-9));

  CHECK_THROWS_AS(check_sandwich(kCommutingPair, 0.8, 0.5), std::invalid_argument);
}

TEST_CASE("ando-hiai: p = 1 is the exact equality case") {
  const AtomicMeasure mu = random_measure(3, 4, 100.0, 2);
  const CheckReport report = check_ando_hiai(mu, 0.5, 1.0);
  CHECK(report.holds);
  CHECK(std::abs(report.margin) <= 1e-12);
}

TEST_CASE("ando-hiai: scalar instance") {
  // Atoms (0.25, 0.5), t = 1/2, p = 2: P_t ~= 0.364277, P_{t/p}(nu) = P_t^2.
  const AtomicMeasure mu({diag_pd({0.25}), diag_pd({0.5})}, {0.5, 0.5});
  const double p_t = solve(mu, 0.5).mean.raw()(0, 0).real();
  CHECK(p_t == doctest::Approx(0.36427669529663687).epsilon(1e-10));
  const double p_tp =
      solve(pushforward_pow(mu, 2.0), 0.25).mean.raw()(0, 0).real();
  CHECK(p_tp == doctest::Approx(p_t * p_t).epsilon(1e-9));

  const CheckReport report = check_ando_hiai(mu, 0.5, 2.0);
  CHECK(report.holds);
  CHECK(report.premise_satisfied);
}

TEST_CASE("ando-hiai dual: p = 1 equality and scalar instance") {
  const AtomicMeasure mu = random_measure(3, 4, 100.0, 3);
  const CheckReport equal = check_ando_hiai_dual(mu, 0.5, 1.0);
  CHECK(equal.holds);
  CHECK(std::abs(equal.margin) <= 1e-12);

  const AtomicMeasure scalar({diag_pd({4.0}), diag_pd({2.0})}, {0.5, 0.5});
  CHECK(check_ando_hiai_dual(scalar, 0.5, 2.0).holds);
}

TEST_CASE("lemma-th1") {
  // Single atom with unit norm: margin 0 on both sides.
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 0.3;
  const CheckReport single = check_lemma_th1(AtomicMeasure({PdMatrix(m)}, {1.0}), 0.5);
  CHECK(single.holds);
  CHECK(std::abs(single.margin) <= 1e-9);

  // Commuting atoms: the lemma is an equality after normalization.
  const CheckReport commuting = check_lemma_th1(kCommutingPair, 0.5);
  CHECK(commuting.holds);
  CHECK(std::abs(commuting.margin) <= 1e-9);

  std::mt19937_64 rng(5);
  for (double t : {0.25, -0.25, 0.5, -0.5, 1.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      CHECK(check_lemma_th1(random_measure(3, 4, 100.0, rng()), t).holds);
    }
  }
}

TEST_CASE("tsallis criterion") {
  const AtomicMeasure mu = random_measure(3, 4, 100.0, 7);
  const PdMatrix p_t = solve(mu, 0.5).mean;

  // At the fixed point both premises hold with margin ~0.
  const CheckReport at_fp = check_tsallis_criterion(p_t, mu, 0.5);
  CHECK(at_fp.premise_satisfied);
  CHECK(at_fp.holds);
  CHECK(std::abs(at_fp.margin) <= 1e-8);

  // Scaling down makes the sum positive and X <= P_t.
  const CheckReport below = check_tsallis_criterion(PdMatrix(0.9 * p_t.raw()), mu, 0.5);
  CHECK(below.premise_satisfied);
  CHECK(below.holds);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicMeasure m = random_measure(3, 4, 100.0, rng());
    const double t = trial % 2 == 0 ? 0.5 : -0.5;
    const double c = 0.7 + 0.6 * std::uniform_real_distribution<double>()(rng);
    const PdMatrix x(c * solve(m, t).mean.raw());
    CHECK(check_tsallis_criterion(x, m, t).holds);
  }
}

TEST_CASE("info monotonicity") {
  const AtomicMeasure mu = random_measure(3, 4, 100.0, 13);
  const CheckReport identity =
      check_info_monotonicity(mu, 0.5, UnitalPositiveMap::identity(3));
  CHECK(identity.holds);
  CHECK(std::abs(identity.margin) <= 1e-12);

  // Trace map at t = 1 is linear: equality.
  const CheckReport trace =
      check_info_monotonicity(kCommutingPair, 1.0, UnitalPositiveMap::trace_map(2));
  CHECK(trace.holds);
  CHECK(std::abs(trace.margin) <= 1e-10);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const AtomicMeasure m = random_measure(3, 3, 100.0, rng());
    const double t = trial % 2 == 0 ? 0.5 : -0.5;
    CHECK(check_info_monotonicity(m, t, UnitalPositiveMap::transpose_map(3)).holds);
    CHECK(check_info_monotonicity(m, t, UnitalPositiveMap::pinching({1, 2})).holds);
  }
}

TEST_CASE("atom reduction") {
  const PdMatrix a = random_pd(2, 10.0, 19);
  const CheckReport single = check_atom_reduction(AtomicMeasure({a}, {1.0}), 0.5, 0.3);
  CHECK(single.holds);

  std::mt19937_64 rng(23);
  for (double w : {0.1, 0.5, 0.9}) {
    for (int trial = 0; trial < 20; ++trial) {
      CHECK(check_atom_reduction(random_measure(3, 3, 100.0, rng()), 0.5, w).holds);
    }
  }
}

TEST_CASE("dominated reduction") {
  // B = largest atom of a commuting family dominates the scalar power mean.
  const AtomicMeasure mu({diag_pd({1.0}), diag_pd({2.0}), diag_pd({8.0})},
                         {0.4, 0.4, 0.2});
  const CheckReport dominant = check_dominated_reduction(mu, 0.5, 2);
  CHECK(dominant.premise_satisfied);
  CHECK(dominant.holds);

  // Smallest atom cannot dominate: premise fails, vacuously true.
  const CheckReport skipped = check_dominated_reduction(mu, 0.5, 0);
  CHECK_FALSE(skipped.premise_satisfied);
  CHECK(skipped.holds);
}

TEST_CASE("discretization convergence") {
  // Constant family: distance 0 at every resolution.
  const PdMatrix a = random_pd(2, 10.0, 29);
  MeasureFamily constant;
  constant.dim = 2;
  constant.curve = [a](double) { return a; };
  constant.density = [](double) { return 1.0; };
  const CheckReport flat = check_discretization(constant, 0.5, 4);
  CHECK(flat.holds);
  CHECK(flat.margin >= -1e-12);

  for (const std::string& key : family_keys()) {
    const MeasureFamily family = family_catalog(key);
    double previous = std::numeric_limits<double>::infinity();
    for (int cells : {4, 16, 64}) {
      const CheckReport report = check_discretization(family, 0.5, cells);
      CHECK(report.holds);
      const double d = thompson(solve(discretize(family, cells), 0.5).mean,
                                solve(discretize(family, 4 * cells), 0.5).mean);
      CHECK(d < previous);
      previous = d;
    }
  }
}

TEST_CASE("fuzz and replay determinism") {
  FuzzConfig cfg;
  cfg.trials = 3;
  cfg.seed = 42;
  const FuzzSummary a = fuzz(cfg);
  const FuzzSummary b = fuzz(cfg);
  CHECK(a.defects.empty());
  CHECK(a.total_runs == b.total_runs);
  for (const auto& [name, stats] : a.per_theorem) {
    CHECK(b.per_theorem.at(name).worst_margin == stats.worst_margin);
    CHECK(b.per_theorem.at(name).runs == stats.runs);
  }

  // A report replays bit-identically from its digest.
  for (const std::string& name : checker_names()) {
    const CheckReport original = run_fuzz_trial(name, 1234, cfg);
    const CheckReport replayed = replay(original.digest);
    CHECK(replayed.name == original.name);
    CHECK(replayed.holds == original.holds);
    CHECK(replayed.margin == original.margin);
    CHECK(replayed.premise_satisfied == original.premise_satisfied);
  }

  CHECK_THROWS_AS(run_fuzz_trial("nope", 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(replay("garbage"), std::invalid_argument);
}
