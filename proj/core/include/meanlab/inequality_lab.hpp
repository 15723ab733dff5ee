#pragma once

// Executable checkers for every inequality in scope: the arithmetic-power-
// harmonic sandwich, the Ando-Hiai extension and its dual, the power-integral
// lemma, the Tsallis fixed-point criterion, information monotonicity, the
// atom-reduction lemmas, and discretization convergence. A seeded fuzz
// harness drives all of them on random instances.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "meanlab/measures.hpp"
#include "meanlab/positive_maps.hpp"
#include "meanlab/power_mean.hpp"

namespace meanlab {

inline constexpr double kCheckTol = 1e-8;

struct CheckReport {
  std::string name;
  bool premise_satisfied = true;
  bool holds = false;
  double margin = 0.0;  // relative lambda_min of the conclusion's difference
  double tolerance = kCheckTol;
  std::string digest;   // replay parameters
};

/// Corollary chain harmonic <= P_{-s} <= P_{-t} <= P_t <= P_s <= arithmetic
/// for 0 < t <= s <= 1; margin is the worst of the five comparisons.
CheckReport check_sandwich(const AtomicMeasure& mu, double t, double s,
                           double tol = kCheckTol, const std::string& digest = "");

/// Ando-Hiai for power means: after normalizing so P_t(mu) has unit spectral
/// norm, both |P_{t/p}(nu)| <= 1 and P_{t/p}(nu) <= P_t(mu) with
/// nu = pow-pushforward of mu.
CheckReport check_ando_hiai(const AtomicMeasure& mu, double t, double p,
                            double tol = kCheckTol, const std::string& digest = "");

/// Dual direction: after normalizing so P_{-t}(mu) >= I, verifies
/// P_{-t/p}(nu) >= P_{-t}(mu).
CheckReport check_ando_hiai_dual(const AtomicMeasure& mu, double t, double p,
                                 double tol = kCheckTol, const std::string& digest = "");

/// (integral of Z^t)^{1/t} <= I implies P_t(mu) <= I (reversed for t < 0);
/// the premise is established exactly by scaling.
CheckReport check_lemma_th1(const AtomicMeasure& mu, double t,
                            double tol = kCheckTol, const std::string& digest = "");

/// Sign of sum_i w_i T_t(X|A_i) decides the side of X relative to P_t(mu);
/// an indefinite sum is reported as a skipped premise.
CheckReport check_tsallis_criterion(const PdMatrix& x, const AtomicMeasure& mu,
                                    double t, double tol = kCheckTol,
                                    const std::string& digest = "");

/// Phi(P_t(mu)) <= P_t(Phi # mu) for a unital positive linear map.
CheckReport check_info_monotonicity(const AtomicMeasure& mu, double t,
                                    const UnitalPositiveMap& phi,
                                    double tol = kCheckTol, const std::string& digest = "");

/// Appending P_t(nu) itself as an atom of weight w leaves the power mean
/// fixed, and conditioning it back out reproduces nu.
CheckReport check_atom_reduction(const AtomicMeasure& nu, double t, double w,
                                 double tol = kCheckTol, const std::string& digest = "");

/// If an atom B dominates P_t(mu), removing B cannot push the mean above B.
CheckReport check_dominated_reduction(const AtomicMeasure& mu, double t,
                                      std::size_t index, double tol = kCheckTol,
                                      const std::string& digest = "");

/// d_T(P_t(mu_N), P_t(mu_4N)) <= 2 eps_N with eps_N the max cellwise Thompson
/// diameter of the coarse partition (8 curve samples per cell).
CheckReport check_discretization(const MeasureFamily& family, double t, int cells,
                                 double tol = kCheckTol, const std::string& digest = "");

struct FuzzConfig {
  int n_max = 4;
  int k_max = 6;
  double cond_max = 100.0;
  std::vector<double> t_grid = {0.25, 0.5, 1.0, -0.25, -0.5, -1.0};
  std::vector<double> p_grid = {1.0, 1.5, 2.0, 3.0, 5.0};
  int trials = 100;
  std::uint64_t seed = 1;
};

struct TheoremStats {
  int runs = 0;
  int skipped = 0;
  int failures = 0;       // holds == false
  double worst_margin = 0.0;
};

struct FuzzSummary {
  FuzzConfig config;
  std::map<std::string, TheoremStats> per_theorem;
  std::vector<CheckReport> defects;  // holds == false with margin < -10 tol
  int nonconvergent = 0;
  int total_runs = 0;
};

/// Names of the checkers the fuzz harness cycles through.
std::vector<std::string> checker_names();

/// Runs one deterministic trial of the named checker; the returned report's
/// digest replays it exactly.
CheckReport run_fuzz_trial(const std::string& checker, std::uint64_t instance_seed,
                           const FuzzConfig& cfg);

/// Re-runs the trial encoded in a digest produced by run_fuzz_trial.
CheckReport replay(const std::string& digest);

FuzzSummary fuzz(const FuzzConfig& cfg);

}  // namespace meanlab
