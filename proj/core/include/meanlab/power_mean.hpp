#pragma once

// Fixed-point solver for the power mean P_t(mu) over t in [-1,1]\{0}, with
// convergence reporting in the Thompson metric and a closed-form oracle for
// commuting instances.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "meanlab/means.hpp"
#include "meanlab/measures.hpp"

namespace meanlab {

enum class InitialIterate { ArithmeticMean, Identity, Custom };

struct SolveOptions {
  double tol_thompson = 1e-12;
  int max_iter = 10000;
  InitialIterate initial = InitialIterate::ArithmeticMean;
  std::optional<PdMatrix> custom_initial;
};

struct SolveReport {
  int iterations = 0;
  double first_step = 0.0;      // Thompson distance of the first Picard step
  double final_step = 0.0;      // Thompson distance of the last Picard step
  double residual = 0.0;        // d_T(X, f(X)) at the returned iterate
  double kamei_residual = 0.0;  // |sum_i w_i T_t(X|A_i)|_inf
  bool converged = false;
  double observed_ratio = 0.0;  // geometric mean of successive step ratios
};

struct SolveResult {
  PdMatrix mean;
  SolveReport report;
};

/// Thrown when Picard iteration exhausts max_iter; carries the partial report.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report(report) {}
  SolveReport report;
};

/// Picard iteration X <- sum_i w_i (X #_t A_i) for t in (0,1); negative t is
/// routed through the inversion duality P_t(mu) = P_{-t}(inv # mu)^{-1}.
SolveResult solve(const AtomicMeasure& mu, double t, const SolveOptions& opts = {});

/// Entrywise scalar power mean (sum_i w_i a_ij^t)^{1/t}; the independent
/// oracle for simultaneously diagonal atoms.
RealVector commuting_oracle(std::span<const double> weights,
                            const std::vector<RealVector>& eigenvalue_rows, double t);

/// |sum_i w_i T_t(X|A_i)|_inf, the Kamei fixed-point residual; vanishes
/// exactly at X = P_t(mu).
double residual_kamei(const PdMatrix& x, const AtomicMeasure& mu, double t);

}  // namespace meanlab
