#include "meanlab/power_mean.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace meanlab {

namespace {

struct SqrtPair {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SqrtPair sqrt_pair(const PdMatrix& x) {
  const EigenPair pair = eig(x);
  RealVector roots(pair.values.size());
  RealVector inv_roots(pair.values.size());
  for (Eigen::Index i = 0; i < pair.values.size(); ++i) {
    roots[i] = std::sqrt(pair.values[i]);
    inv_roots[i] = 1.0 / roots[i];
  }
  return SqrtPair{
      hermitize(pair.vectors * roots.asDiagonal() * pair.vectors.adjoint()),
      hermitize(pair.vectors * inv_roots.asDiagonal() * pair.vectors.adjoint())};
}

Matrix herm_pow(const Matrix& hermitian_pd, double r) {
  const EigenPair pair = eig_herm(hermitian_pd);
  RealVector powered(pair.values.size());
  for (Eigen::Index i = 0; i < pair.values.size(); ++i) {
    powered[i] = std::pow(pair.values[i], r);
  }
  return hermitize(pair.vectors * powered.asDiagonal() * pair.vectors.adjoint());
}

// Solves for t in (0,1]. The per-iteration X^{+-1/2} is shared across atoms
// and reused for the Thompson step of the update.
SolveResult solve_positive(const AtomicMeasure& mu, double t, const SolveOptions& opts) {
  PdMatrix x = [&] {
    switch (opts.initial) {
      case InitialIterate::Identity:
        return PdMatrix::identity(mu.dim());
      case InitialIterate::Custom:
        if (!opts.custom_initial) {
          throw std::invalid_argument("solve: Custom initial iterate not supplied");
        }
        return *opts.custom_initial;
      case InitialIterate::ArithmeticMean:
      default:
        return arithmetic_mean(mu);
    }
  }();

  SolveReport report;
  std::vector<double> steps;
  steps.reserve(64);

  // Ill-conditioned instances (e.g. high-power push-forward atoms) bottom out
  // above tol_thompson at the rounding floor of the step measurement. Once the
  // steps are deep below any usable accuracy and have stopped shrinking for
  // many iterations, the iterate is as converged as the arithmetic permits.
  constexpr double kPlateauFloor = 1e-8;
  constexpr int kPlateauWindow = 50;
  double best_step = std::numeric_limits<double>::infinity();
  int no_progress = 0;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const SqrtPair xs = sqrt_pair(x);
    Matrix sum = Matrix::Zero(mu.dim(), mu.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const Matrix inner = hermitize(xs.inv_sqrt * mu.atom(i).raw() * xs.inv_sqrt);
      sum += mu.weight(i) * herm_pow(inner, t);
    }
    const Matrix next_raw = hermitize(xs.sqrt * sum * xs.sqrt);
    PdMatrix next(next_raw);

    // d_T(X, next) via the already-computed X^{-1/2}.
    const EigenPair rel = eig_herm(xs.inv_sqrt * next_raw * xs.inv_sqrt);
    double step = 0.0;
    for (Eigen::Index i = 0; i < rel.values.size(); ++i) {
      step = std::max(step, std::abs(std::log(rel.values[i])));
    }

    x = std::move(next);
    steps.push_back(step);
    report.iterations = iter;
    if (iter == 1) report.first_step = step;
    report.final_step = step;
    if (step <= opts.tol_thompson) {
      report.converged = true;
      break;
    }
    if (step < best_step) {
      best_step = step;
      no_progress = 0;
    } else {
      ++no_progress;
    }
    if (no_progress >= kPlateauWindow && best_step <= kPlateauFloor) {
      report.converged = true;
      break;
    }
  }

  double log_ratio_sum = 0.0;
  int ratio_count = 0;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i - 1] > 1e-300 && steps[i] > 1e-300) {
      log_ratio_sum += std::log(steps[i] / steps[i - 1]);
      ++ratio_count;
    }
  }
  report.observed_ratio = ratio_count > 0 ? std::exp(log_ratio_sum / ratio_count) : 0.0;
  report.residual = thompson(x, mixture(x, mu, t));
  report.kamei_residual = residual_kamei(x, mu, t);

  if (!report.converged) {
    std::string msg = "solve: no convergence within " + std::to_string(opts.max_iter) +
                      " iterations (t = " + std::to_string(t) + ")";
    if (t < 0.05) {
      msg += "; contraction ratio is close to 1, raise max_iter to at least " +
             std::to_string(static_cast<long>(std::ceil(
                 std::log(opts.tol_thompson) / std::log(1.0 - t)))) ;
    }
    throw SolveError(msg, report);
  }
  return SolveResult{std::move(x), report};
}

}  // namespace

SolveResult solve(const AtomicMeasure& mu, double t, const SolveOptions& opts) {
  if (t == 0.0 || std::abs(t) > 1.0 + 1e-15) {
    throw std::invalid_argument("solve: t must lie in [-1,1] excluding 0");
  }
  t = std::min(std::max(t, -1.0), 1.0);
  if (t > 0.0) return solve_positive(mu, t, opts);

  // P_t(mu) = P_{-t}(inv # mu)^{-1}.
  const AtomicMeasure inv_mu = pushforward_inv(mu);
  SolveOptions inner = opts;
  if (opts.initial == InitialIterate::Custom && opts.custom_initial) {
    inner.custom_initial = mpow(*opts.custom_initial, -1.0);
  }
  SolveResult result = solve_positive(inv_mu, -t, inner);
  PdMatrix mean = mpow(result.mean, -1.0);
  SolveReport report = result.report;
  report.kamei_residual = residual_kamei(mean, mu, t);
  return SolveResult{std::move(mean), report};
}

RealVector commuting_oracle(std::span<const double> weights,
                            const std::vector<RealVector>& eigenvalue_rows, double t) {
  if (t == 0.0) {
    throw std::invalid_argument("commuting_oracle: t = 0 is excluded");
  }
  if (weights.size() != eigenvalue_rows.size() || weights.empty()) {
    throw std::invalid_argument("commuting_oracle: weights/rows length mismatch");
  }
  const Eigen::Index n = eigenvalue_rows.front().size();
  RealVector out = RealVector::Zero(n);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out[j] += weights[i] * std::pow(eigenvalue_rows[i][j], t);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) out[j] = std::pow(out[j], 1.0 / t);
  return out;
}

double residual_kamei(const PdMatrix& x, const AtomicMeasure& mu, double t) {
  if (t == 0.0 || std::abs(t) > 1.0) {
    throw std::invalid_argument("residual_kamei: t must lie in [-1,1] excluding 0");
  }
  Matrix sum = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * tsallis(x, mu.atom(i), t);
  }
  return eig_herm(sum).values.cwiseAbs().maxCoeff();
}

}  // namespace meanlab
