#include "meanlab/spd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace meanlab {

Matrix hermitize(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("hermitize: matrix must be square");
  }
  return 0.5 * (m + m.adjoint());
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

EigenPair decompose(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig: Hermitian eigendecomposition failed to converge");
  }
  return EigenPair{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

PdMatrix::PdMatrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw std::invalid_argument("PdMatrix: entries must be square and nonempty");
  }
  const double defect = hermiticity_defect(entries);
  if (defect > kHermTol * (1.0 + max_abs(entries))) {
    throw std::invalid_argument("PdMatrix: Hermiticity residual too large");
  }
  entries_ = hermitize(entries);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("PdMatrix: eigenvalue check failed to converge");
  }
  lambda_min_ = solver.eigenvalues().minCoeff();
  if (!(lambda_min_ > 0.0)) {
    throw std::invalid_argument("PdMatrix: smallest eigenvalue is not positive");
  }
}

PdMatrix PdMatrix::identity(Eigen::Index n) {
  return PdMatrix(Matrix::Identity(n, n));
}

double PdMatrix::norm_inf() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

EigenPair eig(const PdMatrix& a) {
  EigenPair pair = decompose(a.raw());
  if (pair.values.minCoeff() <= 0.0) {
    throw std::runtime_error("eig: PD input produced a non-positive eigenvalue");
  }
  return pair;
}

EigenPair eig_herm(const Matrix& a) { return decompose(hermitize(a)); }

PdMatrix mpow(const PdMatrix& a, double r) {
  const EigenPair pair = eig(a);
  RealVector powered(pair.values.size());
  for (Eigen::Index i = 0; i < pair.values.size(); ++i) {
    powered[i] = std::pow(pair.values[i], r);
  }
  Matrix result = pair.vectors * powered.asDiagonal() * pair.vectors.adjoint();
  return PdMatrix(hermitize(result));
}

PdMatrix congruence(const Matrix& c, const PdMatrix& a) {
  if (c.rows() != a.dim() || c.cols() != a.dim()) {
    throw std::invalid_argument("congruence: dimension mismatch");
  }
  Eigen::JacobiSVD<Matrix> svd(c);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0 || smax / smin > kCondLimit) {
    throw std::invalid_argument("congruence: matrix is singular beyond the condition guard");
  }
  return PdMatrix(hermitize(c.adjoint() * a.raw() * c));
}

OrderResult loewner_leq_herm(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("loewner_leq: dimension mismatch");
  }
  if (tol < 0.0) {
    throw std::invalid_argument("loewner_leq: negative tolerance");
  }
  const Matrix diff = hermitize(b) - hermitize(a);
  const EigenPair pair = eig_herm(diff);
  const double margin = pair.values.minCoeff();
  const double norm_a = eig_herm(a).values.cwiseAbs().maxCoeff();
  const double norm_b = eig_herm(b).values.cwiseAbs().maxCoeff();
  const double scale = std::max(norm_a, norm_b);
  return OrderResult{margin >= -tol * scale, margin, scale, tol};
}

OrderResult loewner_leq(const PdMatrix& a, const PdMatrix& b, double tol) {
  return loewner_leq_herm(a.raw(), b.raw(), tol);
}

double thompson(const PdMatrix& a, const PdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("thompson: dimension mismatch");
  }
  const PdMatrix a_inv_sqrt = mpow(a, -0.5);
  const Matrix inner = hermitize(a_inv_sqrt.raw() * b.raw() * a_inv_sqrt.raw());
  const EigenPair pair = eig_herm(inner);
  double dist = 0.0;
  for (Eigen::Index i = 0; i < pair.values.size(); ++i) {
    dist = std::max(dist, std::abs(std::log(pair.values[i])));
  }
  return dist;
}

PdMatrix random_pd(Eigen::Index n, double cond_max, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_pd: dimension must be at least 1");
  if (cond_max < 1.0) throw std::invalid_argument("random_pd: cond_max must be at least 1");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity so the unitary is a deterministic function of g.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }

  RealVector lambda(n);
  const double log_cond = std::log(cond_max);
  for (Eigen::Index i = 0; i < n; ++i) {
    lambda[i] = std::exp(unit(rng) * log_cond);
  }
  const double scale = std::exp(std::uniform_real_distribution<double>(-0.7, 0.7)(rng));
  lambda *= scale;

  Matrix result = q * lambda.asDiagonal() * q.adjoint();
  return PdMatrix(hermitize(result));
}

}  // namespace meanlab
