#pragma once

// Dense Hermitian positive-definite matrix arithmetic: spectral functional
// calculus, Loewner-order tests, Thompson metric and seeded random instances.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace meanlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kEigTol = 1e-10;
inline constexpr double kOrderTol = 1e-9;
inline constexpr double kCondLimit = 1e14;

/// (M + M*)/2. Idempotent on Hermitian input.
Matrix hermitize(const Matrix& m);

/// max |M[i][j] - conj(M[j][i])|, the raw Hermiticity defect.
double hermiticity_defect(const Matrix& m);

/// Positive definite matrix on the cone P_n. Construction checks the
/// Hermiticity residual and lambda_min > 0, then stores the hermitized entries.
class PdMatrix {
 public:
  explicit PdMatrix(const Matrix& entries);

  static PdMatrix identity(Eigen::Index n);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& raw() const { return entries_; }

  /// Spectral norm; for a PD matrix this is the largest eigenvalue.
  double norm_inf() const;
  double lambda_min() const { return lambda_min_; }

 private:
  Matrix entries_;
  double lambda_min_;
};

struct EigenPair {
  RealVector values;  // ascending, all > 0 for PD input
  Matrix vectors;     // unitary, columns are eigenvectors
};

/// Verdict carrier for a single Loewner comparison A <= B.
struct OrderResult {
  bool holds;
  double margin;          // lambda_min(hermitize(B - A))
  double scale;           // max(|A|_inf, |B|_inf)
  double tolerance_used;  // relative
};

EigenPair eig(const PdMatrix& a);

/// Eigendecomposition of a general Hermitian matrix (input is hermitized).
EigenPair eig_herm(const Matrix& a);

/// Functional calculus A^r = U diag(lambda^r) U*.
PdMatrix mpow(const PdMatrix& a, double r);

/// hermitize(C* A C). C must be invertible (condition estimate below 1e14).
PdMatrix congruence(const Matrix& c, const PdMatrix& a);

/// Tests A <= B in the Loewner order at relative tolerance tol.
OrderResult loewner_leq(const PdMatrix& a, const PdMatrix& b, double tol = kOrderTol);

/// Same test for general Hermitian operands (hermitized before comparing).
OrderResult loewner_leq_herm(const Matrix& a, const Matrix& b, double tol = kOrderTol);

/// Thompson metric d_T(A,B) = |log(A^{-1/2} B A^{-1/2})|_inf.
double thompson(const PdMatrix& a, const PdMatrix& b);

/// Deterministic seeded PD matrix: random unitary conjugating a log-uniform
/// positive diagonal with condition number at most cond_max.
PdMatrix random_pd(Eigen::Index n, double cond_max, std::uint64_t seed);

}  // namespace meanlab
