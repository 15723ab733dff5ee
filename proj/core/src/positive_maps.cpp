#include "meanlab/positive_maps.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace meanlab {

UnitalPositiveMap::UnitalPositiveMap(std::vector<Matrix> kraus, bool pre_transpose,
                                     std::string name)
    : kraus_(std::move(kraus)), pre_transpose_(pre_transpose), name_(std::move(name)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("UnitalPositiveMap: empty Kraus family");
  }
  in_dim_ = kraus_.front().rows();
  out_dim_ = kraus_.front().cols();
  for (const Matrix& v : kraus_) {
    if (v.rows() != in_dim_ || v.cols() != out_dim_) {
      throw std::invalid_argument("UnitalPositiveMap: inconsistent Kraus shapes");
    }
  }
  const double defect = unitality_defect();
  if (defect > kUnitalTol) {
    throw std::invalid_argument("UnitalPositiveMap: unitality defect " +
                                std::to_string(defect) + " exceeds tolerance");
  }
}

double UnitalPositiveMap::unitality_defect() const {
  Matrix s = Matrix::Zero(out_dim_, out_dim_);
  for (const Matrix& v : kraus_) s += v.adjoint() * v;
  return (s - Matrix::Identity(out_dim_, out_dim_)).cwiseAbs().maxCoeff();
}

Matrix UnitalPositiveMap::apply_linear(const Matrix& a) const {
  if (a.rows() != in_dim_ || a.cols() != in_dim_) {
    throw std::invalid_argument("UnitalPositiveMap: input dimension mismatch");
  }
  const Matrix input = pre_transpose_ ? Matrix(a.transpose()) : a;
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const Matrix& v : kraus_) out += v.adjoint() * input * v;
  return out;
}

PdMatrix UnitalPositiveMap::apply(const PdMatrix& a) const {
  const Matrix out = hermitize(apply_linear(a.raw()));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(out, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() <= 0.0) {
    throw std::runtime_error("UnitalPositiveMap '" + name_ +
                             "': output lost positive definiteness");
  }
  return PdMatrix(out);
}

UnitalPositiveMap UnitalPositiveMap::identity(Eigen::Index n) {
  return UnitalPositiveMap({Matrix::Identity(n, n)}, false, "identity");
}

UnitalPositiveMap UnitalPositiveMap::compression(const Matrix& v) {
  const Matrix gram = v.adjoint() * v;
  if ((gram - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff() > kUnitalTol) {
    throw std::invalid_argument("compression: V is not an isometry");
  }
  return UnitalPositiveMap({v}, false, "compression");
}

UnitalPositiveMap UnitalPositiveMap::pinching(const std::vector<Eigen::Index>& block_sizes) {
  if (block_sizes.empty()) {
    throw std::invalid_argument("pinching: empty block partition");
  }
  const Eigen::Index n =
      std::accumulate(block_sizes.begin(), block_sizes.end(), Eigen::Index{0});
  std::vector<Matrix> kraus;
  Eigen::Index offset = 0;
  for (Eigen::Index size : block_sizes) {
    if (size < 1) throw std::invalid_argument("pinching: block size must be positive");
    Matrix p = Matrix::Zero(n, n);
    p.block(offset, offset, size, size) = Matrix::Identity(size, size);
    kraus.push_back(std::move(p));
    offset += size;
  }
  return UnitalPositiveMap(std::move(kraus), false, "pinching");
}

UnitalPositiveMap UnitalPositiveMap::trace_map(Eigen::Index n) {
  std::vector<Matrix> kraus;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix v = Matrix::Zero(n, 1);
    v(j, 0) = inv_sqrt_n;
    kraus.push_back(std::move(v));
  }
  return UnitalPositiveMap(std::move(kraus), false, "trace");
}

UnitalPositiveMap UnitalPositiveMap::transpose_map(Eigen::Index n) {
  return UnitalPositiveMap({Matrix::Identity(n, n)}, true, "transpose");
}

UnitalPositiveMap UnitalPositiveMap::random_map(Eigen::Index n, Eigen::Index m, int k,
                                                std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_map: need at least one Kraus matrix");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    Matrix v(n, m);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        v(r, c) = Complex(gauss(rng), gauss(rng));
      }
    }
    kraus.push_back(std::move(v));
  }
  Matrix s = Matrix::Zero(m, m);
  for (const Matrix& v : kraus) s += v.adjoint() * v;
  // Force unitality exactly: V_j <- V_j S^{-1/2}.
  const PdMatrix s_pd(hermitize(s));
  const Matrix s_inv_sqrt = mpow(s_pd, -0.5).raw();
  for (Matrix& v : kraus) v = v * s_inv_sqrt;
  return UnitalPositiveMap(std::move(kraus), false, "random-kraus");
}

}  // namespace meanlab
