#pragma once

// Unital positive linear maps Phi: M_n -> M_m in Kraus form, optionally
// precomposed with the entrywise transpose (positive but not completely
// positive).

#include <cstdint>
#include <string>
#include <vector>

#include "meanlab/spd.hpp"

namespace meanlab {

inline constexpr double kUnitalTol = 1e-10;

class UnitalPositiveMap {
 public:
  /// Kraus matrices V_j are n x m; Phi(A) = sum_j V_j* A^opt V_j where A^opt
  /// is A or A^T per pre_transpose. Construction rejects maps whose
  /// unitality defect |sum V_j* V_j - I|_inf exceeds 1e-10.
  UnitalPositiveMap(std::vector<Matrix> kraus, bool pre_transpose = false,
                    std::string name = "kraus");

  static UnitalPositiveMap identity(Eigen::Index n);
  /// Phi(A) = V* A V for an isometry V (V*V = I).
  static UnitalPositiveMap compression(const Matrix& v);
  /// Block-diagonal pinching; block_sizes must sum to n.
  static UnitalPositiveMap pinching(const std::vector<Eigen::Index>& block_sizes);
  /// Phi(A) = tr(A)/n as a 1x1 matrix.
  static UnitalPositiveMap trace_map(Eigen::Index n);
  /// Phi(A) = A^T; positive, not completely positive.
  static UnitalPositiveMap transpose_map(Eigen::Index n);
  /// k Gaussian Kraus matrices renormalized by S^{-1/2} to exact unitality.
  static UnitalPositiveMap random_map(Eigen::Index n, Eigen::Index m, int k,
                                      std::uint64_t seed);

  PdMatrix apply(const PdMatrix& a) const;
  /// Linear action on an arbitrary (not necessarily definite) input.
  Matrix apply_linear(const Matrix& a) const;

  /// |sum V_j* V_j - I|_inf.
  double unitality_defect() const;

  Eigen::Index in_dim() const { return in_dim_; }
  Eigen::Index out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool pre_transpose() const { return pre_transpose_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<Matrix> kraus_;
  bool pre_transpose_;
  Eigen::Index in_dim_;
  Eigen::Index out_dim_;
  std::string name_;
};

}  // namespace meanlab
