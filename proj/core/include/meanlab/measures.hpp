#pragma once

// Finitely supported probability measures on the PD cone, the push-forward
// constructions used throughout, atom-removal conditioning, and midpoint-rule
// discretization of parameterized one-dimensional families.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "meanlab/positive_maps.hpp"
#include "meanlab/spd.hpp"

namespace meanlab {

inline constexpr double kWeightSumTol = 1e-9;

class AtomicMeasure {
 public:
  /// Weights must be positive and sum to 1 within 1e-9 (renormalized);
  /// atoms must share a dimension.
  AtomicMeasure(std::vector<PdMatrix> atoms, std::vector<double> weights);

  std::size_t size() const { return atoms_.size(); }
  Eigen::Index dim() const { return atoms_.front().dim(); }
  const PdMatrix& atom(std::size_t i) const { return atoms_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<PdMatrix>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<PdMatrix> atoms_;
  std::vector<double> weights_;
};

/// Atoms become A_i^p, weights unchanged. Requires p >= 1.
AtomicMeasure pushforward_pow(const AtomicMeasure& mu, double p);

/// Atoms become A_i^{-1}; an involution.
AtomicMeasure pushforward_inv(const AtomicMeasure& mu);

/// Atoms become alpha * A_i for alpha > 0.
AtomicMeasure pushforward_scale(const AtomicMeasure& mu, double alpha);

/// Atoms become C* A_i C for invertible C.
AtomicMeasure pushforward_congruence(const AtomicMeasure& mu, const Matrix& c);

/// Atoms become Phi(A_i); coincident images are not merged.
AtomicMeasure pushforward_map(const AtomicMeasure& mu, const UnitalPositiveMap& phi);

/// Removes the atom at index and renormalizes the remaining weights by
/// 1/(1 - removed weight). Requires at least two atoms.
AtomicMeasure condition_remove(const AtomicMeasure& mu, std::size_t index);

/// A continuous measure represented as a parameterized curve s in [0,1] with
/// a density integrating to 1 (caller-asserted).
struct MeasureFamily {
  std::function<PdMatrix(double)> curve;
  std::function<double(double)> density;
  Eigen::Index dim = 0;
};

/// Midpoint-rule discretization on the uniform partition of [0,1] into
/// `cells` cells; weights renormalized to sum 1.
AtomicMeasure discretize(const MeasureFamily& family, int cells);

/// Built-in family catalog for the CLI; throws on unknown keys.
MeasureFamily family_catalog(const std::string& key);
std::vector<std::string> family_keys();

}  // namespace meanlab
