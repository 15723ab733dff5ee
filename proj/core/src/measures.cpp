#include "meanlab/measures.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace meanlab {

AtomicMeasure::AtomicMeasure(std::vector<PdMatrix> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("AtomicMeasure: empty support");
  }
  if (atoms_.size() != weights_.size()) {
    throw std::invalid_argument("AtomicMeasure: atoms/weights length mismatch");
  }
  const Eigen::Index n = atoms_.front().dim();
  for (const PdMatrix& a : atoms_) {
    if (a.dim() != n) {
      throw std::invalid_argument("AtomicMeasure: atoms of mixed dimension");
    }
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("AtomicMeasure: weights must be positive");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw std::invalid_argument("AtomicMeasure: weights sum to " + std::to_string(total));
  }
  for (double& w : weights_) w /= total;
}

AtomicMeasure pushforward_pow(const AtomicMeasure& mu, double p) {
  if (p < 1.0) {
    throw std::invalid_argument("pushforward_pow: exponent must be at least 1");
  }
  if (p == 1.0) return mu;  // keep the identity push-forward bit-exact
  std::vector<PdMatrix> atoms;
  atoms.reserve(mu.size());
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(mpow(a, p));
  return AtomicMeasure(std::move(atoms), mu.weights());
}

AtomicMeasure pushforward_inv(const AtomicMeasure& mu) {
  std::vector<PdMatrix> atoms;
  atoms.reserve(mu.size());
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(mpow(a, -1.0));
  return AtomicMeasure(std::move(atoms), mu.weights());
}

AtomicMeasure pushforward_scale(const AtomicMeasure& mu, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("pushforward_scale: alpha must be positive");
  }
  std::vector<PdMatrix> atoms;
  atoms.reserve(mu.size());
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(PdMatrix(alpha * a.raw()));
  return AtomicMeasure(std::move(atoms), mu.weights());
}

AtomicMeasure pushforward_congruence(const AtomicMeasure& mu, const Matrix& c) {
  std::vector<PdMatrix> atoms;
  atoms.reserve(mu.size());
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(congruence(c, a));
  return AtomicMeasure(std::move(atoms), mu.weights());
}

AtomicMeasure pushforward_map(const AtomicMeasure& mu, const UnitalPositiveMap& phi) {
  if (phi.in_dim() != mu.dim()) {
    throw std::invalid_argument("pushforward_map: map input dimension mismatch");
  }
  std::vector<PdMatrix> atoms;
  atoms.reserve(mu.size());
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(phi.apply(a));
  return AtomicMeasure(std::move(atoms), mu.weights());
}

AtomicMeasure condition_remove(const AtomicMeasure& mu, std::size_t index) {
  if (mu.size() < 2) {
    throw std::invalid_argument("condition_remove: measure has a single atom");
  }
  if (index >= mu.size()) {
    throw std::invalid_argument("condition_remove: index out of range");
  }
  const double removed = mu.weight(index);
  std::vector<PdMatrix> atoms;
  std::vector<double> weights;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i == index) continue;
    atoms.push_back(mu.atom(i));
    weights.push_back(mu.weight(i) / (1.0 - removed));
  }
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

AtomicMeasure discretize(const MeasureFamily& family, int cells) {
  if (cells < 1) {
    throw std::invalid_argument("discretize: need at least one cell");
  }
  std::vector<PdMatrix> atoms;
  std::vector<double> weights;
  const double h = 1.0 / cells;
  for (int j = 0; j < cells; ++j) {
    const double mid = (j + 0.5) * h;
    atoms.push_back(family.curve(mid));
    const double mass = family.density(mid) * h;
    if (!(mass >= 0.0)) {
      throw std::invalid_argument("discretize: negative density sample");
    }
    weights.push_back(mass);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::invalid_argument("discretize: density mass vanished on the sample grid");
  }
  for (double& w : weights) w /= total;
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

MeasureFamily family_catalog(const std::string& key) {
  if (key == "exp-line") {
    // curve(s) = e^s I_2, uniform density.
    MeasureFamily family;
    family.dim = 2;
    family.curve = [](double s) {
      return PdMatrix(std::exp(s) * Matrix::Identity(2, 2));
    };
    family.density = [](double) { return 1.0; };
    return family;
  }
  if (key == "rotating-ellipse") {
    // curve(s) = R(pi s / 3) diag(2 + cos(2 pi s)/2, 1/2 + s/4) R(pi s / 3)^T
    // with density proportional to 1 + s.
    MeasureFamily family;
    family.dim = 2;
    family.curve = [](double s) {
      const double theta = M_PI * s / 3.0;
      const double a = 2.0 + 0.5 * std::cos(2.0 * M_PI * s);
      const double b = 0.5 + 0.25 * s;
      Matrix rot(2, 2);
      rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
      Matrix diag = Matrix::Zero(2, 2);
      diag(0, 0) = a;
      diag(1, 1) = b;
      return PdMatrix(hermitize(rot * diag * rot.adjoint()));
    };
    family.density = [](double s) { return (1.0 + s) / 1.5; };
    return family;
  }
  std::string valid;
  for (const std::string& k : family_keys()) valid += (valid.empty() ? "" : ", ") + k;
  throw std::invalid_argument("unknown family key '" + key + "'; valid keys: " + valid);
}

std::vector<std::string> family_keys() { return {"exp-line", "rotating-ellipse"}; }

}  // namespace meanlab
