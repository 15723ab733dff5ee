#pragma once

// Two-variable matrix means (weighted geometric and quasi-geometric), the
// Tsallis relative operator entropy, and the one-step mixture map whose fixed
// point defines the power mean.

#include <optional>

#include "meanlab/measures.hpp"
#include "meanlab/spd.hpp"

namespace meanlab {

/// Exponent t in [-1,1]\{0}, optionally paired with an Ando-Hiai p >= 1.
struct PowerParam {
  double t;
  std::optional<double> p;

  explicit PowerParam(double t_value, std::optional<double> p_value = std::nullopt);
};

/// Weighted geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}
/// for t in [0,1]; #_0 = A, #_1 = B. Parsing round-off up to 1e-15 outside
/// [0,1] is clamped.
PdMatrix gmean(const PdMatrix& a, const PdMatrix& b, double t);

/// Quasi-geometric mean A natural_t B, the same formula for t in [-1,0).
PdMatrix qgmean(const PdMatrix& a, const PdMatrix& b, double t);

/// Tsallis relative operator entropy T_t(A|B) = (A #_t B - A)/t, Hermitian
/// and possibly indefinite; uses the quasi-geometric mean for t < 0.
Matrix tsallis(const PdMatrix& a, const PdMatrix& b, double t);

/// One Picard step of the power-mean equation: f(X) = sum_i w_i (X #_t A_i),
/// t in (0,1].
PdMatrix mixture(const PdMatrix& x, const AtomicMeasure& mu, double t);

PdMatrix arithmetic_mean(const AtomicMeasure& mu);
PdMatrix harmonic_mean(const AtomicMeasure& mu);

/// sum_i w_i A_i^t.
PdMatrix power_integral(const AtomicMeasure& mu, double t);

}  // namespace meanlab
