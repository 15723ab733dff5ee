#include "meanlab/means.hpp"

#include <cmath>

namespace meanlab {

namespace {

constexpr double kClampSlack = 1e-15;

// Shared kernel for #_t (t in [0,1]) and natural_t (t in [-1,0)).
PdMatrix sharp(const PdMatrix& a, const PdMatrix& b, double t) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("geometric mean: dimension mismatch");
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  const PdMatrix a_sqrt = mpow(a, 0.5);
  const PdMatrix a_inv_sqrt = mpow(a, -0.5);
  const PdMatrix inner(hermitize(a_inv_sqrt.raw() * b.raw() * a_inv_sqrt.raw()));
  const PdMatrix powered = mpow(inner, t);
  return PdMatrix(hermitize(a_sqrt.raw() * powered.raw() * a_sqrt.raw()));
}

}  // namespace

PowerParam::PowerParam(double t_value, std::optional<double> p_value)
    : t(t_value), p(p_value) {
  if (t == 0.0 || std::abs(t) > 1.0 + kClampSlack) {
    throw std::invalid_argument("PowerParam: t must lie in [-1,1] excluding 0");
  }
  if (t > 1.0) t = 1.0;
  if (t < -1.0) t = -1.0;
  if (p && *p < 1.0) {
    throw std::invalid_argument("PowerParam: p must be at least 1");
  }
}

PdMatrix gmean(const PdMatrix& a, const PdMatrix& b, double t) {
  if (t < -kClampSlack || t > 1.0 + kClampSlack) {
    throw std::invalid_argument("gmean: t must lie in [0,1]");
  }
  t = std::min(std::max(t, 0.0), 1.0);
  return sharp(a, b, t);
}

PdMatrix qgmean(const PdMatrix& a, const PdMatrix& b, double t) {
  if (t >= 0.0 || t < -1.0 - kClampSlack) {
    throw std::invalid_argument("qgmean: t must lie in [-1,0)");
  }
  t = std::max(t, -1.0);
  return sharp(a, b, t);
}

Matrix tsallis(const PdMatrix& a, const PdMatrix& b, double t) {
  if (t == 0.0) {
    throw std::invalid_argument("tsallis: t = 0 is excluded");
  }
  const PdMatrix mean = t > 0.0 ? gmean(a, b, t) : qgmean(a, b, t);
  return hermitize((mean.raw() - a.raw()) / t);
}

PdMatrix mixture(const PdMatrix& x, const AtomicMeasure& mu, double t) {
  if (x.dim() != mu.dim()) {
    throw std::invalid_argument("mixture: dimension mismatch");
  }
  if (t <= 0.0 || t > 1.0 + 1e-15) {
    throw std::invalid_argument("mixture: t must lie in (0,1]");
  }
  Matrix sum = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * gmean(x, mu.atom(i), std::min(t, 1.0)).raw();
  }
  return PdMatrix(hermitize(sum));
}

PdMatrix arithmetic_mean(const AtomicMeasure& mu) {
  Matrix sum = Matrix::Zero(mu.dim(), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) sum += mu.weight(i) * mu.atom(i).raw();
  return PdMatrix(hermitize(sum));
}

PdMatrix harmonic_mean(const AtomicMeasure& mu) {
  Matrix sum = Matrix::Zero(mu.dim(), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * mpow(mu.atom(i), -1.0).raw();
  }
  return mpow(PdMatrix(hermitize(sum)), -1.0);
}

PdMatrix power_integral(const AtomicMeasure& mu, double t) {
  Matrix sum = Matrix::Zero(mu.dim(), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * mpow(mu.atom(i), t).raw();
  }
  return PdMatrix(hermitize(sum));
}

}  // namespace meanlab
