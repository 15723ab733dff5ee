#include "meanlab/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace meanlab {

namespace {

double relative_margin(const OrderResult& order) {
  return order.scale > 0.0 ? order.margin / order.scale : order.margin;
}

CheckReport make_report(std::string name, bool premise, bool holds, double margin,
                        double tol, std::string digest) {
  return CheckReport{std::move(name), premise, holds, margin, tol, std::move(digest)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CheckReport check_sandwich(const AtomicMeasure& mu, double t, double s, double tol,
                           const std::string& digest) {
  if (!(0.0 < t && t <= s && s <= 1.0)) {
    throw std::invalid_argument("check_sandwich: need 0 < t <= s <= 1");
  }
  const PdMatrix harmonic = harmonic_mean(mu);
  const PdMatrix arithmetic = arithmetic_mean(mu);
  const PdMatrix p_neg_s = solve(mu, -s).mean;
  const PdMatrix p_neg_t = solve(mu, -t).mean;
  const PdMatrix p_pos_t = solve(mu, t).mean;
  const PdMatrix p_pos_s = solve(mu, s).mean;

  double margin = relative_margin(loewner_leq(harmonic, p_neg_s, tol));
  margin = std::min(margin, relative_margin(loewner_leq(p_neg_s, p_neg_t, tol)));
  margin = std::min(margin, relative_margin(loewner_leq(p_neg_t, p_pos_t, tol)));
  margin = std::min(margin, relative_margin(loewner_leq(p_pos_t, p_pos_s, tol)));
  margin = std::min(margin, relative_margin(loewner_leq(p_pos_s, arithmetic, tol)));
  return make_report("sandwich", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_ando_hiai(const AtomicMeasure& mu, double t, double p, double tol,
                            const std::string& digest) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("check_ando_hiai: t in (0,1]");
  if (p < 1.0) throw std::invalid_argument("check_ando_hiai: p must be at least 1");

  const PdMatrix p_t = solve(mu, t).mean;
  const double alpha = p_t.norm_inf();
  // Homogeneity makes the normalized mean exact: P_t(mu / alpha) = P_t(mu)/alpha.
  const AtomicMeasure mu_n = pushforward_scale(mu, 1.0 / alpha);
  const PdMatrix p_t_n(p_t.raw() / alpha);

  const AtomicMeasure nu = pushforward_pow(mu_n, p);
  const PdMatrix p_tp = solve(nu, t / p).mean;

  const double norm_margin = 1.0 - p_tp.norm_inf();
  const double order_margin = relative_margin(loewner_leq(p_tp, p_t_n, tol));
  const double margin = std::min(norm_margin, order_margin);
  return make_report("ando-hiai", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_ando_hiai_dual(const AtomicMeasure& mu, double t, double p, double tol,
                                 const std::string& digest) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("check_ando_hiai_dual: t in (0,1]");
  if (p < 1.0) throw std::invalid_argument("check_ando_hiai_dual: p must be at least 1");

  // Normalize so P_t(inv # mu) <= I, i.e. P_{-t}(mu) >= I.
  const double beta = solve(pushforward_inv(mu), t).mean.norm_inf();
  const AtomicMeasure mu_n = pushforward_scale(mu, beta);
  const PdMatrix p_neg_t = solve(mu_n, -t).mean;
  const AtomicMeasure nu = pushforward_pow(mu_n, p);
  const PdMatrix p_neg_tp = solve(nu, -t / p).mean;

  const double margin = relative_margin(loewner_leq(p_neg_t, p_neg_tp, tol));
  return make_report("ando-hiai-dual", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_lemma_th1(const AtomicMeasure& mu, double t, double tol,
                            const std::string& digest) {
  if (t == 0.0 || std::abs(t) > 1.0) {
    throw std::invalid_argument("check_lemma_th1: t in [-1,1] excluding 0");
  }
  // Scale so the power integral has unit spectral norm; the premise then
  // holds with margin exactly 0 in both directions of t.
  const double top = power_integral(mu, t).norm_inf();
  const double c = std::pow(top, -1.0 / t);
  const AtomicMeasure mu_n = pushforward_scale(mu, c);
  const PdMatrix p_t = solve(mu_n, t).mean;
  const PdMatrix id = PdMatrix::identity(mu.dim());

  const double margin = t > 0.0 ? relative_margin(loewner_leq(p_t, id, tol))
                                : relative_margin(loewner_leq(id, p_t, tol));
  return make_report("lemma-th1", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_tsallis_criterion(const PdMatrix& x, const AtomicMeasure& mu, double t,
                                    double tol, const std::string& digest) {
  if (t == 0.0 || std::abs(t) > 1.0) {
    throw std::invalid_argument("check_tsallis_criterion: t in [-1,1] excluding 0");
  }
  Matrix sum = Matrix::Zero(x.dim(), x.dim());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    sum += mu.weight(i) * tsallis(x, mu.atom(i), t);
  }
  const EigenPair spectrum = eig_herm(sum);
  const double lo = spectrum.values.minCoeff();
  const double hi = spectrum.values.maxCoeff();
  const double scale = std::max(x.norm_inf(), spectrum.values.cwiseAbs().maxCoeff());

  const bool nonneg = lo >= -tol * scale;
  const bool nonpos = hi <= tol * scale;
  if (!nonneg && !nonpos) {
    return make_report("tsallis", false, true, 0.0, tol, digest);
  }
  const PdMatrix p_t = solve(mu, t).mean;
  double margin = std::numeric_limits<double>::infinity();
  if (nonneg) margin = std::min(margin, relative_margin(loewner_leq(x, p_t, tol)));
  if (nonpos) margin = std::min(margin, relative_margin(loewner_leq(p_t, x, tol)));
  return make_report("tsallis", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_info_monotonicity(const AtomicMeasure& mu, double t,
                                    const UnitalPositiveMap& phi, double tol,
                                    const std::string& digest) {
  const PdMatrix lhs = phi.apply(solve(mu, t).mean);
  const PdMatrix rhs = solve(pushforward_map(mu, phi), t).mean;
  const double margin = relative_margin(loewner_leq(lhs, rhs, tol));
  return make_report("info-mono", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_atom_reduction(const AtomicMeasure& nu, double t, double w, double tol,
                                 const std::string& digest) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("check_atom_reduction: t in (0,1]");
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("check_atom_reduction: w in (0,1)");

  const PdMatrix x = solve(nu, t).mean;
  std::vector<PdMatrix> atoms = nu.atoms();
  std::vector<double> weights;
  for (double wi : nu.weights()) weights.push_back((1.0 - w) * wi);
  atoms.push_back(x);
  weights.push_back(w);
  const AtomicMeasure mu(std::move(atoms), std::move(weights));

  const PdMatrix y = solve(mu, t).mean;
  const double dist = thompson(x, y);

  // Conditioning the appended atom back out must reproduce nu exactly.
  const AtomicMeasure back = condition_remove(mu, mu.size() - 1);
  bool reproduced = back.size() == nu.size();
  for (std::size_t i = 0; reproduced && i < nu.size(); ++i) {
    reproduced = std::abs(back.weight(i) - nu.weight(i)) <= 1e-12 &&
                 (back.atom(i).raw() - nu.atom(i).raw()).cwiseAbs().maxCoeff() <= 1e-12;
  }

  const double margin = -dist;
  return make_report("atom-reduction", true, reproduced && margin >= -tol, margin, tol,
                     digest);
}

CheckReport check_dominated_reduction(const AtomicMeasure& mu, double t, std::size_t index,
                                      double tol, const std::string& digest) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::invalid_argument("check_dominated_reduction: t in (0,1]");
  }
  const PdMatrix& b = mu.atom(index);
  const PdMatrix p_mu = solve(mu, t).mean;
  if (!loewner_leq(p_mu, b, tol).holds) {
    return make_report("dominated-reduction", false, true, 0.0, tol, digest);
  }
  const AtomicMeasure nu = condition_remove(mu, index);
  const PdMatrix p_nu = solve(nu, t).mean;
  const double margin = relative_margin(loewner_leq(p_nu, b, tol));
  return make_report("dominated-reduction", true, margin >= -tol, margin, tol, digest);
}

CheckReport check_discretization(const MeasureFamily& family, double t, int cells,
                                 double tol, const std::string& digest) {
  if (cells < 2) throw std::invalid_argument("check_discretization: need at least 2 cells");
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::invalid_argument("check_discretization: t in (0,1]");
  }
  const AtomicMeasure coarse = discretize(family, cells);
  const AtomicMeasure fine = discretize(family, 4 * cells);

  // eps = max cellwise Thompson diameter, 8 samples per coarse cell.
  double eps = 0.0;
  const double h = 1.0 / cells;
  for (int j = 0; j < cells; ++j) {
    std::vector<PdMatrix> samples;
    for (int i = 0; i < 8; ++i) {
      samples.push_back(family.curve((j + (i + 0.5) / 8.0) * h));
    }
    for (std::size_t a = 0; a < samples.size(); ++a) {
      for (std::size_t b = a + 1; b < samples.size(); ++b) {
        eps = std::max(eps, thompson(samples[a], samples[b]));
      }
    }
  }

  const double dist = thompson(solve(coarse, t).mean, solve(fine, t).mean);
  const double margin = 2.0 * eps - dist;
  return make_report("discretization", true, margin >= -tol, margin, tol, digest);
}

std::vector<std::string> checker_names() {
  return {"sandwich",       "ando-hiai",      "ando-hiai-dual",
          "lemma-th1",      "tsallis",        "info-mono",
          "atom-reduction", "dominated-reduction", "discretization"};
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (double v : grid) {
    if (!out.empty()) out += ",";
    out += format_double(v);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::string make_digest(const std::string& checker, std::uint64_t instance_seed,
                        const FuzzConfig& cfg) {
  std::ostringstream out;
  out << "checker=" << checker << ";seed=" << instance_seed << ";n_max=" << cfg.n_max
      << ";k_max=" << cfg.k_max << ";cond=" << format_double(cfg.cond_max)
      << ";t_grid=" << join_grid(cfg.t_grid) << ";p_grid=" << join_grid(cfg.p_grid);
  return out.str();
}

struct TrialRng {
  std::mt19937_64 rng;

  explicit TrialRng(std::uint64_t seed) : rng(seed) {}

  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  template <typename T>
  T pick(const std::vector<T>& values) {
    return values[rng() % values.size()];
  }
  std::uint64_t sub_seed() { return rng(); }
};

AtomicMeasure random_measure(TrialRng& trng, int n, int k, double cond_max) {
  std::vector<PdMatrix> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    atoms.push_back(random_pd(n, cond_max, trng.sub_seed()));
    const double w = trng.uniform(0.1, 1.0);
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

std::vector<double> positive_part(const std::vector<double>& grid) {
  std::vector<double> out;
  for (double v : grid) {
    if (v > 0.0) out.push_back(v);
  }
  if (out.empty()) out.push_back(0.5);
  return out;
}

UnitalPositiveMap random_catalog_map(TrialRng& trng, int n) {
  switch (trng.uniform_int(0, 5)) {
    case 0:
      return UnitalPositiveMap::identity(n);
    case 1: {
      const int m = trng.uniform_int(1, n);
      std::mt19937_64 rng(trng.sub_seed());
      std::normal_distribution<double> gauss(0.0, 1.0);
      Matrix g(n, m);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
      }
      Eigen::HouseholderQR<Matrix> qr(g);
      const Matrix v = Matrix(qr.householderQ()) * Matrix::Identity(n, m);
      return UnitalPositiveMap::compression(v);
    }
    case 2: {
      std::vector<Eigen::Index> blocks;
      int remaining = n;
      while (remaining > 0) {
        const int size = trng.uniform_int(1, remaining);
        blocks.push_back(size);
        remaining -= size;
      }
      return UnitalPositiveMap::pinching(blocks);
    }
    case 3:
      return UnitalPositiveMap::trace_map(n);
    case 4:
      return UnitalPositiveMap::transpose_map(n);
    default:
      return UnitalPositiveMap::random_map(n, trng.uniform_int(1, n),
                                           trng.uniform_int(1, 3), trng.sub_seed());
  }
}

}  // namespace

CheckReport run_fuzz_trial(const std::string& checker, std::uint64_t instance_seed,
                           const FuzzConfig& cfg) {
  const std::string digest = make_digest(checker, instance_seed, cfg);
  TrialRng trng(instance_seed);
  const int n = trng.uniform_int(2, std::max(2, cfg.n_max));
  const int k = trng.uniform_int(2, std::max(2, cfg.k_max));
  const std::vector<double> pos_t = positive_part(cfg.t_grid);

  if (checker == "sandwich") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    double t = trng.pick(pos_t);
    double s = trng.pick(pos_t);
    if (t > s) std::swap(t, s);
    return check_sandwich(mu, t, s, kCheckTol, digest);
  }
  if (checker == "ando-hiai") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    return check_ando_hiai(mu, trng.pick(pos_t), trng.pick(cfg.p_grid), kCheckTol, digest);
  }
  if (checker == "ando-hiai-dual") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    return check_ando_hiai_dual(mu, trng.pick(pos_t), trng.pick(cfg.p_grid), kCheckTol,
                                digest);
  }
  if (checker == "lemma-th1") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    return check_lemma_th1(mu, trng.pick(cfg.t_grid), kCheckTol, digest);
  }
  if (checker == "tsallis") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    const double t = trng.pick(cfg.t_grid);
    // Mix definite-sign instances (scalings of the fixed point) with fully
    // random X that may land on the skipped indefinite branch.
    PdMatrix x = trng.uniform_int(0, 3) == 0
                     ? random_pd(n, cfg.cond_max, trng.sub_seed())
                     : PdMatrix(trng.pick(std::vector<double>{0.8, 0.9, 1.1, 1.25}) *
                                solve(mu, t).mean.raw());
    return check_tsallis_criterion(x, mu, t, kCheckTol, digest);
  }
  if (checker == "info-mono") {
    const AtomicMeasure mu = random_measure(trng, n, k, cfg.cond_max);
    const UnitalPositiveMap phi = random_catalog_map(trng, n);
    return check_info_monotonicity(mu, trng.pick(cfg.t_grid), phi, kCheckTol, digest);
  }
  if (checker == "atom-reduction") {
    const AtomicMeasure nu = random_measure(trng, n, k, cfg.cond_max);
    const double w = trng.pick(std::vector<double>{0.1, 0.5, 0.9});
    return check_atom_reduction(nu, trng.pick(pos_t), w, kCheckTol, digest);
  }
  if (checker == "dominated-reduction") {
    AtomicMeasure nu = random_measure(trng, n, k, cfg.cond_max);
    // Append a dominating atom: the arithmetic mean plus a PSD bump.
    const PdMatrix bump = random_pd(n, cfg.cond_max, trng.sub_seed());
    const PdMatrix b(arithmetic_mean(nu).raw() + 0.5 * bump.raw());
    const double w = trng.uniform(0.1, 0.5);
    std::vector<PdMatrix> atoms = nu.atoms();
    std::vector<double> weights;
    for (double wi : nu.weights()) weights.push_back((1.0 - w) * wi);
    atoms.push_back(b);
    weights.push_back(w);
    const AtomicMeasure mu(std::move(atoms), std::move(weights));
    return check_dominated_reduction(mu, trng.pick(pos_t), mu.size() - 1, kCheckTol,
                                     digest);
  }
  if (checker == "discretization") {
    const std::vector<std::string> keys = family_keys();
    const MeasureFamily family = family_catalog(keys[trng.rng() % keys.size()]);
    const int cells = trng.pick(std::vector<int>{4, 8});
    return check_discretization(family, trng.pick(pos_t), cells, kCheckTol, digest);
  }
  throw std::invalid_argument("run_fuzz_trial: unknown checker '" + checker + "'");
}

CheckReport replay(const std::string& digest) {
  std::string checker;
  std::uint64_t instance_seed = 0;
  FuzzConfig cfg;
  std::istringstream in(digest);
  std::string field;
  while (std::getline(in, field, ';')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "checker") checker = value;
    else if (key == "seed") instance_seed = std::stoull(value);
    else if (key == "n_max") cfg.n_max = std::stoi(value);
    else if (key == "k_max") cfg.k_max = std::stoi(value);
    else if (key == "cond") cfg.cond_max = std::stod(value);
    else if (key == "t_grid") cfg.t_grid = parse_grid(value);
    else if (key == "p_grid") cfg.p_grid = parse_grid(value);
  }
  if (checker.empty()) {
    throw std::invalid_argument("replay: digest is missing the checker field");
  }
  return run_fuzz_trial(checker, instance_seed, cfg);
}

FuzzSummary fuzz(const FuzzConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("fuzz: trials must be at least 1");
  FuzzSummary summary;
  summary.config = cfg;
  const std::vector<std::string> names = checker_names();
  for (int trial = 0; trial < cfg.trials; ++trial) {
    for (std::size_t ci = 0; ci < names.size(); ++ci) {
      const std::uint64_t instance_seed =
          splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(trial) * 131 + ci));
      TheoremStats& stats = summary.per_theorem[names[ci]];
      try {
        const CheckReport report = run_fuzz_trial(names[ci], instance_seed, cfg);
        ++stats.runs;
        ++summary.total_runs;
        if (!report.premise_satisfied) {
          ++stats.skipped;
          continue;
        }
        stats.worst_margin = std::min(stats.worst_margin, report.margin);
        if (!report.holds) {
          ++stats.failures;
          if (report.margin < -10.0 * report.tolerance) summary.defects.push_back(report);
        }
      } catch (const SolveError&) {
        ++summary.nonconvergent;
      }
    }
  }
  return summary;
}

}  // namespace meanlab
