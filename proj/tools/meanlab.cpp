// meanlab: power means of finitely supported measures on the PD cone.
//
// Subcommands:
//   compute     solve the power-mean fixed point for a measure JSON
//   verify      run one inequality checker and emit its CheckReport
//   fuzz        run every checker on seeded random instances
//   discretize  turn a built-in curve family into an atomic measure JSON
//
// Exit codes: 0 success/holds, 1 usage or parse error, 2 non-convergence,
// 3 inequality defect.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "meanlab/inequality_lab.hpp"
#include "meanlab/json_io.hpp"

namespace {

using namespace meanlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitDefect = 3;

constexpr Eigen::Index kMaxDim = 64;
constexpr std::size_t kMaxAtoms = 64;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

AtomicMeasure load_measure(const std::string& path) {
  const Json j = Json::parse(read_input(path));
  AtomicMeasure mu = measure_from_json(j);
  if (mu.dim() > kMaxDim) {
    throw std::runtime_error("measure dimension exceeds the supported limit of 64");
  }
  if (mu.size() > kMaxAtoms) {
    throw std::runtime_error("measure atom count exceeds the supported limit of 64");
  }
  return mu;
}

struct Options {
  std::string input = "-";
  std::string output;
  std::string theorem;
  std::string family = "exp-line";
  double t = 0.5;
  double s = 1.0;
  double p = 2.0;
  double tol = -1.0;  // unset; solver defaults to 1e-12, checkers to 1e-8

  double solver_tol() const { return tol > 0.0 ? tol : 1e-12; }
  double check_tol() const { return tol > 0.0 ? tol : kCheckTol; }
  double cond = 100.0;
  int n = 3;
  int k = 4;
  int cells = 8;
  int trials = 100;
  std::uint64_t seed = 1;
  bool have_input = false;
};

AtomicMeasure instance_measure(const Options& opt) {
  if (opt.have_input) return load_measure(opt.input);
  if (opt.n < 1 || opt.n > kMaxDim || opt.k < 1 || static_cast<std::size_t>(opt.k) > kMaxAtoms) {
    throw std::runtime_error("generator parameters must satisfy 1 <= n,k <= 64");
  }
  std::mt19937_64 rng(opt.seed);
  std::vector<PdMatrix> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < opt.k; ++i) {
    atoms.push_back(random_pd(opt.n, opt.cond, rng()));
    const double w = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

void require_t(double t) {
  if (t == 0.0 || std::abs(t) > 1.0) {
    throw std::runtime_error("t must lie in [-1,1] excluding 0 (t = 0 is excluded)");
  }
}

int cmd_compute(const Options& opt) {
  require_t(opt.t);
  const AtomicMeasure mu = load_measure(opt.input);
  SolveOptions solve_opts;
  solve_opts.tol_thompson = opt.solver_tol();
  try {
    const SolveResult result = solve(mu, opt.t, solve_opts);
    Json j{{"mean", pd_to_json(result.mean)},
           {"report", solve_report_to_json(result.report)}};
    write_output(opt.output, dump(j));
    return kExitOk;
  } catch (const SolveError& e) {
    Json j{{"error", e.what()}, {"report", solve_report_to_json(e.report)}};
    write_output(opt.output, dump(j));
    return kExitNoConvergence;
  }
}

int cmd_verify(const Options& opt) {
  CheckReport report;
  std::ostringstream digest;
  digest << "cli;theorem=" << opt.theorem << ";seed=" << opt.seed;

  if (opt.theorem == "sandwich") {
    report = check_sandwich(instance_measure(opt), opt.t, opt.s, opt.check_tol(), digest.str());
  } else if (opt.theorem == "ando-hiai") {
    report = check_ando_hiai(instance_measure(opt), opt.t, opt.p, opt.check_tol(), digest.str());
  } else if (opt.theorem == "ando-hiai-dual") {
    report = check_ando_hiai_dual(instance_measure(opt), opt.t, opt.p, opt.check_tol(), digest.str());
  } else if (opt.theorem == "lemma-th1") {
    report = check_lemma_th1(instance_measure(opt), opt.t, opt.check_tol(), digest.str());
  } else if (opt.theorem == "tsallis") {
    const AtomicMeasure mu = instance_measure(opt);
    const PdMatrix x(0.9 * solve(mu, opt.t).mean.raw());
    report = check_tsallis_criterion(x, mu, opt.t, opt.check_tol(), digest.str());
  } else if (opt.theorem == "info-mono") {
    const AtomicMeasure mu = instance_measure(opt);
    const UnitalPositiveMap phi =
        UnitalPositiveMap::random_map(mu.dim(), mu.dim(), 2, opt.seed + 1);
    report = check_info_monotonicity(mu, opt.t, phi, opt.check_tol(), digest.str());
  } else if (opt.theorem == "atom-reduction") {
    report = check_atom_reduction(instance_measure(opt), opt.t, 0.5, opt.check_tol(), digest.str());
  } else if (opt.theorem == "dominated-reduction") {
    AtomicMeasure nu = instance_measure(opt);
    const PdMatrix bump = random_pd(nu.dim(), opt.cond, opt.seed + 2);
    const PdMatrix b(arithmetic_mean(nu).raw() + 0.5 * bump.raw());
    std::vector<PdMatrix> atoms = nu.atoms();
    std::vector<double> weights;
    for (double w : nu.weights()) weights.push_back(0.75 * w);
    atoms.push_back(b);
    weights.push_back(0.25);
    const AtomicMeasure mu(std::move(atoms), std::move(weights));
    report = check_dominated_reduction(mu, opt.t, mu.size() - 1, opt.check_tol(), digest.str());
  } else if (opt.theorem == "discretization") {
    report = check_discretization(family_catalog(opt.family), opt.t, opt.cells,
                                  opt.check_tol(), digest.str());
  } else {
    std::string keys;
    for (const std::string& k :
         {"sandwich", "ando-hiai", "ando-hiai-dual", "lemma-th1", "tsallis", "info-mono",
          "atom-reduction", "dominated-reduction", "discretization"}) {
      keys += keys.empty() ? k : std::string(", ") + k;
    }
    throw std::runtime_error("unknown theorem key '" + opt.theorem +
                             "'; valid keys: " + keys);
  }

  write_output(opt.output, dump(check_report_to_json(report)));
  return report.holds ? kExitOk : kExitDefect;
}

int cmd_fuzz(const Options& opt) {
  FuzzConfig cfg;
  cfg.n_max = opt.n;
  cfg.k_max = opt.k;
  cfg.cond_max = opt.cond;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  const FuzzSummary summary = fuzz(cfg);
  write_output(opt.output, dump(fuzz_summary_to_json(summary)));
  return summary.defects.empty() ? kExitOk : kExitDefect;
}

int cmd_discretize(const Options& opt) {
  const MeasureFamily family = family_catalog(opt.family);
  const AtomicMeasure mu = discretize(family, opt.cells);
  write_output(opt.output, dump(measure_to_json(mu)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power means of probability measures on the positive-definite cone"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Output path (default stdout)");
    sub->add_option("--tol", opt.tol, "Checker / solver tolerance");
    sub->add_option("--seed", opt.seed, "Random seed")->envname("MEANLAB_SEED");
  };

  CLI::App* compute = app.add_subcommand("compute", "Solve the power-mean fixed point");
  compute->add_option("--input", opt.input, "Measure JSON path or '-' for stdin");
  compute->add_option("--t", opt.t, "Power exponent in [-1,1] excluding 0")->required();
  add_common(compute);

  CLI::App* verify = app.add_subcommand("verify", "Run one inequality checker");
  verify->add_option("--theorem", opt.theorem, "Theorem key")->required();
  verify->add_option("--input", opt.input, "Measure JSON path")
      ->each([&](const std::string&) { opt.have_input = true; });
  verify->add_option("--t", opt.t, "Power exponent");
  verify->add_option("--s", opt.s, "Second exponent for the sandwich chain");
  verify->add_option("--p", opt.p, "Ando-Hiai exponent (p >= 1)");
  verify->add_option("--n", opt.n, "Generated instance dimension");
  verify->add_option("--k", opt.k, "Generated instance atom count");
  verify->add_option("--cond", opt.cond, "Condition-number cap for generated atoms");
  verify->add_option("--family", opt.family, "Curve family key for discretization");
  verify->add_option("--cells", opt.cells, "Coarse cell count for discretization");
  add_common(verify);

  CLI::App* fuzz_cmd = app.add_subcommand("fuzz", "Fuzz every checker");
  fuzz_cmd->add_option("--trials", opt.trials, "Trials per checker");
  fuzz_cmd->add_option("--n", opt.n, "Max dimension");
  fuzz_cmd->add_option("--k", opt.k, "Max atom count");
  fuzz_cmd->add_option("--cond", opt.cond, "Condition-number cap");
  add_common(fuzz_cmd);

  CLI::App* discretize_cmd =
      app.add_subcommand("discretize", "Discretize a built-in curve family");
  discretize_cmd->add_option("--family", opt.family, "Curve family key")->required();
  discretize_cmd->add_option("--cells", opt.cells, "Number of midpoint cells");
  add_common(discretize_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;  // --help exits 0
  }

  try {
    if (compute->parsed()) return cmd_compute(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (fuzz_cmd->parsed()) return cmd_fuzz(opt);
    if (discretize_cmd->parsed()) return cmd_discretize(opt);
  } catch (const Json::parse_error& e) {
    std::cerr << "meanlab: JSON parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "meanlab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
