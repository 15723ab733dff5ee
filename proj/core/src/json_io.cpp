#include "meanlab/json_io.hpp"

namespace meanlab {

namespace {

Json complex_parts_to_json(const Matrix& m, bool imaginary) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool has_imaginary_part(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).imag() != 0.0) return true;
    }
  }
  return false;
}

Matrix parts_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  const Json& re = j.at("re");
  if (re.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("matrix JSON: 're' row count mismatch");
  }
  Matrix m(rows, cols);
  const bool has_im = j.contains("im");
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& re_row = re.at(i);
    if (re_row.size() != static_cast<std::size_t>(cols)) {
      throw std::invalid_argument("matrix JSON: 're' column count mismatch");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const double real = re_row.at(k).get<double>();
      const double imag = has_im ? j.at("im").at(i).at(k).get<double>() : 0.0;
      m(i, k) = Complex(real, imag);
    }
  }
  return m;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_to_json: matrix must be square");
  }
  Json j;
  j["dim"] = m.rows();
  j["re"] = complex_parts_to_json(m, false);
  if (has_imaginary_part(m)) j["im"] = complex_parts_to_json(m, true);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  if (dim < 1) throw std::invalid_argument("matrix JSON: dim must be positive");
  return parts_from_json(j, dim, dim);
}

Json rect_matrix_to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["re"] = complex_parts_to_json(m, false);
  if (has_imaginary_part(m)) j["im"] = complex_parts_to_json(m, true);
  return j;
}

Matrix rect_matrix_from_json(const Json& j) {
  if (j.contains("dim")) return matrix_from_json(j);
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix JSON: rows/cols must be positive");
  }
  return parts_from_json(j, rows, cols);
}

Json pd_to_json(const PdMatrix& a) { return matrix_to_json(a.raw()); }

PdMatrix pd_from_json(const Json& j) { return PdMatrix(matrix_from_json(j)); }

Json measure_to_json(const AtomicMeasure& mu) {
  Json j;
  j["weights"] = mu.weights();
  Json atoms = Json::array();
  for (const PdMatrix& a : mu.atoms()) atoms.push_back(pd_to_json(a));
  j["atoms"] = std::move(atoms);
  return j;
}

AtomicMeasure measure_from_json(const Json& j) {
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  std::vector<PdMatrix> atoms;
  for (const Json& a : j.at("atoms")) atoms.push_back(pd_from_json(a));
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

Json map_to_json(const UnitalPositiveMap& phi) {
  Json j;
  j["pre_transpose"] = phi.pre_transpose();
  Json kraus = Json::array();
  for (const Matrix& v : phi.kraus()) kraus.push_back(rect_matrix_to_json(v));
  j["kraus"] = std::move(kraus);
  return j;
}

UnitalPositiveMap map_from_json(const Json& j) {
  std::vector<Matrix> kraus;
  for (const Json& v : j.at("kraus")) kraus.push_back(rect_matrix_from_json(v));
  return UnitalPositiveMap(std::move(kraus), j.value("pre_transpose", false));
}

Json solve_report_to_json(const SolveReport& report) {
  return Json{{"iterations", report.iterations},
              {"first_step", report.first_step},
              {"final_step", report.final_step},
              {"residual", report.residual},
              {"kamei_residual", report.kamei_residual},
              {"converged", report.converged},
              {"observed_ratio", report.observed_ratio}};
}

Json check_report_to_json(const CheckReport& report) {
  return Json{{"name", report.name},
              {"premise_satisfied", report.premise_satisfied},
              {"holds", report.holds},
              {"margin", report.margin},
              {"tolerance", report.tolerance},
              {"digest", report.digest}};
}

Json fuzz_summary_to_json(const FuzzSummary& summary) {
  Json theorems;
  for (const auto& [name, stats] : summary.per_theorem) {
    theorems[name] = Json{{"runs", stats.runs},
                          {"skipped", stats.skipped},
                          {"failures", stats.failures},
                          {"worst_margin", stats.worst_margin}};
  }
  Json defects = Json::array();
  for (const CheckReport& report : summary.defects) {
    defects.push_back(check_report_to_json(report));
  }
  return Json{{"trials", summary.config.trials},
              {"seed", summary.config.seed},
              {"total_runs", summary.total_runs},
              {"nonconvergent", summary.nonconvergent},
              {"theorems", std::move(theorems)},
              {"defects", std::move(defects)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace meanlab
