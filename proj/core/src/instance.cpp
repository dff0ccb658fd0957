#include "dualcert/instance.hpp"

#include <openssl/evp.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dualcert/rng.hpp"
#include "json.hpp"

namespace dualcert {

namespace {

using ordered_json = nlohmann::ordered_json;

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_symmetric(const Eigen::MatrixXd& m, double tol, const std::string& field,
                     ValidationReport& report) {
  if (m.rows() != m.cols()) return;  // shape violations are reported separately
  const double skew = max_abs(m - m.transpose());
  if (skew > tol) {
    report.ok = false;
    report.violations.push_back({field, "not symmetric, |M - M'|_max exceeds tolerance", skew});
  }
}

}  // namespace

double symmetry_tolerance(const ProblemInstance& inst) {
  return 1e-12 * std::max(1.0, max_abs(inst.A));
}

ValidationReport validate(const ProblemInstance& inst) {
  ValidationReport report;
  auto flag = [&report](const std::string& field, const std::string& what, double measured) {
    report.ok = false;
    report.violations.push_back({field, what, measured});
  };

  if (inst.dim < 1) flag("n", "primal dimension must be >= 1", static_cast<double>(inst.dim));
  if (inst.num_terms < 1)
    flag("N", "number of quartic terms must be >= 1", static_cast<double>(inst.num_terms));

  const auto n = inst.dim;
  const auto N = inst.num_terms;

  if (inst.A.rows() != n || inst.A.cols() != n)
    flag("A", "must be n x n", static_cast<double>(inst.A.rows()));
  if (!all_finite(inst.A)) flag("A", "non-finite entry", 0.0);

  if (static_cast<Eigen::Index>(inst.B.size()) != N)
    flag("B", "must hold N matrices", static_cast<double>(inst.B.size()));
  for (std::size_t j = 0; j < inst.B.size(); ++j) {
    const std::string field = "B[" + std::to_string(j) + "]";
    if (inst.B[j].rows() != n || inst.B[j].cols() != n)
      flag(field, "must be n x n", static_cast<double>(inst.B[j].rows()));
    if (!all_finite(inst.B[j])) flag(field, "non-finite entry", 0.0);
  }

  const double sym_tol = symmetry_tolerance(inst);
  check_symmetric(inst.A, sym_tol, "A", report);
  for (std::size_t j = 0; j < inst.B.size(); ++j)
    check_symmetric(inst.B[j], sym_tol, "B[" + std::to_string(j) + "]", report);

  if (inst.gamma.size() != N)
    flag("gamma", "must have N entries", static_cast<double>(inst.gamma.size()));
  for (Eigen::Index j = 0; j < inst.gamma.size(); ++j) {
    if (!(inst.gamma[j] > 0.0) || !std::isfinite(inst.gamma[j]))
      flag("gamma", "weight " + std::to_string(j) + " must be a positive real", inst.gamma[j]);
  }

  if (inst.c.size() != N) flag("c", "must have N entries", static_cast<double>(inst.c.size()));
  if (!all_finite(inst.c)) flag("c", "non-finite entry", 0.0);

  if (inst.f.size() != n) flag("f", "must have n entries", static_cast<double>(inst.f.size()));
  if (!all_finite(inst.f)) flag("f", "non-finite entry", 0.0);

  return report;
}

namespace {

Eigen::MatrixXd parse_matrix(const ordered_json& value, const std::string& field) {
  if (!value.is_array() || value.empty())
    throw ParseError(field, "expected a non-empty array of rows");
  const std::size_t rows = value.size();
  const std::size_t cols = value[0].is_array() ? value[0].size() : 0;
  if (cols == 0) throw ParseError(field, "rows must be non-empty arrays");
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = value[i];
    if (!row.is_array() || row.size() != cols) throw ParseError(field, "ragged rows");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) throw ParseError(field, "non-numeric entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd parse_vector(const ordered_json& value, const std::string& field) {
  if (!value.is_array()) throw ParseError(field, "expected an array");
  Eigen::VectorXd v(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) throw ParseError(field, "non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return v;
}

const ordered_json& require_key(const ordered_json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing field");
  return *it;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

ProblemInstance load_instance(const std::string& text, bool strict) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ParseError("<document>", "top level must be an object");

  ProblemInstance inst;
  const auto& n_val = require_key(doc, "n");
  const auto& N_val = require_key(doc, "N");
  if (!n_val.is_number_integer()) throw ParseError("n", "must be an integer");
  if (!N_val.is_number_integer()) throw ParseError("N", "must be an integer");
  inst.dim = n_val.get<Eigen::Index>();
  inst.num_terms = N_val.get<Eigen::Index>();

  inst.A = parse_matrix(require_key(doc, "A"), "A");
  const auto& b_val = require_key(doc, "B");
  if (!b_val.is_array()) throw ParseError("B", "expected an array of matrices");
  for (std::size_t j = 0; j < b_val.size(); ++j)
    inst.B.push_back(parse_matrix(b_val[j], "B[" + std::to_string(j) + "]"));
  inst.gamma = parse_vector(require_key(doc, "gamma"), "gamma");
  inst.c = parse_vector(require_key(doc, "c"), "c");
  inst.f = parse_vector(require_key(doc, "f"), "f");
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("name", "must be a string");
    inst.name = it->get<std::string>();
  }
  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_integer()) throw ParseError("seed", "must be an integer");
    inst.seed = it->get<std::int64_t>();
  }

  if (strict) {
    const ValidationReport report = validate(inst);
    if (!report.ok) {
      const Violation& v = report.violations.front();
      throw ValidationError(v.field, v.description);
    }
  }
  return inst;
}

ProblemInstance load_instance(std::istream& source, bool strict) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return load_instance(buffer.str(), strict);
}

ProblemInstance load_instance_file(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  return load_instance(in, strict);
}

std::string save_instance(const ProblemInstance& inst) {
  const ValidationReport report = validate(inst);
  if (!report.ok) {
    const Violation& v = report.violations.front();
    throw ValidationError(v.field, v.description);
  }

  ordered_json doc;
  doc["n"] = inst.dim;
  doc["N"] = inst.num_terms;
  doc["A"] = matrix_to_json(inst.A);
  ordered_json bs = ordered_json::array();
  for (const auto& b : inst.B) bs.push_back(matrix_to_json(b));
  doc["B"] = std::move(bs);
  doc["gamma"] = vector_to_json(inst.gamma);
  doc["c"] = vector_to_json(inst.c);
  doc["f"] = vector_to_json(inst.f);
  if (!inst.name.empty()) doc["name"] = inst.name;
  if (inst.seed) doc["seed"] = *inst.seed;
  return doc.dump(2) + "\n";
}

void save_instance_file(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string(), "cannot open file for writing");
  out << save_instance(inst);
}

std::string instance_digest(const ProblemInstance& inst) {
  const std::string bytes = save_instance(inst);
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int hash_len = 0;
  EVP_Digest(bytes.data(), bytes.size(), hash, &hash_len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * hash_len);
  for (unsigned int i = 0; i < hash_len; ++i) {
    out.push_back(hex[hash[i] >> 4]);
    out.push_back(hex[hash[i] & 0xF]);
  }
  return out;
}

CaseTarget case_target_from_string(const std::string& s) {
  if (s == "convex_at_root") return CaseTarget::convex_at_root;
  if (s == "global_min") return CaseTarget::global_min;
  if (s == "local_max") return CaseTarget::local_max;
  if (s == "unbiased") return CaseTarget::unbiased;
  throw ParseError("case", "unknown case target \"" + s + "\"");
}

std::string to_string(CaseTarget target) {
  switch (target) {
    case CaseTarget::convex_at_root: return "convex_at_root";
    case CaseTarget::global_min: return "global_min";
    case CaseTarget::local_max: return "local_max";
    case CaseTarget::unbiased: return "unbiased";
  }
  return "unbiased";
}

namespace {

Eigen::MatrixXd random_symmetric(SampleRng& rng, Eigen::Index n) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.normal();
  return 0.5 * (g + g.transpose());
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

double max_eigenvalue(const Eigen::MatrixXd& s) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .maxCoeff();
}

}  // namespace

ProblemInstance generate_random(std::uint64_t seed, Eigen::Index n, Eigen::Index N,
                                CaseTarget target) {
  if (n < 1) throw DimensionError("generate_random: n must be >= 1");
  if (N < 1) throw DimensionError("generate_random: N must be >= 1");

  ProblemInstance inst;
  inst.dim = n;
  inst.num_terms = N;
  inst.seed = static_cast<std::int64_t>(seed);
  inst.name = to_string(target) + "-s" + std::to_string(seed) + "-n" + std::to_string(n) + "-N" +
              std::to_string(N);

  SampleRng rng(seed, /*stream=*/1, /*index=*/0);
  inst.A = random_symmetric(rng, n);
  for (Eigen::Index j = 0; j < N; ++j) inst.B.push_back(random_symmetric(rng, n));
  inst.gamma.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) inst.gamma[j] = rng.uniform(0.5, 2.0);
  inst.c.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) inst.c[j] = rng.uniform(-1.0, 1.0);
  inst.f.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) inst.f[i] = rng.normal();

  if (target == CaseTarget::unbiased) return inst;

  // Biased targets damp the quartic coupling and the linear term so the
  // Newton root from x = 0 stays near the origin, where the intended sign
  // structure is forced below.
  const double b_scale = 1.0 / (2.0 * static_cast<double>(N) * std::sqrt(static_cast<double>(n)));
  for (auto& b : inst.B) b *= b_scale;
  inst.f *= 0.1;

  if (target == CaseTarget::global_min) {
    for (Eigen::Index j = 0; j < N; ++j) inst.c[j] = rng.uniform(0.5, 1.5);
    const double lift = std::max(0.0, -min_eigenvalue(inst.A)) + 1.0;
    inst.A += lift * Eigen::MatrixXd::Identity(n, n);
    return inst;
  }

  Eigen::MatrixXd combo = inst.A;
  for (Eigen::Index j = 0; j < N; ++j) combo += inst.gamma[j] * inst.c[j] * inst.B[j];
  if (target == CaseTarget::local_max) {
    inst.A -= (max_eigenvalue(combo) + 1.0) * Eigen::MatrixXd::Identity(n, n);
  } else {  // convex_at_root
    inst.A += (std::max(0.0, -min_eigenvalue(combo)) + 1.0) * Eigen::MatrixXd::Identity(n, n);
  }
  return inst;
}

}  // namespace dualcert
