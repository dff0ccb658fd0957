#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dualcert/errors.hpp"

namespace dualcert {

// One problem instance of the quartic-quadratic functional
//
//   J(x) = 1/2 x'Ax + sum_j gamma_j/2 (x'B_j x / 2 + c_j)^2 - f'x
//
// on R^n. A and every B_j are symmetric n x n, the gamma_j are positive
// penalty weights, and the number of quartic terms N is independent of n.
// Instances are immutable value types; all solver state lives elsewhere.
struct ProblemInstance {
  Eigen::Index dim = 0;        // n, serialized as "n"
  Eigen::Index num_terms = 0;  // N, serialized as "N"
  Eigen::MatrixXd A;
  std::vector<Eigen::MatrixXd> B;
  Eigen::VectorXd gamma;
  Eigen::VectorXd c;
  Eigen::VectorXd f;
  std::string name;                  // optional label
  std::optional<std::int64_t> seed;  // optional generator seed
};

struct Violation {
  std::string field;
  std::string description;
  double measured = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Symmetry tolerance for validation: only float-text noise is tolerated.
double symmetry_tolerance(const ProblemInstance& inst);

/// Checks every model invariant and returns all violations found.
/// Never throws and never repairs the instance.
ValidationReport validate(const ProblemInstance& inst);

/// Parses an instance document. Throws ParseError for malformed input and,
/// when `strict`, ValidationError if the parsed instance violates an
/// invariant. Both name the offending field.
ProblemInstance load_instance(std::istream& source, bool strict = true);
ProblemInstance load_instance(const std::string& text, bool strict = true);
ProblemInstance load_instance_file(const std::filesystem::path& path, bool strict = true);

/// Canonical serialization: fixed key order, shortest round-trip float
/// text, trailing newline. Two calls on equal instances yield identical
/// bytes. Throws ValidationError if the instance is invalid.
std::string save_instance(const ProblemInstance& inst);
void save_instance_file(const ProblemInstance& inst, const std::filesystem::path& path);

/// SHA-256 (hex) of the canonical instance document.
std::string instance_digest(const ProblemInstance& inst);

enum class CaseTarget { convex_at_root, global_min, local_max, unbiased };

CaseTarget case_target_from_string(const std::string& s);
std::string to_string(CaseTarget target);

/// Deterministic random instance. Symmetric matrices are (G + G')/2 with
/// i.i.d. standard normal G, gamma_j ~ U(0.5, 2), c_j ~ U(-1, 1) unless the
/// target overrides. Targets bias the construction toward one extremal
/// case; the certificate, not the generator, decides which case holds.
ProblemInstance generate_random(std::uint64_t seed, Eigen::Index n, Eigen::Index N,
                                CaseTarget target);

}  // namespace dualcert
