#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dualcert/dual.hpp"
#include "dualcert/instance.hpp"
#include "dualcert/primal.hpp"

namespace dualcert {

// End-to-end verification. Given an instance and a start point, certify()
// locates a critical point x0, constructs the dual point (v*, v0*, K),
// checks the zero-gap and dual-stationarity identities, classifies the
// extremal case from the Hessian and the cone memberships, gathers Monte
// Carlo evidence for the claimed case, and evaluates the three Legendre
// identities. The result is a Certificate that serializes to a canonical
// JSON document: identical inputs (instance bytes, x_init, config) yield
// identical certificate bytes.

struct CertifyConfig {
  // Ball radii; values <= 0 select the defaults r = 0.05 (1 + |x0|),
  // r1 = 0.05 (1 + |v*|), r2 = 0.1 (1 + |v0*|_inf).
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  long samples = 10000;  // Monte Carlo samples per check
  std::uint64_t seed = 0;
  double gap_tol = 1e-9;   // relative gap tolerance
  double stat_tol = 1e-8;  // dual stationarity tolerance, scaled by 1 + |v*| + |f|
  int multistart = 32;     // restarts for global-min evidence
  std::optional<double> K_override;  // fixed K instead of the selection rule
};

enum class CaseLabel { local_min, global_min, local_max, degenerate, unclassified };

/// Serialized labels: item1_local_min, item2_global_min, item3_local_max,
/// degenerate, unclassified.
std::string to_string(CaseLabel label);

struct SamplingRecord {
  std::string check;
  long checked = 0;
  long violations = 0;
  long skipped = 0;          // samples with failed definiteness preconditions
  long newton_failures = 0;  // inner maximizations that did not converge
  double worst_margin = 0.0; // min over samples; a violation is worst_margin < -slack
};

struct GapReport {
  double gap_abs = 0.0;
  double gap_rel = 0.0;    // gap_abs / (1 + |J(x0)|)
  double grad_norm = 0.0;  // |grad J(x0)|, the identity is only claimed when this is small
  bool stationary = false; // false means the report carries a warning, not a failure
};

/// Builds the dual point from x0 and compares J(x0) with J*(v*, v0*).
GapReport check_zero_gap(const ProblemInstance& inst, const Eigen::VectorXd& x0, double K);

/// |grad J*| at the dual point built from x0; inherits smallness from |grad J(x0)|.
double check_dual_stationarity(const ProblemInstance& inst, const Eigen::VectorXd& x0, double K);

// Result of maximizing J*(v*, .) over the multiplier ball by concave Newton
// steps clipped to the ball.
struct InnerSup {
  double value = 0.0;
  Eigen::VectorXd argmax;
  bool converged = false;
  int iterations = 0;
};

InnerSup inner_multiplier_sup(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                              const Eigen::VectorXd& center, double radius, double K);

/// Local-minimum evidence: J >= J(x0) on the primal ball, and the inner
/// multiplier sup of J* dominates J*(v*, v0*) across the v* ball and
/// matches it at v* itself. Requires a positive definite Hessian at x0.
std::vector<SamplingRecord> verify_local_min(const ProblemInstance& inst,
                                             const Eigen::VectorXd& x0, const DualPoint& dual,
                                             const CertifyConfig& cfg);

struct GlobalMinEvidence {
  std::vector<SamplingRecord> records;
  std::vector<double> critical_values;  // values of every multistart critical point found
};

/// Global-minimum evidence: multistart search finds no lower critical
/// point, the inner sup over the multiplier ball intersected with E*
/// dominates J*(v*, v0*) for v* sampled in a large box, and v* is
/// stationary unconstrained. Requires v0* in E*.
GlobalMinEvidence verify_global_min(const ProblemInstance& inst, const Eigen::VectorXd& x0,
                                    const DualPoint& dual, const CertifyConfig& cfg);

/// Local-maximum evidence: J <= J(x0) on the primal ball and J* <= J*(v*, v0*)
/// on the joint (v*, v0*) ball. Requires a negative definite Hessian and
/// v0* in A-*.
std::vector<SamplingRecord> verify_local_max(const ProblemInstance& inst,
                                             const Eigen::VectorXd& x0, const DualPoint& dual,
                                             const CertifyConfig& cfg);

struct LegendreReport {
  double L1 = 0.0;  // max rel. error of sup_{v0} J1(x, .) = J(x) at the closed-form maximizer
  double L2 = 0.0;  // max rel. error of min_{v*} J2 = J1 at v* = M x
  double L3 = 0.0;  // max rel. error of min_{x} J2 = J* at x = (K I + A)^-1 (v* + f)
  long skipped = 0; // sample points whose anchor matrix was not definite
};

LegendreReport check_legendre_identities(const ProblemInstance& inst, const CertifyConfig& cfg);

struct Certificate {
  std::string instance_digest;
  std::string instance_name;
  PrimalPoint primal;
  DualPoint dual;
  RegularizationChoice regularization;
  ConeMembership membership;
  double dual_objective = 0.0;  // J*(v*, v0*)
  double gap_abs = 0.0;
  double gap_rel = 0.0;
  double dual_stationarity = 0.0;
  CaseLabel case_label = CaseLabel::unclassified;
  std::vector<SamplingRecord> sampling;
  LegendreReport legendre;
  std::vector<double> multistart_values;
  // resolved parameters actually used
  double r = 0.0, r1 = 0.0, r2 = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  double gap_tol = 0.0;
  double stat_tol = 0.0;
  int multistart = 0;
  bool K_overridden = false;
  Eigen::VectorXd x_init;
  std::string diagnostic;
  bool passed = false;
};

/// Full pipeline; deterministic in (inst, x_init, cfg). Solver
/// non-convergence yields passed = false with a diagnostic, not a throw.
/// Definiteness failures for an overridden K propagate as PreconditionError.
Certificate certify(const ProblemInstance& inst, const Eigen::VectorXd& x_init,
                    const CertifyConfig& cfg);

/// Canonical certificate document (fixed key order, shortest round-trip
/// floats, trailing newline).
std::string save_certificate(const Certificate& cert);

}  // namespace dualcert
