#pragma once

#include <Eigen/Core>
#include <string>

#include "dualcert/instance.hpp"

namespace dualcert {

/// Strict-definiteness threshold: eigenvalues within kPdTol * (1 + |M|_2)
/// of zero count as degenerate rather than being force-classified.
inline constexpr double kPdTol = 1e-9;

/// Default stationarity tolerance for the critical-point solver; the
/// convergence test is |grad J| <= tol * (1 + |f|).
inline constexpr double kStationarityTol = 1e-10;
inline constexpr int kMaxNewtonIterations = 100;

enum class HessianClass { positive_definite, negative_definite, indefinite, degenerate };

std::string to_string(HessianClass hc);

struct HessianReport {
  HessianClass label = HessianClass::degenerate;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

// A candidate critical point together with its classification. grad_norm
// satisfies the scaled stationarity test whenever converged is true.
struct PrimalPoint {
  Eigen::VectorXd x0;
  double value = 0.0;
  double grad_norm = 0.0;
  HessianClass hessian_class = HessianClass::degenerate;
  double hessian_lambda_min = 0.0;
  double hessian_lambda_max = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// J(x) = 1/2 x'Ax + sum_j gamma_j/2 (x'B_j x / 2 + c_j)^2 - f'x.
double primal_value(const ProblemInstance& inst, const Eigen::VectorXd& x);

/// Closed-form gradient A x + sum_j gamma_j (x'B_j x / 2 + c_j) B_j x - f.
Eigen::VectorXd primal_gradient(const ProblemInstance& inst, const Eigen::VectorXd& x);

/// Closed-form Hessian A + sum_j gamma_j [(x'B_j x / 2 + c_j) B_j
/// + (B_j x)(B_j x)']. Built on one triangle and mirrored.
Eigen::MatrixXd primal_hessian(const ProblemInstance& inst, const Eigen::VectorXd& x);

/// Spectral classification with margins. Thresholds use pd_tol * scale;
/// the one-argument overload sets scale = 1 + |H|_2.
HessianReport classify_hessian(const Eigen::MatrixXd& H, double scale);
HessianReport classify_hessian(const Eigen::MatrixXd& H);

/// Damped Newton iteration on grad J = 0, backtracking on the gradient
/// norm so minima, maxima and saddles are all reachable. Singular Newton
/// systems fall back to a regularized solve. Non-convergence is reported
/// in the result, not thrown.
PrimalPoint find_critical_point(const ProblemInstance& inst, const Eigen::VectorXd& x_init,
                                double tol = kStationarityTol,
                                int max_iter = kMaxNewtonIterations);

}  // namespace dualcert
