#pragma once

#include <Eigen/Core>

#include "dualcert/instance.hpp"

namespace dualcert {

// A dual point (v*, v0*, K). v0* carries one multiplier per quartic term;
// K is the regularization parameter that keeps K I + A and the anchor
// matrix M(v0*, K) = K I - sum_j (v0*)_j B_j positive definite wherever a
// resolvent is evaluated.
struct DualPoint {
  Eigen::VectorXd v_star;
  Eigen::VectorXd v0_star;
  double K = 0.0;
};

// Membership of v0* in the spectral cones that select the extremal case,
// with the extreme-eigenvalue margins backing each boolean:
//   B*  : sum v0_j B_j + K I > K I / 2      margin = lambda_min(sum + K/2 I)
//   A+* : sum v0_j B_j + A   > 0            margin = lambda_min
//   A-* : sum v0_j B_j + A   < 0            margin = lambda_max
//   E*  = A+* intersect B*
// M_pd tracks invertibility of the anchor matrix, which is a different
// condition than B* and is required wherever a resolvent is applied.
struct ConeMembership {
  bool in_Bstar = false;
  double margin_Bstar = 0.0;
  bool in_Aplus = false;
  double margin_Aplus = 0.0;
  bool in_Aminus = false;
  double margin_Aminus = 0.0;
  bool in_Estar = false;
  bool M_pd = false;
  double margin_M = 0.0;
};

// Outcome of the regularization search: the chosen K, the starting value
// and doubling count, and the three certified margins
//   margin_quadratic  = lambda_min(K I + A)                    (>= 1)
//   margin_anchor_box = lambda_min(M) - r2 * sum_j |B_j|_2     (>= 1, so M
//                       stays definite on the whole multiplier search box)
//   margin_concavity  = -lambda_max of the multiplier Hessian  (>= 1/2 min_j 1/gamma_j)
struct RegularizationChoice {
  double K = 0.0;
  double K0 = 0.0;
  int doublings = 0;
  double margin_quadratic = 0.0;
  double margin_anchor_box = 0.0;
  double margin_concavity = 0.0;
};

/// Multipliers induced by a primal point: (v0)_j = gamma_j (x'B_j x / 2 + c_j).
Eigen::VectorXd dual_multipliers(const ProblemInstance& inst, const Eigen::VectorXd& x0);

/// Dual vector induced by a primal point: M(v0, K) x0 = K x0 - sum_j v0_j B_j x0.
Eigen::VectorXd dual_vector(const ProblemInstance& inst, const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& v0, double K);

/// The anchor matrix M(v0, K) = K I - sum_j v0_j B_j.
Eigen::MatrixXd anchor_matrix(const ProblemInstance& inst, const Eigen::VectorXd& v0, double K);

/// Default multiplier search-box radius r2 = 0.1 * (1 + |v0|_inf).
double multiplier_box_radius(const Eigen::VectorXd& v0);

/// Smallest K in the doubling sequence K0 * 2^m such that (a) K I + A and
/// (b) the anchor matrix over the whole r2-box around v0 are definite with
/// margin >= 1, and (c) the multiplier Hessian at the dual point induced by
/// x0 is negative definite with margin >= 1/2 min_j (1/gamma_j). Throws
/// NumericalError if 60 doublings do not suffice.
RegularizationChoice select_regularization(const ProblemInstance& inst,
                                           const Eigen::VectorXd& v0,
                                           const Eigen::VectorXd& x0);

/// J1(x, v0) = 1/2 x'Ax + sum_j v0_j (x'B_j x / 2 + c_j)
///             - sum_j v0_j^2 / (2 gamma_j) - f'x.
double multiplier_value(const ProblemInstance& inst, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& v0);

/// J2(x, v*, v0) = 1/2 x'Ax - f'x + 1/2 v*' M^-1 v* - v*'x + K/2 x'x
///                 - sum_j v0_j^2 / (2 gamma_j) + sum_j v0_j c_j.
/// Resolvents are applied through a factorization solve, never an explicit
/// inverse. Requires M(v0, K) positive definite.
double split_value(const ProblemInstance& inst, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& v_star, const Eigen::VectorXd& v0, double K);

/// J*(v*, v0) = -1/2 (v*+f)' (K I + A)^-1 (v*+f) + 1/2 v*' M^-1 v*
///              - sum_j v0_j^2 / (2 gamma_j) + sum_j v0_j c_j.
/// Requires both K I + A and M(v0, K) positive definite; the error names
/// the failing matrix and carries its smallest eigenvalue.
double dual_value(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                  const Eigen::VectorXd& v0, double K);

struct DualGradient {
  Eigen::VectorXd v_star_block;  // -(K I + A)^-1 (v* + f) + M^-1 v*
  Eigen::VectorXd v0_block;      // 1/2 (M^-1 v*)' B_j (M^-1 v*) - v0_j/gamma_j + c_j

  double norm() const {
    return std::sqrt(v_star_block.squaredNorm() + v0_block.squaredNorm());
  }
};

DualGradient dual_gradient(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                           const Eigen::VectorXd& v0, double K);

/// Hessian of J* in the multipliers at fixed v*: with w = M^-1 v*,
/// entry (i, j) = w'B_i M^-1 B_j w - delta_ij / gamma_j.
Eigen::MatrixXd dual_multiplier_hessian(const ProblemInstance& inst,
                                        const Eigen::VectorXd& v_star,
                                        const Eigen::VectorXd& v0, double K);

ConeMembership cone_membership(const ProblemInstance& inst, const Eigen::VectorXd& v0, double K);

}  // namespace dualcert
