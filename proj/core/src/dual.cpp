#include "dualcert/dual.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dualcert/primal.hpp"
#include "spd_solver.hpp"

namespace dualcert {

namespace {

void check_primal_dim(const ProblemInstance& inst, const Eigen::VectorXd& v,
                      const char* which) {
  if (v.size() != inst.dim)
    throw DimensionError(std::string(which) + " has " + std::to_string(v.size()) +
                         " entries, expected " + std::to_string(inst.dim));
}

void check_multiplier_dim(const ProblemInstance& inst, const Eigen::VectorXd& v0) {
  if (v0.size() != inst.num_terms)
    throw DimensionError("v0 has " + std::to_string(v0.size()) + " entries, expected " +
                         std::to_string(inst.num_terms));
}

Eigen::MatrixXd weighted_form_sum(const ProblemInstance& inst, const Eigen::VectorXd& v0) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(inst.dim, inst.dim);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) s += v0[j] * inst.B[j];
  return s;
}

Eigen::MatrixXd shifted_quadratic(const ProblemInstance& inst, double K) {
  return K * Eigen::MatrixXd::Identity(inst.dim, inst.dim) + inst.A;
}

// Scalar terms shared by J1, J2 and J*: -sum v0_j^2/(2 gamma_j) + sum v0_j c_j.
double multiplier_penalty(const ProblemInstance& inst, const Eigen::VectorXd& v0) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < inst.num_terms; ++j)
    s += -v0[j] * v0[j] / (2.0 * inst.gamma[j]) + v0[j] * inst.c[j];
  return s;
}

}  // namespace

Eigen::VectorXd dual_multipliers(const ProblemInstance& inst, const Eigen::VectorXd& x0) {
  check_primal_dim(inst, x0, "x0");
  Eigen::VectorXd v0(inst.num_terms);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j)
    v0[j] = inst.gamma[j] * (0.5 * x0.dot(inst.B[j] * x0) + inst.c[j]);
  return v0;
}

Eigen::VectorXd dual_vector(const ProblemInstance& inst, const Eigen::VectorXd& x0,
                            const Eigen::VectorXd& v0, double K) {
  check_primal_dim(inst, x0, "x0");
  check_multiplier_dim(inst, v0);
  Eigen::VectorXd v = K * x0;
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) v -= v0[j] * (inst.B[j] * x0);
  return v;
}

Eigen::MatrixXd anchor_matrix(const ProblemInstance& inst, const Eigen::VectorXd& v0, double K) {
  check_multiplier_dim(inst, v0);
  return K * Eigen::MatrixXd::Identity(inst.dim, inst.dim) - weighted_form_sum(inst, v0);
}

double multiplier_box_radius(const Eigen::VectorXd& v0) {
  return 0.1 * (1.0 + v0.cwiseAbs().maxCoeff());
}

RegularizationChoice select_regularization(const ProblemInstance& inst,
                                           const Eigen::VectorXd& v0,
                                           const Eigen::VectorXd& x0) {
  check_multiplier_dim(inst, v0);
  check_primal_dim(inst, x0, "x0");

  const double r2 = multiplier_box_radius(v0);
  const double lambda_min_A = detail::sym_extremes(inst.A).lambda_min;
  const double lambda_max_S = detail::sym_extremes(weighted_form_sum(inst, v0)).lambda_max;

  double form_norm_sum = 0.0;
  double box_term = 0.0;
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) {
    const double bj = detail::spectral_norm(inst.B[j]);
    form_norm_sum += bj;
    box_term = std::max(box_term, bj * (std::abs(v0[j]) + 3.0 * r2));
  }

  const double concavity_floor = 0.5 * (1.0 / inst.gamma.maxCoeff());

  RegularizationChoice choice;
  choice.K0 = 2.0 * (1.0 + std::max({-lambda_min_A, lambda_max_S, box_term}));

  double K = choice.K0;
  for (int m = 0; m <= 60; ++m, K *= 2.0) {
    const double margin_quadratic = K + lambda_min_A;
    const double margin_anchor_box = (K - lambda_max_S) - r2 * form_norm_sum;
    if (margin_quadratic < 1.0 || margin_anchor_box < 1.0) continue;

    // Concavity in the multipliers at the induced dual point. The anchor
    // matrix is definite here by the box margin, so the Hessian is
    // well-defined.
    const Eigen::VectorXd v_star = dual_vector(inst, x0, v0, K);
    const Eigen::MatrixXd h = dual_multiplier_hessian(inst, v_star, v0, K);
    const double margin_concavity = -detail::sym_extremes(h).lambda_max;
    if (margin_concavity < concavity_floor) continue;

    choice.K = K;
    choice.doublings = m;
    choice.margin_quadratic = margin_quadratic;
    choice.margin_anchor_box = margin_anchor_box;
    choice.margin_concavity = margin_concavity;
    return choice;
  }
  throw NumericalError(
      "select_regularization: no admissible K within 60 doublings of K0 = " +
      std::to_string(choice.K0) + "; the instance scaling is pathological");
}

double multiplier_value(const ProblemInstance& inst, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& v0) {
  check_primal_dim(inst, x, "x");
  check_multiplier_dim(inst, v0);
  double value = 0.5 * x.dot(inst.A * x) - inst.f.dot(x) + multiplier_penalty(inst, v0);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j)
    value += v0[j] * 0.5 * x.dot(inst.B[j] * x);
  return value;
}

double split_value(const ProblemInstance& inst, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& v_star, const Eigen::VectorXd& v0, double K) {
  check_primal_dim(inst, x, "x");
  check_primal_dim(inst, v_star, "v_star");
  check_multiplier_dim(inst, v0);
  const detail::SpdSolver anchor("M(v0, K)", anchor_matrix(inst, v0, K));
  return 0.5 * x.dot(inst.A * x) - inst.f.dot(x) + 0.5 * v_star.dot(anchor.solve(v_star)) -
         v_star.dot(x) + 0.5 * K * x.squaredNorm() + multiplier_penalty(inst, v0);
}

double dual_value(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                  const Eigen::VectorXd& v0, double K) {
  check_primal_dim(inst, v_star, "v_star");
  check_multiplier_dim(inst, v0);
  const detail::SpdSolver quad("K*I + A", shifted_quadratic(inst, K));
  const detail::SpdSolver anchor("M(v0, K)", anchor_matrix(inst, v0, K));
  const Eigen::VectorXd shifted = v_star + inst.f;
  return -0.5 * shifted.dot(quad.solve(shifted)) + 0.5 * v_star.dot(anchor.solve(v_star)) +
         multiplier_penalty(inst, v0);
}

DualGradient dual_gradient(const ProblemInstance& inst, const Eigen::VectorXd& v_star,
                           const Eigen::VectorXd& v0, double K) {
  check_primal_dim(inst, v_star, "v_star");
  check_multiplier_dim(inst, v0);
  const detail::SpdSolver quad("K*I + A", shifted_quadratic(inst, K));
  const detail::SpdSolver anchor("M(v0, K)", anchor_matrix(inst, v0, K));

  DualGradient g;
  const Eigen::VectorXd w = anchor.solve(v_star);
  g.v_star_block = -quad.solve(v_star + inst.f) + w;
  g.v0_block.resize(inst.num_terms);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j)
    g.v0_block[j] = 0.5 * w.dot(inst.B[j] * w) - v0[j] / inst.gamma[j] + inst.c[j];
  return g;
}

Eigen::MatrixXd dual_multiplier_hessian(const ProblemInstance& inst,
                                        const Eigen::VectorXd& v_star,
                                        const Eigen::VectorXd& v0, double K) {
  check_primal_dim(inst, v_star, "v_star");
  check_multiplier_dim(inst, v0);
  const detail::SpdSolver anchor("M(v0, K)", anchor_matrix(inst, v0, K));

  const Eigen::VectorXd w = anchor.solve(v_star);
  Eigen::MatrixXd u(inst.dim, inst.num_terms);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) u.col(j) = inst.B[j] * w;
  Eigen::MatrixXd h = u.transpose() * anchor.solve_matrix(u);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) h(j, j) -= 1.0 / inst.gamma[j];
  return 0.5 * (h + h.transpose());
}

ConeMembership cone_membership(const ProblemInstance& inst, const Eigen::VectorXd& v0, double K) {
  check_multiplier_dim(inst, v0);
  const Eigen::MatrixXd s = weighted_form_sum(inst, v0);
  const detail::SymExtremes ex_s = detail::sym_extremes(s);
  const detail::SymExtremes ex_sa = detail::sym_extremes(s + inst.A);

  ConeMembership m;
  // B*: eigenvalues of S + K/2 I are those of S shifted by K/2.
  m.margin_Bstar = ex_s.lambda_min + 0.5 * K;
  {
    const double hi = ex_s.lambda_max + 0.5 * K;
    const double scale = 1.0 + std::max(std::abs(m.margin_Bstar), std::abs(hi));
    m.in_Bstar = m.margin_Bstar > kPdTol * scale;
  }
  {
    const double scale = 1.0 + ex_sa.spectral_norm();
    m.margin_Aplus = ex_sa.lambda_min;
    m.in_Aplus = m.margin_Aplus > kPdTol * scale;
    m.margin_Aminus = ex_sa.lambda_max;
    m.in_Aminus = m.margin_Aminus < -kPdTol * scale;
  }
  m.in_Estar = m.in_Aplus && m.in_Bstar;
  // Anchor definiteness: eigenvalues of K I - S.
  m.margin_M = K - ex_s.lambda_max;
  {
    const double hi = K - ex_s.lambda_min;
    const double scale = 1.0 + std::max(std::abs(m.margin_M), std::abs(hi));
    m.M_pd = m.margin_M > kPdTol * scale;
  }
  return m;
}

}  // namespace dualcert
