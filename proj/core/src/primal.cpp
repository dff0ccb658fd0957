#include "dualcert/primal.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <optional>

namespace dualcert {

namespace {

void check_dim(const ProblemInstance& inst, const Eigen::VectorXd& x) {
  if (x.size() != inst.dim)
    throw DimensionError("x has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(inst.dim));
}

}  // namespace

std::string to_string(HessianClass hc) {
  switch (hc) {
    case HessianClass::positive_definite: return "positive_definite";
    case HessianClass::negative_definite: return "negative_definite";
    case HessianClass::indefinite: return "indefinite";
    case HessianClass::degenerate: return "degenerate";
  }
  return "degenerate";
}

double primal_value(const ProblemInstance& inst, const Eigen::VectorXd& x) {
  check_dim(inst, x);
  double value = 0.5 * x.dot(inst.A * x) - inst.f.dot(x);
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) {
    const double inner = 0.5 * x.dot(inst.B[j] * x) + inst.c[j];
    value += 0.5 * inst.gamma[j] * inner * inner;
  }
  return value;
}

Eigen::VectorXd primal_gradient(const ProblemInstance& inst, const Eigen::VectorXd& x) {
  check_dim(inst, x);
  Eigen::VectorXd g = inst.A * x - inst.f;
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) {
    const Eigen::VectorXd bx = inst.B[j] * x;
    g += inst.gamma[j] * (0.5 * x.dot(bx) + inst.c[j]) * bx;
  }
  return g;
}

Eigen::MatrixXd primal_hessian(const ProblemInstance& inst, const Eigen::VectorXd& x) {
  check_dim(inst, x);
  const Eigen::Index n = inst.dim;
  // Accumulate on the lower triangle only, then mirror.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.triangularView<Eigen::Lower>() = inst.A;
  for (Eigen::Index j = 0; j < inst.num_terms; ++j) {
    const Eigen::VectorXd bx = inst.B[j] * x;
    const double inner = 0.5 * x.dot(bx) + inst.c[j];
    h.triangularView<Eigen::Lower>() += inst.gamma[j] * inner * inst.B[j];
    h.selfadjointView<Eigen::Lower>().rankUpdate(bx, inst.gamma[j]);
  }
  return h.selfadjointView<Eigen::Lower>();
}

HessianReport classify_hessian(const Eigen::MatrixXd& H, double scale) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  HessianReport report;
  report.lambda_min = es.eigenvalues().minCoeff();
  report.lambda_max = es.eigenvalues().maxCoeff();
  const double tol = kPdTol * scale;
  const double min_abs = es.eigenvalues().cwiseAbs().minCoeff();
  if (report.lambda_min > tol)
    report.label = HessianClass::positive_definite;
  else if (report.lambda_max < -tol)
    report.label = HessianClass::negative_definite;
  else if (min_abs <= tol)
    report.label = HessianClass::degenerate;
  else
    report.label = HessianClass::indefinite;
  return report;
}

HessianReport classify_hessian(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  const double norm2 =
      std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
  return classify_hessian(H, 1.0 + norm2);
}

namespace {

// Newton direction for H s = -g; falls back to (H + mu I) s = -g with
// doubling mu when the factorization pivots collapse.
std::optional<Eigen::VectorXd> newton_direction(const Eigen::MatrixXd& H,
                                                const Eigen::VectorXd& g) {
  const Eigen::Index n = H.rows();
  const double scale = 1.0 + H.cwiseAbs().maxCoeff();
  {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot >= 1e-14 * scale) {
      Eigen::VectorXd s = lu.solve(-g);
      if (s.allFinite()) return s;
    }
  }
  double mu = 1e-8 * scale;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  for (int attempt = 0; attempt < 120; ++attempt) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(H + mu * eye);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot >= 1e-14 * scale) {
      Eigen::VectorXd s = lu.solve(-g);
      if (s.allFinite()) return s;
    }
    mu *= 2.0;
  }
  return std::nullopt;
}

}  // namespace

PrimalPoint find_critical_point(const ProblemInstance& inst, const Eigen::VectorXd& x_init,
                                double tol, int max_iter) {
  check_dim(inst, x_init);
  if (!(tol > 0.0)) throw DimensionError("find_critical_point: tol must be positive");

  const double target = tol * (1.0 + inst.f.norm());
  PrimalPoint point;
  point.x0 = x_init;

  Eigen::VectorXd g = primal_gradient(inst, point.x0);
  double gnorm = g.norm();
  point.converged = gnorm <= target;

  // Backtrack on |grad J| so maxima and saddles stay reachable.
  auto try_direction = [&](const Eigen::VectorXd& direction) {
    double alpha = 1.0;
    for (int bt = 0; bt <= 30; ++bt) {
      const Eigen::VectorXd trial = point.x0 + alpha * direction;
      const Eigen::VectorXd g_trial = primal_gradient(inst, trial);
      const double gn_trial = g_trial.norm();
      if (std::isfinite(gn_trial) && gn_trial < gnorm) {
        point.x0 = trial;
        g = g_trial;
        gnorm = gn_trial;
        return true;
      }
      alpha *= 0.5;
    }
    return false;
  };

  int iter = 0;
  while (!point.converged && iter < max_iter) {
    ++iter;
    const Eigen::MatrixXd H = primal_hessian(inst, point.x0);
    const auto direction = newton_direction(H, g);
    bool accepted = direction && try_direction(*direction);
    if (!accepted) {
      // The regularized step need not descend the merit when the Hessian is
      // indefinite; the merit gradient -H g always does, unless the merit
      // itself is stationary here.
      const Eigen::VectorXd merit_grad = H * g;
      const double mg_norm = merit_grad.norm();
      if (mg_norm > 0.0)
        accepted = try_direction(-merit_grad * ((1.0 + point.x0.norm()) / mg_norm));
    }
    if (!accepted) break;  // stalled; report honestly below
    point.converged = gnorm <= target;
  }

  point.iterations = iter;
  point.grad_norm = gnorm;
  point.value = primal_value(inst, point.x0);
  const HessianReport hr = classify_hessian(primal_hessian(inst, point.x0));
  point.hessian_class = hr.label;
  point.hessian_lambda_min = hr.lambda_min;
  point.hessian_lambda_max = hr.lambda_max;
  return point;
}

}  // namespace dualcert
