#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <string>
#include <utility>

#include "dualcert/errors.hpp"
#include "dualcert/primal.hpp"

namespace dualcert::detail {

struct SymExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  double spectral_norm() const {
    return std::max(std::abs(lambda_min), std::abs(lambda_max));
  }
};

inline SymExtremes sym_extremes(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

inline double spectral_norm(const Eigen::MatrixXd& S) {
  return sym_extremes(S).spectral_norm();
}

// Factorization-backed resolvent for a symmetric matrix that the caller's
// contract requires to be positive definite. The definiteness test is the
// contract one (lambda_min >= kPdTol * (1 + |S|_2)), so a failure carries
// the measured smallest eigenvalue.
class SpdSolver {
 public:
  SpdSolver(std::string name, const Eigen::MatrixXd& S) : name_(std::move(name)) {
    const SymExtremes ex = sym_extremes(S);
    lambda_min_ = ex.lambda_min;
    const double scale = 1.0 + ex.spectral_norm();
    if (!(lambda_min_ >= kPdTol * scale)) throw PreconditionError(name_, lambda_min_);
    llt_.compute(S);
    if (llt_.info() != Eigen::Success) throw PreconditionError(name_, lambda_min_);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return llt_.solve(rhs); }
  Eigen::MatrixXd solve_matrix(const Eigen::MatrixXd& rhs) const { return llt_.solve(rhs); }
  double lambda_min() const { return lambda_min_; }

 private:
  std::string name_;
  double lambda_min_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

}  // namespace dualcert::detail
