#pragma once

#include <Eigen/Core>

#include "dualcert/instance.hpp"

namespace fixtures {

// Double-well reference: J(x) = x^2/2 + (x^2 - 1)^2/2 on R.
// Critical points x = 0 (local max, J = 1/2) and x = +-1/sqrt(2)
// (local minima, J = 3/8).
inline dualcert::ProblemInstance inst_a() {
  dualcert::ProblemInstance inst;
  inst.dim = 1;
  inst.num_terms = 1;
  inst.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  inst.B = {Eigen::MatrixXd::Constant(1, 1, 2.0)};
  inst.gamma = Eigen::VectorXd::Constant(1, 1.0);
  inst.c = Eigen::VectorXd::Constant(1, -1.0);
  inst.f = Eigen::VectorXd::Zero(1);
  inst.name = "INST-A";
  return inst;
}

// Single-well reference: J(x) = x^2/2 + (x^2 + 1)^2/2 on R.
// Unique critical point x = 0, the global minimum, J = 1/2.
inline dualcert::ProblemInstance inst_b() {
  dualcert::ProblemInstance inst = inst_a();
  inst.c[0] = 1.0;
  inst.name = "INST-B";
  return inst;
}

inline Eigen::VectorXd scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

}  // namespace fixtures
