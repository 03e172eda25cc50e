#pragma once

#include <Eigen/Dense>

namespace randpoly::detail {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

// maximize c.x subject to A x <= b with x free. Dense two-phase tableau
// simplex with Bland's rule; intended for the tiny certification problems of
// this library (dim <= 8, tens of rows), not as a general purpose solver.
LpResult solve_lp_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& c);

}  // namespace randpoly::detail
