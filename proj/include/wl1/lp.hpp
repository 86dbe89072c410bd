#pragma once

#include <Eigen/Dense>

namespace wl1 {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

const char* to_string(LpStatus status);

/// Result of a linear program in standard equality form.
///
/// `x` is the primal point (length n), `y` the equality duals (length m).
/// Both are meaningful only when `status == LpStatus::Optimal`; the duals
/// certify optimality through c - A^T y >= 0 on the returned basis.
struct LpResult {
  LpStatus status = LpStatus::IterLimit;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  int iterations = 0;
};

/// Solves min c.x subject to A x = b, x >= 0 with a two-phase dense
/// primal simplex. `max_iters <= 0` picks a bound from the problem size.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, int max_iters = 0);

}  // namespace wl1
