#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "wl1/lp.hpp"
#include "wl1/model.hpp"

namespace wl1 {

/// One synthetic recovery problem drawn from a block sparsity model.
struct ModelInstance {
  Eigen::MatrixXd A;          // m x n measurement matrix
  Eigen::VectorXd x0;         // planted signal
  Eigen::VectorXd y;          // A * x0
  Eigen::VectorXd weights;    // per-coordinate objective weights
  std::vector<int> class_of;  // class index per coordinate
  std::vector<int> support;   // sorted indices where x0 != 0
};

/// Splits n coordinates across classes by largest-remainder rounding of
/// the class fractions, so the sizes always sum to n.
std::vector<int> class_sizes(const SparsityModel& model, int n);

/// Draws a signal with per-class support sizes round(p_i * n_i), standard
/// normal nonzeros, and a standard normal m x n matrix. Deterministic in
/// the seed.
ModelInstance sample_model_instance(const SparsityModel& model, int n, int m,
                                    std::uint64_t seed);

struct LpSolution {
  LpStatus status = LpStatus::IterLimit;
  Eigen::VectorXd x;
  double objective = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
};

/// Minimizes sum_i weights[i] * |x_i| subject to A x = y via the positive
/// split x = xp - xm. Dependent rows are dropped up front; if the dropped
/// rows disagree with the solution the status is Infeasible. An Optimal
/// result carries a duality-gap certificate below tol * (1 + |objective|).
LpSolution solve_weighted_l1(const Eigen::MatrixXd& A,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& weights,
                             double tol = 1e-9);

/// Relative two-norm test: |xhat - x0| <= rel_tol * max(1, |x0|).
bool recovery_success(const Eigen::VectorXd& x0, const Eigen::VectorXd& xhat,
                      double rel_tol = 1e-6);

/// Plain-text round trip for instances: a dimension header followed by
/// whitespace-separated rows. y and the support are rebuilt on load.
void save_instance(const ModelInstance& inst, const std::string& path);
ModelInstance load_instance(const std::string& path);

}  // namespace wl1
