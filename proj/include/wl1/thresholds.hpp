#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wl1/exponents.hpp"
#include "wl1/model.hpp"

namespace wl1 {

// Maximum of psi_tot over the feasible extra-support region
// {0 <= tau_i <= gamma_i(1-p_i), sum tau_i >= delta - sum gamma_i p_i}:
// product grid plus a sweep of the boundary hyperplane, then compass
// refinement from the best candidate.
struct RegionScan {
  double max_value;        // refined maximum
  double grid_max;         // best value seen on the raw grid
  FractionVector argmax;   // tau achieving max_value
};

RegionScan scan_max_psi_tot(const SparsityModel& model, ThresholdKind kind,
                            double delta, int grid);

struct ThresholdResult {
  double delta_c;
  ThresholdKind kind;
  FractionVector witness_tau;  // argmax of psi_tot at the returned delta
  int grid_resolution;
  double refine_tol;
  double max_at_delta;       // scanned max just above the threshold (< 0)
  double max_below_delta;    // scanned max just below (0 up to roundoff)
};

// Smallest measurement fraction delta for which the scanned maximum of
// psi_tot over the feasible region is strictly negative, located by
// bisection over (sum gamma_i p_i, 1].
//
// The unconstrained maximum of psi_tot over the whole tau box is exactly
// zero (the union's total mass carries no exponential decay), so below the
// threshold the restricted maximum computes as zero up to roundoff.  The
// bisection therefore tests max < -1e-9; past the threshold the maximum
// falls with O(1) slope, so the margin moves delta_c by under 1e-8.
//
// Degenerate models short-circuit: nothing to recover (sum gamma_i p_i = 0)
// returns the search floor, a fully dense model (all p_i = 1) returns 1.
// Throws Infeasible when even delta = 1 leaves the maximum nonnegative.
ThresholdResult delta_c(const SparsityModel& model, ThresholdKind kind,
                        int grid = 64, double tol = 1e-6);

struct WeightCurvePoint {
  double omega;
  double delta_c;
};

struct OptimalWeight {
  double omega_star;
  double delta_star;
  std::vector<WeightCurvePoint> curve;
};

// Two-class weight search: delta_c over a log-spaced omega grid in
// [range.first, range.second], golden-section refinement around the grid
// minimizer down to search_tol in omega.  gamma2 = 1 - gamma1.
OptimalWeight optimal_weight(double gamma1, double p1, double p2,
                             ThresholdKind kind,
                             std::pair<double, double> omega_range,
                             double search_tol, int curve_points = 17,
                             int grid = 56);

struct ThresholdOrdering {
  double weak;
  double sectional;
  double strong;
  bool ordered;  // weak <= sectional <= strong up to 2e-3 slack
};

ThresholdOrdering threshold_ordering_check(const SparsityModel& model,
                                           int grid = 64, double tol = 1e-5);

struct RobustnessConstant {
  double eps1, eps2, p1, p2;
  double mu;     // min(eps1 p1/(1-p1), eps2 p2/(1-p2)), must be < 1
  double value;  // (1 + mu) / (1 - mu)
};

// Error-amplification constant of weighted recovery under model mismatch.
// Throws DomainError when mu >= 1 (the bound is vacuous there).
RobustnessConstant robustness_constant(double eps1, double eps2, double p1,
                                       double p2);

// Checks the recovery-error bound behind RobustnessConstant on a concrete
// instance: with L_i the (1-eps_i) p_i |K_i| largest-magnitude entries of
// x0 inside class i,
//   ||(x0-xhat)_K1||_1 + omega ||(x0-xhat)_K2||_1
//     <= C * ( ||x0_{K1 \ L1}||_1 + omega ||x0_{K2 \ L2}||_1 ).
struct RobustnessCheck {
  double lhs;
  double rhs;
  bool holds;
};

RobustnessCheck robustness_inequality_check(
    const Eigen::VectorXd& x0, const Eigen::VectorXd& xhat,
    const std::vector<int>& K1, const std::vector<int>& K2, double omega,
    double eps1, double eps2, double p1, double p2);

}  // namespace wl1

