#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wl1/model.hpp"

namespace wl1 {

/// A face pairing for the two-class polytope geometry: class i contributes
/// k_i support coordinates, t_i off-support coordinates on the face, and
/// n_i coordinates in total, with weight w_i.
struct FacePair {
  int k1 = 0;
  int k2 = 0;
  int t1 = 0;
  int t2 = 0;
  int n1 = 0;
  int n2 = 0;
  double w1 = 1.0;
  double w2 = 1.0;
};

/// Finite two-class problem description for the union bound.
struct FiniteModel {
  int n = 0;
  int n1 = 0;
  int n2 = 0;
  int k1 = 0;
  int k2 = 0;
  int m = 0;
  double w1 = 1.0;
  double w2 = 1.0;
};

struct ExternalAngle {
  double value = 0.0;
  double log_value = 0.0;
};

/// Evaluates the external angle
///   (1/sqrt(pi)) Int_0^inf exp(-x^2) prod_i erf(w_i x / xi)^{r_i} dx
/// with xi^2 = sum_i (k_i + t_i) w_i^2 and r_i = n_i - k_i - t_i, to an
/// absolute accuracy of 1e-10. Both exponents zero gives exactly 1/2.
ExternalAngle external_angle(const FacePair& pair);

struct AngleEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
  double log_estimate = 0.0;
  // Relative standard error of the mean; doubles as the standard error
  // of log(estimate) for small values.
  double log_std_err = 0.0;
};

/// Monte Carlo estimate of the internal angle via an exponentially tilted
/// half-normal sample. Exact (1, 0) when t1 + t2 = 0. Throws
/// InsufficientSamples when the relative standard error exceeds 5%.
AngleEstimate internal_angle(const FacePair& pair, int mc_samples,
                             std::uint64_t seed);

struct BoundTerm {
  int t1 = 0;
  int t2 = 0;
  double log_coeff = 0.0;     // ln of 2^(t1+t2+1) C(n1-k1, t1) C(n2-k2, t2)
  double log_internal = 0.0;
  double log_external = 0.0;
  double log_term = 0.0;
  double term = 0.0;
  double internal_rel_err = 0.0;
};

struct FailureBound {
  double bound = 0.0;  // raw sum clamped to 1
  double raw = 0.0;
  bool clamped = false;
  std::vector<BoundTerm> terms;
};

/// Face-counting union bound on the probability that weighted minimization
/// misses the planted signal. Sums over off-support face sizes t1 + t2
/// exceeding m - k1 - k2 + 1; `parity_restricted` keeps only every other
/// size starting at m - k1 - k2 + 2. Requires n <= 80.
FailureBound failure_bound(const FiniteModel& fm, int mc_samples,
                           std::uint64_t seed, bool parity_restricted = false);

enum class NullSpaceVerdict { Holds, Violated, Undetermined };

const char* to_string(NullSpaceVerdict v);

struct NullSpaceReport {
  NullSpaceVerdict verdict = NullSpaceVerdict::Undetermined;
  bool exact = false;          // true when every sign pattern was checked
  double worst_margin = 0.0;   // negative on violation
  Eigen::VectorXd witness;     // violating null vector when found
};

/// Checks whether every null vector z of A satisfies
///   sum_{i in K} w_i |z_i| <= sum_{i not in K} w_i |z_i|.
/// Small supports (2^|K| <= 4096) are certified exactly through one LP per
/// sign pattern; larger ones fall back to random null directions with an
/// LP polish and may return Undetermined.
NullSpaceReport null_space_condition_check(const Eigen::MatrixXd& A,
                                           const std::vector<int>& K,
                                           const Eigen::VectorXd& weights,
                                           int trials, std::uint64_t seed);

}  // namespace wl1
