#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wl1/model.hpp"

namespace wl1 {

enum class NonzeroDist { Gaussian, Uniform, Rayleigh, SqrtChi2_4, SqrtChi2_6 };

const char* to_string(NonzeroDist d);
NonzeroDist nonzero_dist_from_string(const std::string& name);

/// Every run below derives one seed per trial by hashing the master seed
/// with the cell coordinates, so results are independent of scheduling
/// and of the number of worker threads.

struct PhaseCell {
  double omega = 1.0;
  double delta = 0.0;
  int m = 0;
  int trials = 0;
  int successes = 0;
};

struct PhaseGridResult {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<PhaseCell> cells;
};

/// Empirical recovery rates over an (omega, delta) grid. Each omega value
/// replaces the weight of every class after the first (a single-class
/// model ignores it); delta fixes m = round(delta * n).
PhaseGridResult run_phase_grid(const SparsityModel& model,
                               const std::vector<double>& omegas,
                               const std::vector<double>& deltas, int n,
                               int trials, std::uint64_t seed, int jobs = 1);

struct P1Cell {
  double p1 = 0.0;
  double omega = 1.0;
  int trials = 0;
  int successes = 0;
};

struct P1SweepResult {
  double p2 = 0.0;
  int n = 0;
  int m = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<P1Cell> cells;
};

/// Recovery rates for two equal-size classes as the dense-class fraction
/// p1 sweeps, at each of the candidate second-class weights.
P1SweepResult run_p1_sweep(double p2, const std::vector<double>& omegas,
                           int n, int m, const std::vector<double>& p1s,
                           int trials, std::uint64_t seed, int jobs = 1);

struct ReweightedConfig {
  int n = 0;
  int m = 0;
  int k = 0;
  NonzeroDist dist = NonzeroDist::Gaussian;
  double omega = 1.0;
  int trials = 0;
};

struct ReweightedResult {
  ReweightedConfig config;
  std::uint64_t seed = 0;
  int plain_successes = 0;
  int reweighted_successes = 0;
};

/// Paired comparison of plain minimization against a second pass that
/// keeps weight 1 on the k largest entries of the first solution and
/// weight omega elsewhere. omega = 1 reproduces the plain result exactly.
ReweightedResult run_reweighted(const ReweightedConfig& cfg,
                                std::uint64_t seed, int jobs = 1);

struct NoisyCell {
  double omega = 1.0;
  double input_snr_db = 0.0;
  int trials = 0;
  double mean_output_snr_db = 0.0;
};

struct NoisySnrResult {
  int n = 0;
  int m = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<NoisyCell> cells;
};

/// Perturbs the signal before measurement with noise of norm
/// |x0| * 10^(-snr/20), reconstructs, and averages the output SNR
/// 10 log10(|x0|^2 / |x0 - xhat|^2) in dB, capped at 300 dB.
NoisySnrResult run_noisy_snr(const SparsityModel& model,
                             const std::vector<double>& omegas, int n, int m,
                             const std::vector<double>& snrs_db, int trials,
                             std::uint64_t seed, int jobs = 1);

}  // namespace wl1
