#include "wl1/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "wl1/error.hpp"
#include "wl1/recovery.hpp"
#include "wl1/rng.hpp"

namespace wl1 {

const char* to_string(NonzeroDist d) {
  switch (d) {
    case NonzeroDist::Gaussian: return "gaussian";
    case NonzeroDist::Uniform: return "uniform";
    case NonzeroDist::Rayleigh: return "rayleigh";
    case NonzeroDist::SqrtChi2_4: return "sqrt-chi2-4";
    case NonzeroDist::SqrtChi2_6: return "sqrt-chi2-6";
  }
  return "gaussian";
}

NonzeroDist nonzero_dist_from_string(const std::string& name) {
  if (name == "gaussian") return NonzeroDist::Gaussian;
  if (name == "uniform") return NonzeroDist::Uniform;
  if (name == "rayleigh") return NonzeroDist::Rayleigh;
  if (name == "sqrt-chi2-4") return NonzeroDist::SqrtChi2_4;
  if (name == "sqrt-chi2-6") return NonzeroDist::SqrtChi2_6;
  throw DomainError("unknown nonzero distribution: " + name);
}

namespace {

// Runs fn(index) for every index in [0, count) across `jobs` threads.
// Work items own their results, so scheduling cannot change the output.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, const Fn& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min<std::size_t>(jobs, count);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

SparsityModel with_secondary_omega(const SparsityModel& model, double omega) {
  std::vector<SignalClass> classes(model.classes());
  for (std::size_t i = 1; i < classes.size(); ++i) classes[i].omega = omega;
  return SparsityModel(classes);
}

bool run_recovery_trial(const SparsityModel& model, int n, int m,
                        std::uint64_t trial_seed) {
  ModelInstance inst = sample_model_instance(model, n, m, trial_seed);
  LpSolution sol = solve_weighted_l1(inst.A, inst.y, inst.weights);
  return sol.status == LpStatus::Optimal && recovery_success(inst.x0, sol.x);
}

double sample_magnitude(Rng& rng, NonzeroDist dist) {
  auto chi = [&](int dof) {
    double s = 0.0;
    for (int i = 0; i < dof; ++i) {
      double z = rng.normal();
      s += z * z;
    }
    return std::sqrt(s);
  };
  switch (dist) {
    case NonzeroDist::Gaussian: return std::fabs(rng.normal());
    case NonzeroDist::Uniform: return rng.uniform();
    case NonzeroDist::Rayleigh: return std::sqrt(-2.0 * std::log(rng.uniform()));
    case NonzeroDist::SqrtChi2_4: return chi(4);
    case NonzeroDist::SqrtChi2_6: return chi(6);
  }
  return std::fabs(rng.normal());
}

}  // namespace

PhaseGridResult run_phase_grid(const SparsityModel& model,
                               const std::vector<double>& omegas,
                               const std::vector<double>& deltas, int n,
                               int trials, std::uint64_t seed, int jobs) {
  if (n <= 0 || trials <= 0 || omegas.empty() || deltas.empty()) {
    throw DomainError("run_phase_grid: empty grid or nonpositive sizes");
  }
  PhaseGridResult out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;

  std::vector<SparsityModel> models;
  models.reserve(omegas.size());
  for (double w : omegas) models.push_back(with_secondary_omega(model, w));

  const std::size_t nc = omegas.size() * deltas.size();
  out.cells.resize(nc);
  for (std::size_t oi = 0; oi < omegas.size(); ++oi) {
    for (std::size_t di = 0; di < deltas.size(); ++di) {
      PhaseCell& cell = out.cells[oi * deltas.size() + di];
      cell.omega = omegas[oi];
      cell.delta = deltas[di];
      cell.m = std::clamp<int>(
          static_cast<int>(std::llround(deltas[di] * n)), 1, n);
      cell.trials = trials;
    }
  }

  std::vector<char> ok(nc * trials, 0);
  parallel_for(nc * trials, jobs, [&](std::size_t task) {
    const std::size_t ci = task / trials;
    const int trial = static_cast<int>(task % trials);
    const std::size_t oi = ci / deltas.size();
    const std::size_t di = ci % deltas.size();
    const std::uint64_t ts = hash_seed(
        hash_seed(hash_seed(seed, oi), di), static_cast<std::uint64_t>(trial));
    ok[task] = run_recovery_trial(models[oi], n, out.cells[ci].m, ts) ? 1 : 0;
  });
  for (std::size_t task = 0; task < ok.size(); ++task) {
    if (ok[task]) ++out.cells[task / trials].successes;
  }
  return out;
}

P1SweepResult run_p1_sweep(double p2, const std::vector<double>& omegas,
                           int n, int m, const std::vector<double>& p1s,
                           int trials, std::uint64_t seed, int jobs) {
  if (n <= 0 || m <= 0 || trials <= 0 || omegas.empty() || p1s.empty()) {
    throw DomainError("run_p1_sweep: empty grid or nonpositive sizes");
  }
  P1SweepResult out;
  out.p2 = p2;
  out.n = n;
  out.m = m;
  out.trials = trials;
  out.seed = seed;

  const std::size_t nc = p1s.size() * omegas.size();
  out.cells.resize(nc);
  std::vector<SparsityModel> models;
  models.reserve(nc);
  for (std::size_t pi = 0; pi < p1s.size(); ++pi) {
    for (std::size_t oi = 0; oi < omegas.size(); ++oi) {
      P1Cell& cell = out.cells[pi * omegas.size() + oi];
      cell.p1 = p1s[pi];
      cell.omega = omegas[oi];
      cell.trials = trials;
      models.push_back(SparsityModel(
          {{0.5, p1s[pi], 1.0}, {0.5, p2, omegas[oi]}}));
    }
  }

  std::vector<char> ok(nc * trials, 0);
  parallel_for(nc * trials, jobs, [&](std::size_t task) {
    const std::size_t ci = task / trials;
    const int trial = static_cast<int>(task % trials);
    const std::size_t pi = ci / omegas.size();
    const std::size_t oi = ci % omegas.size();
    const std::uint64_t ts = hash_seed(
        hash_seed(hash_seed(seed, pi), oi), static_cast<std::uint64_t>(trial));
    ok[task] = run_recovery_trial(models[ci], n, m, ts) ? 1 : 0;
  });
  for (std::size_t task = 0; task < ok.size(); ++task) {
    if (ok[task]) ++out.cells[task / trials].successes;
  }
  return out;
}

ReweightedResult run_reweighted(const ReweightedConfig& cfg,
                                std::uint64_t seed, int jobs) {
  if (cfg.n <= 0 || cfg.m <= 0 || cfg.m > cfg.n || cfg.k < 0 ||
      cfg.k > cfg.n || cfg.trials <= 0 || !(cfg.omega > 0.0)) {
    throw DomainError("run_reweighted: invalid configuration");
  }
  ReweightedResult out;
  out.config = cfg;
  out.seed = seed;

  std::vector<char> plain_ok(cfg.trials, 0);
  std::vector<char> rw_ok(cfg.trials, 0);
  parallel_for(cfg.trials, jobs, [&](std::size_t trial) {
    Rng rng(hash_seed(hash_seed(seed, static_cast<std::uint64_t>(cfg.k)),
                      static_cast<std::uint64_t>(trial)));
    const int n = cfg.n;
    // Uniform k-subset support, then signed magnitudes, then the matrix.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < cfg.k; ++i) {
      int j = i + static_cast<int>(rng.next_u64() % (n - i));
      std::swap(perm[i], perm[j]);
    }
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < cfg.k; ++i) {
      double mag = sample_magnitude(rng, cfg.dist);
      double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
      x0[perm[i]] = sign * mag;
    }
    Eigen::MatrixXd A(cfg.m, n);
    for (int i = 0; i < cfg.m; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    }
    Eigen::VectorXd y = A * x0;

    Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    LpSolution first = solve_weighted_l1(A, y, ones);
    if (first.status != LpStatus::Optimal) return;
    plain_ok[trial] = recovery_success(x0, first.x) ? 1 : 0;

    // Keep the k largest first-pass entries at weight 1 (ties resolved
    // toward the smaller index), push everything else up to omega.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::fabs(first.x[a]) > std::fabs(first.x[b]);
    });
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, cfg.omega);
    for (int i = 0; i < cfg.k; ++i) w[order[i]] = 1.0;
    LpSolution second = solve_weighted_l1(A, y, w);
    if (second.status != LpStatus::Optimal) return;
    rw_ok[trial] = recovery_success(x0, second.x) ? 1 : 0;
  });
  out.plain_successes =
      std::accumulate(plain_ok.begin(), plain_ok.end(), 0);
  out.reweighted_successes = std::accumulate(rw_ok.begin(), rw_ok.end(), 0);
  return out;
}

NoisySnrResult run_noisy_snr(const SparsityModel& model,
                             const std::vector<double>& omegas, int n, int m,
                             const std::vector<double>& snrs_db, int trials,
                             std::uint64_t seed, int jobs) {
  if (n <= 0 || m <= 0 || m > n || trials <= 0 || omegas.empty() ||
      snrs_db.empty()) {
    throw DomainError("run_noisy_snr: empty grid or nonpositive sizes");
  }
  constexpr double kSnrCapDb = 300.0;
  NoisySnrResult out;
  out.n = n;
  out.m = m;
  out.trials = trials;
  out.seed = seed;

  std::vector<SparsityModel> models;
  models.reserve(omegas.size());
  for (double w : omegas) models.push_back(with_secondary_omega(model, w));

  const std::size_t nc = omegas.size() * snrs_db.size();
  out.cells.resize(nc);
  for (std::size_t oi = 0; oi < omegas.size(); ++oi) {
    for (std::size_t si = 0; si < snrs_db.size(); ++si) {
      NoisyCell& cell = out.cells[oi * snrs_db.size() + si];
      cell.omega = omegas[oi];
      cell.input_snr_db = snrs_db[si];
      cell.trials = trials;
    }
  }

  std::vector<double> snr_out(nc * trials, 0.0);
  parallel_for(nc * trials, jobs, [&](std::size_t task) {
    const std::size_t ci = task / trials;
    const int trial = static_cast<int>(task % trials);
    const std::size_t oi = ci / snrs_db.size();
    const std::size_t si = ci % snrs_db.size();
    const std::uint64_t ts = hash_seed(
        hash_seed(hash_seed(seed, oi), si), static_cast<std::uint64_t>(trial));
    ModelInstance inst = sample_model_instance(models[oi], n, m, ts);

    // Noise perturbs the signal before measurement, scaled to the
    // requested input SNR; the measurements stay exactly consistent.
    Rng rng(hash_seed(ts, 0x6e6f697365));
    Eigen::VectorXd e(n);
    for (int j = 0; j < n; ++j) e[j] = rng.normal();
    const double x_norm = inst.x0.norm();
    const double target = x_norm * std::pow(10.0, -snrs_db[si] / 20.0);
    if (e.norm() > 0.0 && target > 0.0) {
      e *= target / e.norm();
    } else {
      e.setZero();
    }
    Eigen::VectorXd y = inst.A * (inst.x0 + e);
    LpSolution sol = solve_weighted_l1(inst.A, y, inst.weights);
    if (sol.status != LpStatus::Optimal) {
      snr_out[task] = 0.0;
      return;
    }
    const double err = (inst.x0 - sol.x).norm();
    double snr_db = kSnrCapDb;
    if (err > 0.0 && x_norm > 0.0) {
      snr_db = std::min(kSnrCapDb, 20.0 * std::log10(x_norm / err));
    }
    snr_out[task] = snr_db;
  });
  for (std::size_t ci = 0; ci < nc; ++ci) {
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) sum += snr_out[ci * trials + t];
    out.cells[ci].mean_output_snr_db = sum / trials;
  }
  return out;
}

}  // namespace wl1
