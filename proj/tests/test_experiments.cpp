#include <algorithm>

#include "doctest.h"
#include "wl1/error.hpp"
#include "wl1/experiments.hpp"

namespace {
const wl1::SparsityModel kSingle({{1.0, 0.2, 1.0}});
}

TEST_CASE("nonzero distribution names round trip") {
  using wl1::NonzeroDist;
  for (auto d : {NonzeroDist::Gaussian, NonzeroDist::Uniform,
                 NonzeroDist::Rayleigh, NonzeroDist::SqrtChi2_4,
                 NonzeroDist::SqrtChi2_6}) {
    CHECK(wl1::nonzero_dist_from_string(wl1::to_string(d)) == d);
  }
  CHECK_THROWS_AS(wl1::nonzero_dist_from_string("cauchy"), wl1::DomainError);
}

TEST_CASE("phase grid is deterministic and scheduling-independent") {
  std::vector<double> omegas{1.0};
  std::vector<double> deltas{0.3, 0.7};
  auto a = wl1::run_phase_grid(kSingle, omegas, deltas, 60, 12, 5, 1);
  auto b = wl1::run_phase_grid(kSingle, omegas, deltas, 60, 12, 5, 1);
  auto c = wl1::run_phase_grid(kSingle, omegas, deltas, 60, 12, 5, 3);
  REQUIRE(a.cells.size() == 2);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].successes == b.cells[i].successes);
    // Worker count must not change the result, only the wall time.
    CHECK(a.cells[i].successes == c.cells[i].successes);
    CHECK(a.cells[i].trials == 12);
  }
  CHECK(a.cells[0].m == 18);  // round(0.3 * 60)
  CHECK(a.cells[1].m == 42);
}

TEST_CASE("recovery rate rises across the transition") {
  // p = 0.2 has its weak threshold near delta = 0.55; sampling well
  // below and well above must separate cleanly even with few trials.
  std::vector<double> deltas{0.25, 0.85};
  auto res = wl1::run_phase_grid(kSingle, {1.0}, deltas, 60, 24, 314, 1);
  int low = res.cells[0].successes;
  int high = res.cells[1].successes;
  CHECK(low <= 6);
  CHECK(high >= 20);
}

TEST_CASE("weights act on the classes after the first") {
  // Dense known class plus sparse class: a large weight on the second
  // class makes recovery strictly easier at the same delta.
  wl1::SparsityModel mixed({{0.5, 1.0, 1.0}, {0.5, 0.1, 1.0}});
  auto res =
      wl1::run_phase_grid(mixed, {1.0, 8.0}, {0.75}, 80, 24, 2718, 1);
  REQUIRE(res.cells.size() == 2);
  CHECK(res.cells[1].successes > res.cells[0].successes);
}

TEST_CASE("p1 sweep shapes and determinism") {
  auto res = wl1::run_p1_sweep(0.05, {1.0, 3.0}, 60, 36, {0.3, 0.5}, 10,
                               99, 1);
  REQUIRE(res.cells.size() == 4);
  CHECK(res.p2 == 0.05);
  auto res2 = wl1::run_p1_sweep(0.05, {1.0, 3.0}, 60, 36, {0.3, 0.5}, 10,
                                99, 2);
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    CHECK(res.cells[i].successes == res2.cells[i].successes);
  }
}

TEST_CASE("unit omega reweighting reproduces the plain pass exactly") {
  wl1::ReweightedConfig cfg;
  cfg.n = 60;
  cfg.m = 34;
  cfg.k = 14;
  cfg.dist = wl1::NonzeroDist::Gaussian;
  cfg.omega = 1.0;
  cfg.trials = 16;
  auto res = wl1::run_reweighted(cfg, 123, 1);
  // A second pass with all-equal weights solves the identical program,
  // so the paired counts cannot differ.
  CHECK(res.plain_successes == res.reweighted_successes);
}

TEST_CASE("reweighting with a real penalty helps near the transition") {
  wl1::ReweightedConfig cfg;
  cfg.n = 60;
  cfg.m = 34;
  cfg.k = 13;
  cfg.dist = wl1::NonzeroDist::SqrtChi2_6;
  cfg.omega = 3.0;
  cfg.trials = 24;
  auto res = wl1::run_reweighted(cfg, 4242, 1);
  CHECK(res.reweighted_successes >= res.plain_successes);
  auto res2 = wl1::run_reweighted(cfg, 4242, 2);
  CHECK(res.plain_successes == res2.plain_successes);
  CHECK(res.reweighted_successes == res2.reweighted_successes);
}

TEST_CASE("noisy measurements degrade gracefully") {
  auto res = wl1::run_noisy_snr(kSingle, {1.0}, 50, 40, {20.0, 200.0}, 6,
                                777, 1);
  REQUIRE(res.cells.size() == 2);
  // Reconstruction quality tracks the input SNR and the clean limit is
  // essentially exact.
  CHECK(res.cells[0].mean_output_snr_db < res.cells[1].mean_output_snr_db);
  CHECK(res.cells[1].mean_output_snr_db > 60.0);
  // Noise injection is deterministic too.
  auto res2 = wl1::run_noisy_snr(kSingle, {1.0}, 50, 40, {20.0, 200.0}, 6,
                                 777, 2);
  CHECK(res.cells[0].mean_output_snr_db ==
        doctest::Approx(res2.cells[0].mean_output_snr_db).epsilon(1e-15));
}
