#include <cmath>

#include "doctest.h"
#include "wl1/error.hpp"
#include "wl1/thresholds.hpp"

// The delta_c reference values in this file were frozen from an
// independent double-precision implementation of the same criterion
// (entropy sums plus stationary-point exponents, maximized over the
// fraction box by dense scanning with local refinement), bisected to
// 1e-10 in delta.  Agreement is checked to 1e-4, which absorbs the
// coarser scan grid used here.

namespace {
constexpr int kGrid = 56;
constexpr double kTol = 1e-6;
}  // namespace

TEST_CASE("single-class weak thresholds") {
  wl1::SparsityModel m1({{1.0, 0.1, 1.0}});
  auto r1 = wl1::delta_c(m1, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(r1.delta_c == doctest::Approx(0.32881427865113433).epsilon(1e-4));

  wl1::SparsityModel m2({{1.0, 0.225, 1.0}});
  auto r2 = wl1::delta_c(m2, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(r2.delta_c == doctest::Approx(0.5482688497174194).epsilon(1e-4));

  // The classic half-sampling anchor: at p = 0.1924 the weak threshold
  // sits almost exactly at delta = 1/2.
  wl1::SparsityModel m3({{1.0, 0.1924, 1.0}});
  auto r3 = wl1::delta_c(m3, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(r3.delta_c == doctest::Approx(0.49932243289482725).epsilon(1e-4));
}

TEST_CASE("threshold result carries a consistent witness") {
  wl1::SparsityModel m({{1.0, 0.15, 1.0}});
  auto r = wl1::delta_c(m, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(r.witness_tau.size() == 1);
  // Scanned max is strictly negative just above the threshold and only
  // roundoff-positive just below it.
  CHECK(r.max_at_delta < -1e-9);
  CHECK(std::abs(r.max_below_delta) < 1e-6);
  CHECK(r.grid_resolution == kGrid);
}

TEST_CASE("splitting a class in two does not move the threshold") {
  wl1::SparsityModel merged({{0.5, 0.3, 1.0}, {0.5, 0.3, 1.0}});
  wl1::SparsityModel single({{1.0, 0.3, 1.0}});
  auto a = wl1::delta_c(merged, wl1::ThresholdKind::Weak, kGrid, kTol);
  auto b = wl1::delta_c(single, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(a.delta_c == doctest::Approx(b.delta_c).epsilon(2e-3));
}

TEST_CASE("threshold kinds are ordered weak <= sectional <= strong") {
  wl1::SparsityModel m({{1.0, 0.05, 1.0}});
  auto ord = wl1::threshold_ordering_check(m, kGrid, 1e-5);
  CHECK(ord.ordered);
  CHECK(ord.weak == doctest::Approx(0.2039178392235044).epsilon(1e-3));
  CHECK(ord.sectional == doctest::Approx(0.5081576304962255).epsilon(1e-3));
  CHECK(ord.strong == doctest::Approx(0.5370381111597).epsilon(1e-3));
}

TEST_CASE("a known dense class decouples under a heavy weight") {
  // Class 1 is fully dense and known; with omega -> infinity on class 2
  // the problem splits, and the threshold approaches
  // gamma_1 + gamma_2 * delta_c(p = 0.1).
  wl1::SparsityModel m({{0.5, 1.0, 1.0}, {0.5, 0.1, 1e4}});
  auto r = wl1::delta_c(m, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(r.delta_c ==
        doctest::Approx(0.5 + 0.5 * 0.32881427865113433).epsilon(2e-3));
  // With uniform weights the same model needs far more measurements.
  wl1::SparsityModel u({{0.5, 1.0, 1.0}, {0.5, 0.1, 1.0}});
  auto ru = wl1::delta_c(u, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(ru.delta_c == doctest::Approx(0.8649952038188532).epsilon(1e-3));
  CHECK(r.delta_c < ru.delta_c - 0.15);
}

TEST_CASE("degenerate models short-circuit") {
  wl1::SparsityModel zero({{1.0, 0.0, 1.0}});
  auto rz = wl1::delta_c(zero, wl1::ThresholdKind::Weak, kGrid, 1e-4);
  CHECK(rz.delta_c == doctest::Approx(1e-4));

  wl1::SparsityModel dense({{1.0, 1.0, 1.0}});
  auto rd = wl1::delta_c(dense, wl1::ThresholdKind::Weak, kGrid, kTol);
  CHECK(rd.delta_c == doctest::Approx(1.0));
}

TEST_CASE("delta_c rejects bad parameters") {
  wl1::SparsityModel m({{1.0, 0.1, 1.0}});
  CHECK_THROWS_AS(wl1::delta_c(m, wl1::ThresholdKind::Weak, 10, kTol),
                  wl1::DomainError);
  CHECK_THROWS_AS(wl1::delta_c(m, wl1::ThresholdKind::Weak, kGrid, 0.0),
                  wl1::DomainError);
}

TEST_CASE("unconstrained scan maximum is zero up to roundoff") {
  // With no lower bound active (delta at the support fraction), the
  // maximum of the combined exponent over the whole fraction box is
  // exactly zero in exact arithmetic; the scan should reproduce that to
  // numerical noise.  This pins the normalization of all three pieces.
  wl1::SparsityModel m({{0.5, 0.4, 1.0}, {0.5, 0.05, 3.0}});
  auto scan = wl1::scan_max_psi_tot(m, wl1::ThresholdKind::Weak,
                                    m.support_fraction(), 48);
  CHECK(std::abs(scan.max_value) < 5e-6);
}

TEST_CASE("scanned maximum decreases with delta") {
  wl1::SparsityModel m({{1.0, 0.1, 1.0}});
  auto a = wl1::scan_max_psi_tot(m, wl1::ThresholdKind::Weak, 0.40, 64);
  auto b = wl1::scan_max_psi_tot(m, wl1::ThresholdKind::Weak, 0.60, 64);
  auto c = wl1::scan_max_psi_tot(m, wl1::ThresholdKind::Weak, 0.80, 64);
  CHECK(a.max_value >= b.max_value);
  CHECK(b.max_value >= c.max_value);
  // Well above the threshold the decay rate is solidly negative.
  CHECK(c.max_value < -0.05);
}

TEST_CASE("weight search finds the interior optimum") {
  // Coarse settings keep this under a second; the optimum for this model
  // sits near omega = 2.5 with delta about 0.4769.
  auto ow = wl1::optimal_weight(0.5, 0.4, 0.05, wl1::ThresholdKind::Weak,
                                {1.8, 3.5}, 0.05, 7, 50);
  CHECK(ow.omega_star > 2.0);
  CHECK(ow.omega_star < 3.0);
  CHECK(ow.delta_star == doctest::Approx(0.476863).epsilon(2e-3));
  CHECK(ow.curve.size() == 7);
  // Every curve point dominates the refined optimum.
  for (const auto& pt : ow.curve) {
    CHECK(pt.delta_c >= ow.delta_star - 1e-9);
  }
}

TEST_CASE("robustness constant arithmetic") {
  auto a = wl1::robustness_constant(0.0, 0.0, 0.5, 0.5);
  CHECK(a.mu == doctest::Approx(0.0));
  CHECK(a.value == doctest::Approx(1.0));

  auto b = wl1::robustness_constant(0.5, 0.5, 0.5, 0.5);
  CHECK(b.mu == doctest::Approx(0.5));
  CHECK(b.value == doctest::Approx(3.0));

  // min(0.1*0.4/0.6, 0.2*0.05/0.95) = 1/95, so C = 96/94 = 48/47.
  auto c = wl1::robustness_constant(0.1, 0.2, 0.4, 0.05);
  CHECK(c.value == doctest::Approx(48.0 / 47.0).epsilon(1e-14));

  CHECK_THROWS_AS(wl1::robustness_constant(1.0, 1.0, 0.9, 0.9),
                  wl1::DomainError);
  CHECK_THROWS_AS(wl1::robustness_constant(-0.1, 0.0, 0.5, 0.5),
                  wl1::DomainError);
}

TEST_CASE("robustness inequality on a hand-built instance") {
  Eigen::VectorXd x0(6), xhat(6);
  x0 << 3.0, 1.0, 0.0, 2.0, 0.5, 0.0;
  xhat = x0;
  std::vector<int> K1{0, 1}, K2{3, 4};
  auto chk = wl1::robustness_inequality_check(x0, xhat, K1, K2, 2.0, 0.5,
                                              0.5, 0.5, 0.5);
  // Exact reconstruction: zero error against a positive tail budget.
  CHECK(chk.lhs == doctest::Approx(0.0));
  CHECK(chk.holds);
}
