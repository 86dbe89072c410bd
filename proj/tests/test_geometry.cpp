#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wl1/error.hpp"
#include "wl1/exact_geometry.hpp"
#include "wl1/recovery.hpp"

// Reference angle values in this file were frozen from 50-digit
// arbitrary-precision quadrature (mpmath) of the defining integrals; the
// simplex/cone identities (value 1/2, value 1) are exact.

TEST_CASE("external angle matches high-precision quadrature") {
  // k = (2, 1), t = (3, 2), n = (8, 6), w = (1, 2).
  wl1::FacePair pair{2, 1, 3, 2, 8, 6, 1.0, 2.0};
  auto ext = wl1::external_angle(pair);
  CHECK(ext.value ==
        doctest::Approx(0.0013732471147882893083).epsilon(1e-10));
  CHECK(ext.log_value == doctest::Approx(std::log(ext.value)).epsilon(1e-12));

  // Single class, k = 1, t = 1, n = 3, unit weight.
  wl1::FacePair small{1, 0, 1, 0, 3, 0, 1.0, 1.0};
  CHECK(wl1::external_angle(small).value ==
        doctest::Approx(0.19591327601530363509).epsilon(1e-10));
}

TEST_CASE("external angle of a full face is exactly one half") {
  // No off-face coordinates (r = 0 in both classes): the integral
  // collapses to (1/sqrt(pi)) Int exp(-x^2) = 1/2 with no quadrature.
  wl1::FacePair pair{2, 3, 1, 0, 3, 3, 1.0, 5.0};
  auto ext = wl1::external_angle(pair);
  CHECK(ext.value == 0.5);
  CHECK(ext.log_value == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("external angle log value survives extreme decay") {
  // 200 + 100 face coordinates out of 400 + 400 with weights (1, 2.5):
  // the angle itself underflows badly but its log is still accurate.
  // Reference: -350.97477630788779 by 50-digit quadrature normalized at
  // the integrand peak (the integrand lives at scale exp(-350), so the
  // reference integration subdivides around the located maximum).
  wl1::FacePair pair{200, 100, 0, 0, 400, 400, 1.0, 2.5};
  auto ext = wl1::external_angle(pair);
  CHECK(ext.log_value == doctest::Approx(-350.97477630788779).epsilon(1e-9));
}

TEST_CASE("internal angle exact cases") {
  // No off-support coordinates: the angle is a point, value 1.
  wl1::FacePair pair{3, 2, 0, 0, 8, 6, 1.0, 2.0};
  auto est = wl1::internal_angle(pair, 10, 1);
  CHECK(est.estimate == 1.0);
  CHECK(est.std_err == 0.0);
}

TEST_CASE("internal angle of planar wedges is one half") {
  // One extra dimension always splits a half-plane: beta = 1/2 whatever
  // the weights.  The Monte-Carlo estimate must agree within its own
  // reported error bars (these cases have near-zero variance).
  for (wl1::FacePair pair : {wl1::FacePair{1, 0, 1, 0, 4, 0, 1.0, 1.0},
                             wl1::FacePair{2, 1, 1, 0, 6, 4, 1.0, 2.0},
                             wl1::FacePair{2, 1, 0, 1, 6, 4, 1.0, 2.0}}) {
    auto est = wl1::internal_angle(pair, 20000, 5);
    CHECK(std::abs(est.estimate - 0.5) < 5 * est.std_err + 1e-9);
  }
}

TEST_CASE("internal angle matches high-precision reference values") {
  // beta(k=(2,1), t=(1,1), w=(1,2)) = 0.21158270847319324584 and
  // beta(k=(1,1), t=(1,1), w=(1,2)) = 0.20613008597704454737, both from
  // 50-digit evaluation of the defining simplex integral.
  auto a = wl1::internal_angle({2, 1, 1, 1, 8, 6, 1.0, 2.0}, 60000, 11);
  CHECK(std::abs(a.estimate - 0.21158270847319324584) < 5 * a.std_err);
  auto b = wl1::internal_angle({1, 1, 1, 1, 8, 6, 1.0, 2.0}, 60000, 12);
  CHECK(std::abs(b.estimate - 0.20613008597704454737) < 5 * b.std_err);
  // The log of the estimate and its error propagate consistently.
  CHECK(a.log_estimate == doctest::Approx(std::log(a.estimate)).epsilon(1e-12));
  CHECK(a.log_std_err ==
        doctest::Approx(a.std_err / a.estimate).epsilon(1e-9));
}

TEST_CASE("internal angle is deterministic in the seed") {
  wl1::FacePair pair{2, 1, 1, 1, 8, 6, 1.0, 2.0};
  auto a = wl1::internal_angle(pair, 5000, 77);
  auto b = wl1::internal_angle(pair, 5000, 77);
  auto c = wl1::internal_angle(pair, 5000, 78);
  CHECK(a.estimate == b.estimate);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("internal angle rejects bad sample counts") {
  CHECK_THROWS_AS(wl1::internal_angle({1, 0, 1, 0, 4, 0, 1.0, 1.0}, 1, 0),
                  wl1::DomainError);
}

TEST_CASE("failure bound on a four-dimensional model") {
  // n = 4, one support coordinate per class, one measurement, weights
  // (1, 2).  Term values against 50-digit evaluation; the raw sum
  // 1.46525889... exceeds one, so the bound clamps.
  wl1::FiniteModel fm{4, 2, 2, 1, 1, 1, 1.0, 2.0};
  auto fb = wl1::failure_bound(fm, 60000, 21);
  REQUIRE(fb.terms.size() == 3);
  CHECK(fb.clamped);
  CHECK(fb.bound == 1.0);
  CHECK(fb.raw == doctest::Approx(1.465258891758336709525).epsilon(0.02));
  for (const auto& term : fb.terms) {
    double expect = 0.0;
    if (term.t1 == 0 && term.t2 == 1) expect = 0.2048327646991334516;
    if (term.t1 == 1 && term.t2 == 0) expect = 0.4359057831510250684;
    if (term.t1 == 1 && term.t2 == 1) expect = 0.8245203439081781895;
    CHECK(term.term == doctest::Approx(expect).epsilon(0.05));
  }
}

TEST_CASE("parity-restricted bound keeps alternating face sizes") {
  wl1::FiniteModel fm{4, 2, 2, 1, 1, 1, 1.0, 2.0};
  auto fb = wl1::failure_bound(fm, 60000, 21, true);
  // Only the two t1 + t2 = 1 terms survive; their exact sum is
  // 0.64073854785015852, just under the clamp.
  REQUIRE(fb.terms.size() == 2);
  CHECK_FALSE(fb.clamped);
  CHECK(fb.bound == doctest::Approx(0.64073854785015852).epsilon(0.02));
}

TEST_CASE("failure bound validates its model") {
  CHECK_THROWS_AS(
      wl1::failure_bound({5, 2, 2, 1, 1, 1, 1.0, 2.0}, 1000, 0),
      wl1::DomainError);  // n != n1 + n2
  CHECK_THROWS_AS(
      wl1::failure_bound({4, 2, 2, 1, 1, 4, 1.0, 2.0}, 1000, 0),
      wl1::DomainError);  // m >= n
  CHECK_THROWS_AS(
      wl1::failure_bound({100, 50, 50, 5, 5, 60, 1.0, 2.0}, 1000, 0),
      wl1::DomainError);  // n > 80
}

TEST_CASE("null-space condition on hand-built matrices") {
  Eigen::VectorXd w3 = Eigen::VectorXd::Ones(3);

  // Empty support holds trivially.
  Eigen::MatrixXd A(2, 3);
  A << 1, 2, 0.5,
       0.3, 1, 2;
  auto empty = wl1::null_space_condition_check(A, {}, w3, 50, 1);
  CHECK(empty.verdict == wl1::NullSpaceVerdict::Holds);

  // Square invertible matrix: the null space is trivial.
  Eigen::MatrixXd sq(3, 3);
  sq << 2, 0, 1,
        0, 1, 0,
        1, 0, 3;
  auto trivial = wl1::null_space_condition_check(sq, {0, 2}, w3, 50, 1);
  CHECK(trivial.verdict == wl1::NullSpaceVerdict::Holds);
  CHECK(trivial.exact);

  // One null direction (1, 2, 0.5)-orthogonal complement: the condition
  // fails for the weighted mass on index 0.
  auto bad = wl1::null_space_condition_check(A, {0}, w3, 50, 1);
  CHECK(bad.verdict == wl1::NullSpaceVerdict::Violated);
  CHECK(bad.exact);
  CHECK(bad.worst_margin < 0.0);
  // The witness actually certifies the violation.
  REQUIRE(bad.witness.size() == 3);
  CHECK((A * bad.witness).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK(std::abs(bad.witness[0]) >
        std::abs(bad.witness[1]) + std::abs(bad.witness[2]) - 1e-12);
}

TEST_CASE("null-space check rejects rank-deficient matrices") {
  Eigen::MatrixXd A(2, 3);
  A << 1, 2, 3,
       2, 4, 6;
  Eigen::VectorXd w = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS(wl1::null_space_condition_check(A, {0}, w, 10, 1),
                  wl1::RankDeficient);
}

TEST_CASE("null-space certificate agrees with solving the program") {
  // For random instances the exact certificate must predict recovery of
  // every sign pattern on the support; compare against one solve.
  wl1::SparsityModel m({{1.0, 0.25, 1.0}});
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = wl1::sample_model_instance(m, 12, 8, seed);
    auto rep = wl1::null_space_condition_check(inst.A, inst.support,
                                               inst.weights, 50, seed);
    REQUIRE(rep.exact);
    auto sol = wl1::solve_weighted_l1(inst.A, inst.y, inst.weights);
    REQUIRE(sol.status == wl1::LpStatus::Optimal);
    bool recovered = wl1::recovery_success(inst.x0, sol.x);
    if (rep.verdict == wl1::NullSpaceVerdict::Holds) {
      // The certificate covers all sign patterns, recovery must follow.
      CHECK(recovered);
    }
    agree += (rep.verdict == wl1::NullSpaceVerdict::Holds) == recovered;
  }
  // Violations usually (not always) show up as failed recovery of the
  // particular planted signs; require overall coherence.
  CHECK(agree >= 4);
}
