#include <Eigen/Dense>

#include "doctest.h"
#include "wl1/lp.hpp"
#include "wl1/rng.hpp"

namespace {

// Strong duality plus feasibility: the certificate every Optimal result
// must carry.
void check_certificate(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& c, const wl1::LpResult& res) {
  REQUIRE(res.status == wl1::LpStatus::Optimal);
  CHECK((A * res.x - b).lpNorm<Eigen::Infinity>() <
        1e-8 * (1.0 + b.lpNorm<Eigen::Infinity>()));
  CHECK(res.x.minCoeff() >= -1e-9);
  CHECK(std::abs(c.dot(res.x) - b.dot(res.y)) <
        1e-7 * (1.0 + std::abs(res.objective)));
  // Dual feasibility: all reduced costs nonnegative.
  Eigen::VectorXd rc = c - A.transpose() * res.y;
  CHECK(rc.minCoeff() > -1e-7 * (1.0 + c.lpNorm<Eigen::Infinity>()));
}

}  // namespace

TEST_CASE("small equality-form program with a known optimum") {
  // min -x1 - 2 x2 over x1 + x2 + s1 = 4, x1 + 3 x2 + s2 = 6.
  // Both constraints bind: x = (3, 1), objective -5.
  Eigen::MatrixXd A(2, 4);
  A << 1, 1, 1, 0,
       1, 3, 0, 1;
  Eigen::VectorXd b(2);
  b << 4, 6;
  Eigen::VectorXd c(4);
  c << -1, -2, 0, 0;
  auto res = wl1::solve_lp(A, b, c);
  check_certificate(A, b, c, res);
  CHECK(res.objective == doctest::Approx(-5.0));
  CHECK(res.x[0] == doctest::Approx(3.0));
  CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("negative right-hand side keeps duals in caller convention") {
  // min x1 + 2 x2 over -x1 - x2 = -4: optimum x = (4, 0), objective 4.
  // The sign flip applied internally to make b nonnegative must not leak
  // into y: strong duality here forces y = -1.
  Eigen::MatrixXd A(1, 2);
  A << -1, -1;
  Eigen::VectorXd b(1);
  b << -4;
  Eigen::VectorXd c(2);
  c << 1, 2;
  auto res = wl1::solve_lp(A, b, c);
  check_certificate(A, b, c, res);
  CHECK(res.objective == doctest::Approx(4.0));
  CHECK(res.y[0] == doctest::Approx(-1.0));
}

TEST_CASE("infeasible program is detected") {
  // x1 + x2 = -1 has no nonnegative solution.
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  Eigen::VectorXd b(1);
  b << -1;
  Eigen::VectorXd c(2);
  c << 1, 1;
  auto res = wl1::solve_lp(A, b, c);
  CHECK(res.status == wl1::LpStatus::Infeasible);
}

TEST_CASE("unbounded program is detected") {
  // min -x1 over x1 - x2 = 0: push both to infinity.
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1);
  b << 0;
  Eigen::VectorXd c(2);
  c << -1, 0;
  auto res = wl1::solve_lp(A, b, c);
  CHECK(res.status == wl1::LpStatus::Unbounded);
}

TEST_CASE("redundant constraints are handled") {
  // Second row is the doubled first row; the basis has to shed one
  // artificial without declaring infeasibility.
  Eigen::MatrixXd A(2, 3);
  A << 1, 1, 1,
       2, 2, 2;
  Eigen::VectorXd b(2);
  b << 3, 6;
  Eigen::VectorXd c(3);
  c << 1, 2, 3;
  auto res = wl1::solve_lp(A, b, c);
  REQUIRE(res.status == wl1::LpStatus::Optimal);
  CHECK(res.objective == doctest::Approx(3.0));  // all mass on x1
}

TEST_CASE("degenerate vertices do not trap the pivot rule") {
  // Multiple basic feasible solutions share the origin vertex; the
  // anti-cycling fallback has to leave it.
  Eigen::MatrixXd A(3, 5);
  A << 1, 0, 0, 1, 0,
       0, 1, 0, 1, 0,
       0, 0, 1, 1, 1;
  Eigen::VectorXd b(3);
  b << 0, 0, 1;
  Eigen::VectorXd c(5);
  c << 1, 1, 1, -1, 2;
  auto res = wl1::solve_lp(A, b, c);
  REQUIRE(res.status == wl1::LpStatus::Optimal);
  check_certificate(A, b, c, res);
}

TEST_CASE("random feasible programs satisfy strong duality") {
  // Construct feasibility by planting x*: b = A x*.  Nonnegative costs
  // bound the objective below by zero, so every instance is Optimal.
  wl1::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 3 + static_cast<int>(rng.next_u64() % 4);   // 3..6
    int n = m + 2 + static_cast<int>(rng.next_u64() % 5);
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    Eigen::VectorXd xstar = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
      if (rng.uniform() < 0.5) xstar[j] = rng.uniform();
    Eigen::VectorXd b = A * xstar;
    Eigen::VectorXd c(n);
    for (int j = 0; j < n; ++j) c[j] = rng.uniform();
    auto res = wl1::solve_lp(A, b, c);
    check_certificate(A, b, c, res);
    CHECK(res.objective <= c.dot(xstar) + 1e-8);
  }
}

TEST_CASE("iteration cap reports IterLimit") {
  Eigen::MatrixXd A(2, 4);
  A << 1, 1, 1, 0,
       1, 3, 0, 1;
  Eigen::VectorXd b(2);
  b << 4, 6;
  Eigen::VectorXd c(4);
  c << -1, -2, 0, 0;
  auto res = wl1::solve_lp(A, b, c, 1);
  CHECK(res.status == wl1::LpStatus::IterLimit);
}
