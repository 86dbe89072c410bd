#include "wl1/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "wl1/error.hpp"

namespace wl1 {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterLimit: return "IterLimit";
  }
  return "IterLimit";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 50;
constexpr int kStallLimit = 60;

// Working state of the revised simplex over the extended matrix
// [A | I] whose last m columns are the phase-1 artificials.
struct Tableau {
  const Eigen::MatrixXd& A;   // m x n, rows pre-flipped so b >= 0
  const Eigen::VectorXd& b;
  Eigen::VectorXd cost;       // length n + m; phase dependent
  std::vector<int> basis;     // length m, values in [0, n + m)
  Eigen::MatrixXd binv;       // m x m
  Eigen::VectorXd xb;         // basic values, length m
  int m;
  int n;
  // Artificials start basic and may only leave, so pricing stops at n;
  // otherwise a zero-cost artificial could re-enter in phase 2 and wreck
  // the equality constraints.
  int priced;

  Eigen::VectorXd column(int j) const {
    if (j < n) return A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[j - n] = 1.0;
    return e;
  }

  void refactor() {
    Eigen::MatrixXd bmat(m, m);
    for (int i = 0; i < m; ++i) bmat.col(i) = column(basis[i]);
    binv = bmat.partialPivLu().inverse();
    xb = binv * b;
    for (int i = 0; i < m; ++i) xb[i] = std::max(xb[i], 0.0);
  }

  double objective() const {
    double v = 0.0;
    for (int i = 0; i < m; ++i) v += cost[basis[i]] * xb[i];
    return v;
  }

  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(m);
    for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
    return binv.transpose() * cb;
  }
};

// One phase of the simplex loop; returns Optimal when no reduced cost is
// negative, Unbounded when a column can grow forever, IterLimit otherwise.
LpStatus run_phase(Tableau& t, int max_iters, int* iters_used) {
  const double rc_tol = kPivotTol * (1.0 + t.cost.cwiseAbs().maxCoeff());
  std::vector<bool> in_basis(t.n + t.m, false);
  for (int i : t.basis) in_basis[i] = true;

  double best_obj = t.objective();
  int stall = 0;
  int since_refactor = 0;

  for (int iter = 0; iter < max_iters; ++iter) {
    ++*iters_used;
    Eigen::VectorXd y = t.duals();

    // Pricing: most negative reduced cost, first index on ties; after a
    // long stall switch to Bland's rule, which cannot cycle.
    bool bland = stall >= kStallLimit;
    int enter = -1;
    double best_rc = -rc_tol;
    for (int j = 0; j < t.priced; ++j) {
      if (in_basis[j]) continue;
      double rc = t.cost[j] - y.dot(t.column(j));
      if (bland) {
        if (rc < -rc_tol) {
          enter = j;
          break;
        }
      } else if (rc < best_rc) {
        best_rc = rc;
        enter = j;
      }
    }
    if (enter < 0) return LpStatus::Optimal;

    Eigen::VectorXd d = t.binv * t.column(enter);
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.m; ++i) {
      if (d[i] > kPivotTol) {
        double ratio = t.xb[i] / d[i];
        if (ratio < theta - 1e-12 ||
            (ratio < theta + 1e-12 &&
             (leave < 0 || t.basis[i] < t.basis[leave]))) {
          theta = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return LpStatus::Unbounded;

    in_basis[t.basis[leave]] = false;
    in_basis[enter] = true;
    t.basis[leave] = enter;
    for (int i = 0; i < t.m; ++i) {
      if (i == leave) continue;
      t.xb[i] -= theta * d[i];
      if (t.xb[i] < 0.0) t.xb[i] = 0.0;
    }
    t.xb[leave] = theta;

    double piv = d[leave];
    Eigen::RowVectorXd pivot_row = t.binv.row(leave) / piv;
    for (int i = 0; i < t.m; ++i) {
      if (i == leave) continue;
      t.binv.row(i) -= d[i] * pivot_row;
    }
    t.binv.row(leave) = pivot_row;

    if (++since_refactor >= kRefactorEvery) {
      t.refactor();
      since_refactor = 0;
    }

    double obj = t.objective();
    if (obj < best_obj - 1e-12 * (1.0 + std::fabs(best_obj))) {
      best_obj = obj;
      stall = 0;
    } else {
      ++stall;
    }
  }
  return LpStatus::IterLimit;
}

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                  const Eigen::VectorXd& c, int max_iters) {
  const int m = static_cast<int>(A_in.rows());
  const int n = static_cast<int>(A_in.cols());
  if (b_in.size() != m || c.size() != n) {
    throw DomainError("solve_lp: inconsistent dimensions");
  }
  if (max_iters <= 0) max_iters = 50 * (m + n + 10);

  // Work with b >= 0; remember the row flips so the duals can be
  // reported in the caller's orientation.
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  Eigen::VectorXd row_sign = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      A.row(i) = -A.row(i);
      row_sign[i] = -1.0;
    }
  }

  Tableau t{A, b, Eigen::VectorXd(), {}, Eigen::MatrixXd(),
            Eigen::VectorXd(), m, n, n};
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) t.basis[i] = n + i;
  t.binv = Eigen::MatrixXd::Identity(m, m);
  t.xb = b;

  LpResult res;

  // Phase 1: minimize the artificial mass.
  t.cost = Eigen::VectorXd::Zero(n + m);
  t.cost.tail(m).setOnes();
  LpStatus st = run_phase(t, max_iters, &res.iterations);
  if (st == LpStatus::IterLimit) {
    res.status = LpStatus::IterLimit;
    return res;
  }
  t.refactor();
  if (t.objective() > 1e-8 * (1.0 + b.lpNorm<1>())) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive leftover artificials out of the basis where a real pivot exists;
  // a fully dependent row leaves its artificial parked at value zero.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    Eigen::RowVectorXd row = t.binv.row(i) * A;
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (std::fabs(row[j]) > 1e-7) {
        enter = j;
        break;
      }
    }
    if (enter < 0) continue;
    Eigen::VectorXd d = t.binv * t.column(enter);
    double piv = d[i];
    Eigen::RowVectorXd pivot_row = t.binv.row(i) / piv;
    for (int r = 0; r < m; ++r) {
      if (r == i) continue;
      t.binv.row(r) -= d[r] * pivot_row;
    }
    t.binv.row(i) = pivot_row;
    t.basis[i] = enter;
    t.refactor();
  }

  // Phase 2 on the true objective; artificials get zero cost and stay
  // pinned at zero by the ratio test.
  t.cost = Eigen::VectorXd::Zero(n + m);
  t.cost.head(n) = c;
  st = run_phase(t, max_iters, &res.iterations);
  if (st == LpStatus::Unbounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  if (st == LpStatus::IterLimit) {
    res.status = LpStatus::IterLimit;
    return res;
  }
  t.refactor();

  res.status = LpStatus::Optimal;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) res.x[t.basis[i]] = t.xb[i];
  }
  res.y = row_sign.cwiseProduct(t.duals());
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace wl1
