#include "wl1/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "wl1/error.hpp"
#include "wl1/rng.hpp"

namespace wl1 {

std::vector<int> class_sizes(const SparsityModel& model, int n) {
  if (n <= 0) throw DomainError("class_sizes: n must be positive");
  const std::size_t u = model.size();
  std::vector<int> sizes(u);
  std::vector<std::pair<double, std::size_t>> remainders(u);
  int assigned = 0;
  for (std::size_t i = 0; i < u; ++i) {
    double exact = model.cls(i).gamma * n;
    sizes[i] = static_cast<int>(std::floor(exact));
    remainders[i] = {exact - sizes[i], i};
    assigned += sizes[i];
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (int r = 0; r < n - assigned; ++r) ++sizes[remainders[r].second];
  return sizes;
}

ModelInstance sample_model_instance(const SparsityModel& model, int n, int m,
                                    std::uint64_t seed) {
  if (m <= 0 || m > n) {
    throw DomainError("sample_model_instance: need 0 < m <= n");
  }
  Rng rng(seed);
  ModelInstance inst;
  inst.x0 = Eigen::VectorXd::Zero(n);
  inst.weights.resize(n);
  inst.class_of.resize(n);

  std::vector<int> sizes = class_sizes(model, n);
  int offset = 0;
  for (std::size_t c = 0; c < model.size(); ++c) {
    const SignalClass& cls = model.cls(c);
    const int nc = sizes[c];
    for (int i = 0; i < nc; ++i) {
      inst.class_of[offset + i] = static_cast<int>(c);
      inst.weights[offset + i] = cls.omega;
    }
    const int k = static_cast<int>(std::llround(cls.p * nc));
    // Partial Fisher-Yates: the first k slots of perm become a uniform
    // k-subset of the class block.
    std::vector<int> perm(nc);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(rng.next_u64() % (nc - i));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < k; ++i) {
      int idx = offset + perm[i];
      inst.x0[idx] = rng.normal();
      inst.support.push_back(idx);
    }
    offset += nc;
  }
  std::sort(inst.support.begin(), inst.support.end());

  inst.A.resize(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) inst.A(i, j) = rng.normal();
  }
  inst.y = inst.A * inst.x0;
  return inst;
}

LpSolution solve_weighted_l1(const Eigen::MatrixXd& A,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& weights, double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (y.size() != m || weights.size() != n) {
    throw DomainError("solve_weighted_l1: inconsistent dimensions");
  }
  if ((weights.array() < 0.0).any()) {
    throw DomainError("solve_weighted_l1: weights must be nonnegative");
  }

  // Keep an independent subset of rows; dependent rows are re-checked
  // against the solution afterwards.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  if (rank < m) {
    const auto& perm = qr.colsPermutation().indices();
    rows.assign(perm.data(), perm.data() + rank);
    std::sort(rows.begin(), rows.end());
  }
  const int mr = static_cast<int>(rows.size());
  Eigen::MatrixXd Ar(mr, n);
  Eigen::VectorXd yr(mr);
  for (int i = 0; i < mr; ++i) {
    Ar.row(i) = A.row(rows[i]);
    yr[i] = y[rows[i]];
  }

  Eigen::MatrixXd Alp(mr, 2 * n);
  Alp.leftCols(n) = Ar;
  Alp.rightCols(n) = -Ar;
  Eigen::VectorXd c(2 * n);
  c.head(n) = weights;
  c.tail(n) = weights;

  LpResult lp = solve_lp(Alp, yr, c);
  LpSolution sol;
  sol.status = lp.status;
  sol.iterations = lp.iterations;
  if (lp.status != LpStatus::Optimal) return sol;

  sol.x = lp.x.head(n) - lp.x.tail(n);
  sol.objective = lp.objective;
  sol.duality_gap = std::fabs(lp.objective - yr.dot(lp.y));

  const double scale = 1.0 + y.cwiseAbs().maxCoeff() +
                       A.cwiseAbs().maxCoeff() * sol.x.cwiseAbs().sum();
  if ((A * sol.x - y).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    sol.status = LpStatus::Infeasible;  // dropped rows disagree
    return sol;
  }
  if (sol.duality_gap > tol * (1.0 + std::fabs(sol.objective))) {
    sol.status = LpStatus::IterLimit;  // certificate failed
  }
  return sol;
}

bool recovery_success(const Eigen::VectorXd& x0, const Eigen::VectorXd& xhat,
                      double rel_tol) {
  if (x0.size() != xhat.size()) {
    throw DomainError("recovery_success: length mismatch");
  }
  return (xhat - x0).norm() <= rel_tol * std::max(1.0, x0.norm());
}

void save_instance(const ModelInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("save_instance: cannot open " + path);
  const int m = static_cast<int>(inst.A.rows());
  const int n = static_cast<int>(inst.A.cols());
  out << m << ' ' << n << '\n';
  out << std::setprecision(17);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) out << inst.A(i, j) << (j + 1 < n ? ' ' : '\n');
  }
  for (int j = 0; j < n; ++j) out << inst.x0[j] << (j + 1 < n ? ' ' : '\n');
  for (int j = 0; j < n; ++j)
    out << inst.weights[j] << (j + 1 < n ? ' ' : '\n');
  for (int j = 0; j < n; ++j)
    out << inst.class_of[j] << (j + 1 < n ? ' ' : '\n');
  if (!out) throw Error("save_instance: write failed for " + path);
}

ModelInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_instance: cannot open " + path);
  int m = 0, n = 0;
  if (!(in >> m >> n) || m <= 0 || n <= 0) {
    throw Error("load_instance: bad dimension header in " + path);
  }
  ModelInstance inst;
  inst.A.resize(m, n);
  inst.x0.resize(n);
  inst.weights.resize(n);
  inst.class_of.resize(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> inst.A(i, j))) throw Error("load_instance: truncated matrix");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!(in >> inst.x0[j])) throw Error("load_instance: truncated signal");
  }
  for (int j = 0; j < n; ++j) {
    if (!(in >> inst.weights[j])) throw Error("load_instance: truncated weights");
  }
  for (int j = 0; j < n; ++j) {
    if (!(in >> inst.class_of[j])) throw Error("load_instance: truncated classes");
  }
  inst.y = inst.A * inst.x0;
  for (int j = 0; j < n; ++j) {
    if (inst.x0[j] != 0.0) inst.support.push_back(j);
  }
  return inst;
}

}  // namespace wl1
