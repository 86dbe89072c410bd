#include "wl1/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wl1/error.hpp"

namespace wl1 {

namespace {

constexpr double kPsiMargin = 1e-9;
constexpr double kRefineFloor = 1e-7;

double psi_tot_value(const SparsityModel& model, const FractionVector& tau,
                     ThresholdKind kind) {
  return psi_com(model, tau, kind) - psi_int(model, tau).value -
         psi_ext(model, tau).value;
}

struct Region {
  std::vector<double> caps;      // gamma_i (1 - p_i)
  std::vector<int> active;       // axes with caps > 0
  double lo_sum;                 // delta - sum gamma_i p_i
};

bool feasible(const Region& r, const FractionVector& tau) {
  double s = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] < 0.0 || tau[i] > r.caps[i]) return false;
    s += tau[i];
  }
  return s >= r.lo_sum - 1e-15;
}

}  // namespace

RegionScan scan_max_psi_tot(const SparsityModel& model, ThresholdKind kind,
                            double delta, int grid) {
  if (grid < 2) throw DomainError("scan grid must be at least 2");
  const std::size_t u = model.size();

  Region region;
  region.caps.resize(u);
  for (std::size_t i = 0; i < u; ++i) {
    const SignalClass& c = model.cls(i);
    region.caps[i] = c.gamma * (1.0 - c.p);
    if (region.caps[i] > 0.0) region.active.push_back(static_cast<int>(i));
  }
  region.lo_sum = delta - model.support_fraction();

  RegionScan out;
  out.max_value = -std::numeric_limits<double>::infinity();
  out.grid_max = out.max_value;
  out.argmax.assign(u, 0.0);

  const std::size_t na = region.active.size();
  FractionVector tau(u, 0.0);

  auto consider = [&](const FractionVector& t, bool on_grid) {
    if (!feasible(region, t)) return;
    double v = psi_tot_value(model, t, kind);
    if (on_grid && v > out.grid_max) out.grid_max = v;
    if (v > out.max_value) {
      out.max_value = v;
      out.argmax = t;
    }
  };

  if (na == 0) {
    consider(tau, true);
    return out;
  }

  // Dimension-adaptive per-axis resolution: the full product stays under
  // a million evaluations however many classes are active.
  int g = grid;
  while (na >= 2 && std::pow(static_cast<double>(g),
                             static_cast<double>(na)) > 1e6 &&
         g > 8) {
    g = (3 * g) / 4;
  }

  std::vector<int> idx(na, 0);
  for (;;) {
    for (std::size_t a = 0; a < na; ++a) {
      int ax = region.active[a];
      tau[ax] = region.caps[ax] * idx[a] / (g - 1);
    }
    consider(tau, true);
    std::size_t a = 0;
    for (; a < na; ++a) {
      if (++idx[a] < g) break;
      idx[a] = 0;
    }
    if (a == na) break;
  }

  // Sweep the boundary hyperplane sum tau = lo_sum, where the maximizer
  // sits once delta passes the threshold.
  if (region.lo_sum > 0.0) {
    std::fill(tau.begin(), tau.end(), 0.0);
    if (na == 1) {
      int ax = region.active[0];
      if (region.lo_sum <= region.caps[ax]) {
        tau[ax] = region.lo_sum;
        consider(tau, true);
      }
    } else {
      int gb = 2 * g;
      std::vector<int> bidx(na - 1, 0);
      for (;;) {
        double partial = 0.0;
        for (std::size_t a = 0; a + 1 < na; ++a) {
          int ax = region.active[a];
          tau[ax] = region.caps[ax] * bidx[a] / (gb - 1);
          partial += tau[ax];
        }
        int last = region.active[na - 1];
        double rest = region.lo_sum - partial;
        if (rest >= 0.0 && rest <= region.caps[last]) {
          tau[last] = rest;
          consider(tau, true);
        }
        std::size_t a = 0;
        for (; a + 1 < na; ++a) {
          if (++bidx[a] < gb) break;
          bidx[a] = 0;
        }
        if (a + 1 == na) break;
      }
    }
  }

  if (!std::isfinite(out.max_value)) return out;

  // Compass refinement: axis steps and sum-preserving exchanges, halving
  // the step until it reaches the floor.
  double max_cap = 0.0;
  for (int ax : region.active) max_cap = std::max(max_cap, region.caps[ax]);
  double h = max_cap / g;
  FractionVector cur = out.argmax;
  double best = out.max_value;
  std::vector<std::pair<int, int>> moves;  // (axis+, axis-) with -1 = none
  for (int ax : region.active) {
    moves.push_back({ax, -1});
    moves.push_back({-1, ax});
  }
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b2 = 0; b2 < na; ++b2) {
      if (a != b2) moves.push_back({region.active[a], region.active[b2]});
    }
  }
  while (h > kRefineFloor) {
    bool improved = false;
    FractionVector cand = cur;
    for (const auto& mv : moves) {
      FractionVector t = cur;
      if (mv.first >= 0) t[mv.first] += h;
      if (mv.second >= 0) t[mv.second] -= h;
      if (!feasible(region, t)) continue;
      double v = psi_tot_value(model, t, kind);
      if (v > best) {
        best = v;
        cand = t;
        improved = true;
      }
    }
    if (improved) {
      cur = cand;
    } else {
      h *= 0.5;
    }
  }
  out.max_value = best;
  out.argmax = cur;
  return out;
}

ThresholdResult delta_c(const SparsityModel& model, ThresholdKind kind,
                        int grid, double tol) {
  if (grid < 50) throw DomainError("delta_c needs grid >= 50");
  if (!(tol > 0.0)) throw DomainError("delta_c needs tol > 0");

  ThresholdResult res;
  res.kind = kind;
  res.grid_resolution = grid;
  res.refine_tol = tol;
  res.witness_tau.assign(model.size(), 0.0);

  const double sgp = model.support_fraction();
  if (sgp == 0.0) {
    // Nothing to recover: any positive measurement fraction works, so the
    // reported threshold collapses to the resolution floor.
    res.delta_c = tol;
    res.max_at_delta = -std::numeric_limits<double>::infinity();
    res.max_below_delta = -std::numeric_limits<double>::infinity();
    return res;
  }
  bool any_cap = false;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (model.cls(i).gamma * (1.0 - model.cls(i).p) > 0.0) any_cap = true;
  }
  if (!any_cap) {
    // Fully dense signal: every coordinate must be measured.
    res.delta_c = 1.0;
    res.max_at_delta = 0.0;
    res.max_below_delta = 0.0;
    return res;
  }

  RegionScan top = scan_max_psi_tot(model, kind, 1.0, grid);
  if (!(top.max_value < -kPsiMargin)) {
    throw Infeasible("delta_c: max psi_tot at delta = 1 is " +
                     std::to_string(top.max_value));
  }

  double lo = sgp;
  double hi = 1.0;
  RegionScan at_hi = top;
  RegionScan at_lo;
  at_lo.max_value = 0.0;
  for (int iter = 0; iter < 40 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    RegionScan scan = scan_max_psi_tot(model, kind, mid, grid);
    if (scan.max_value < -kPsiMargin) {
      hi = mid;
      at_hi = scan;
    } else {
      lo = mid;
      at_lo = scan;
    }
  }
  res.delta_c = hi;
  res.witness_tau = at_hi.argmax;
  res.max_at_delta = at_hi.max_value;
  res.max_below_delta = at_lo.max_value;
  return res;
}

OptimalWeight optimal_weight(double gamma1, double p1, double p2,
                             ThresholdKind kind,
                             std::pair<double, double> omega_range,
                             double search_tol, int curve_points, int grid) {
  if (!(omega_range.first > 0.0) ||
      !(omega_range.second > omega_range.first)) {
    throw DomainError("optimal_weight: omega range must be positive and "
                      "increasing");
  }
  if (curve_points < 3) throw DomainError("optimal_weight: need >= 3 points");

  auto threshold_at = [&](double omega) {
    SparsityModel m({{gamma1, p1, 1.0}, {1.0 - gamma1, p2, omega}});
    return delta_c(m, kind, grid, 1e-5).delta_c;
  };

  OptimalWeight out;
  const double llo = std::log(omega_range.first);
  const double lhi = std::log(omega_range.second);
  int best_idx = 0;
  for (int j = 0; j < curve_points; ++j) {
    double omega =
        std::exp(llo + (lhi - llo) * j / (curve_points - 1));
    double d = threshold_at(omega);
    out.curve.push_back({omega, d});
    if (d < out.curve[best_idx].delta_c) best_idx = j;
  }
  out.omega_star = out.curve[best_idx].omega;
  out.delta_star = out.curve[best_idx].delta_c;

  // Golden-section in log omega between the grid neighbours of the
  // minimizer; the curve is treated as unimodal only inside this bracket.
  int il = std::max(0, best_idx - 1);
  int ih = std::min(curve_points - 1, best_idx + 1);
  double a = std::log(out.curve[il].omega);
  double b = std::log(out.curve[ih].omega);
  const double r = 0.61803398874989484820;
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = threshold_at(std::exp(x1));
  double f2 = threshold_at(std::exp(x2));
  while (std::exp(b) - std::exp(a) > search_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = threshold_at(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = threshold_at(std::exp(x2));
    }
    double fbest = std::min(f1, f2);
    double xbest = (f1 <= f2) ? x1 : x2;
    if (fbest < out.delta_star) {
      out.delta_star = fbest;
      out.omega_star = std::exp(xbest);
    }
  }
  return out;
}

ThresholdOrdering threshold_ordering_check(const SparsityModel& model,
                                           int grid, double tol) {
  ThresholdOrdering ord;
  ord.weak = delta_c(model, ThresholdKind::Weak, grid, tol).delta_c;
  ord.sectional = delta_c(model, ThresholdKind::Sectional, grid, tol).delta_c;
  ord.strong = delta_c(model, ThresholdKind::Strong, grid, tol).delta_c;
  const double slack = 1e-3;
  ord.ordered = ord.weak <= ord.sectional + slack &&
                ord.sectional <= ord.strong + slack;
  return ord;
}

RobustnessConstant robustness_constant(double eps1, double eps2, double p1,
                                       double p2) {
  if (!(eps1 >= 0.0 && eps1 <= 1.0) || !(eps2 >= 0.0 && eps2 <= 1.0)) {
    throw DomainError("robustness_constant: eps must lie in [0, 1]");
  }
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw DomainError("robustness_constant: p must lie in [0, 1]");
  }
  auto term = [](double eps, double p) {
    if (p >= 1.0) {
      return (eps == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return eps * p / (1.0 - p);
  };
  RobustnessConstant rc{eps1, eps2, p1, p2, 0.0, 0.0};
  rc.mu = std::min(term(eps1, p1), term(eps2, p2));
  if (!(rc.mu < 1.0)) {
    throw DomainError("robustness_constant: bound vacuous when mu >= 1");
  }
  rc.value = (1.0 + rc.mu) / (1.0 - rc.mu);
  return rc;
}

RobustnessCheck robustness_inequality_check(
    const Eigen::VectorXd& x0, const Eigen::VectorXd& xhat,
    const std::vector<int>& K1, const std::vector<int>& K2, double omega,
    double eps1, double eps2, double p1, double p2) {
  RobustnessConstant rc = robustness_constant(eps1, eps2, p1, p2);

  auto class_terms = [&](const std::vector<int>& K, double eps, double p,
                         double* err_norm, double* tail_norm) {
    *err_norm = 0.0;
    std::vector<double> mags;
    mags.reserve(K.size());
    for (int i : K) {
      *err_norm += std::fabs(x0[i] - xhat[i]);
      mags.push_back(std::fabs(x0[i]));
    }
    // Keep the (1 - eps) p |K| largest entries; the rest form the tail.
    auto keep = static_cast<std::size_t>(
        std::llround((1.0 - eps) * p * static_cast<double>(K.size())));
    keep = std::min(keep, mags.size());
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    *tail_norm = std::accumulate(mags.begin() + keep, mags.end(), 0.0);
  };

  double e1, t1, e2, t2;
  class_terms(K1, eps1, p1, &e1, &t1);
  class_terms(K2, eps2, p2, &e2, &t2);

  RobustnessCheck chk;
  chk.lhs = e1 + omega * e2;
  chk.rhs = rc.value * (t1 + omega * t2);
  chk.holds = chk.lhs <= chk.rhs * (1.0 + 1e-9) + 1e-12;
  return chk;
}

}  // namespace wl1
