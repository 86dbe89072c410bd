#include "wl1/exact_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wl1/error.hpp"
#include "wl1/kernels.hpp"
#include "wl1/lp.hpp"
#include "wl1/rng.hpp"

namespace wl1 {

const char* to_string(NullSpaceVerdict v) {
  switch (v) {
    case NullSpaceVerdict::Holds: return "Holds";
    case NullSpaceVerdict::Violated: return "Violated";
    case NullSpaceVerdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981674833;
constexpr double kLnSqrtPi = 0.57236494292470008707171367568;
constexpr double kLn2 = 0.69314718055994530941723212146;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210;
constexpr double kHalfPi = 1.5707963267948966192313216916;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double ln_erf(double z) {
  if (z <= 0.0) return kNegInf;
  if (z < 0.5) return std::log(std::erf(z));
  return std::log1p(-std::erfc(z));
}

struct SimpsonState {
  long evals = 0;
  bool converged = true;
};

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth,
                   SimpsonState* st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  st->evals += 2;
  if (st->evals > 2'000'000) {
    throw QuadratureFailure("external_angle: evaluation budget exhausted");
  }
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) {
    st->converged = false;
    return left + right + err / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        SimpsonState* st) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  st->evals += 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48, st);
}

double lchoose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

void validate_face(const FacePair& p) {
  if (p.k1 < 0 || p.k2 < 0 || p.t1 < 0 || p.t2 < 0 || p.n1 < 0 || p.n2 < 0) {
    throw DomainError("face counts must be nonnegative");
  }
  if (p.k1 + p.t1 > p.n1 || p.k2 + p.t2 > p.n2) {
    throw DomainError("face exceeds its coordinate block");
  }
  if (!(p.w1 > 0.0) || !(p.w2 > 0.0)) {
    throw DomainError("face weights must be positive");
  }
}

}  // namespace

ExternalAngle external_angle(const FacePair& pair) {
  validate_face(pair);
  const int r1 = pair.n1 - pair.k1 - pair.t1;
  const int r2 = pair.n2 - pair.k2 - pair.t2;
  if (r1 == 0 && r2 == 0) {
    // The integrand collapses to exp(-x^2): the angle of a full face.
    return {0.5, -kLn2};
  }
  const double xi2 = (pair.k1 + pair.t1) * pair.w1 * pair.w1 +
                     (pair.k2 + pair.t2) * pair.w2 * pair.w2;
  if (!(xi2 > 0.0)) {
    throw DomainError("external_angle: face has no support mass");
  }
  const double s1 = pair.w1 / std::sqrt(xi2);
  const double s2 = pair.w2 / std::sqrt(xi2);

  auto log_integrand = [&](double theta) {
    const double ct = std::cos(theta);
    if (ct <= 0.0) return kNegInf;
    const double x = std::tan(theta);
    double v = -x * x - 2.0 * std::log(ct);
    if (r1 > 0) v += r1 * ln_erf(s1 * x);
    if (r2 > 0) v += r2 * ln_erf(s2 * x);
    return v;
  };

  // Locate the peak on a coarse grid, then integrate the normalized
  // integrand, splitting at the peak so the recursion starts balanced.
  const int kScan = 2048;
  double peak = kNegInf;
  double theta_star = 0.5 * kHalfPi;
  for (int j = 0; j < kScan; ++j) {
    const double theta = kHalfPi * (j + 0.5) / kScan;
    const double v = log_integrand(theta);
    if (v > peak) {
      peak = v;
      theta_star = theta;
    }
  }
  if (!std::isfinite(peak)) {
    throw QuadratureFailure("external_angle: integrand vanished everywhere");
  }

  auto h = [&](double theta) {
    const double v = log_integrand(theta);
    return std::isfinite(v) ? std::exp(v - peak) : 0.0;
  };
  SimpsonState st;
  const double s = adaptive_simpson(h, 0.0, theta_star, 1e-13, &st) +
                   adaptive_simpson(h, theta_star, kHalfPi, 1e-13, &st);
  if (!st.converged || !(s > 0.0) || !std::isfinite(s)) {
    throw QuadratureFailure("external_angle: quadrature did not converge");
  }
  ExternalAngle out;
  out.log_value = peak + std::log(s) - kLnSqrtPi;
  out.value = std::exp(out.log_value);
  return out;
}

AngleEstimate internal_angle(const FacePair& pair, int mc_samples,
                             std::uint64_t seed) {
  validate_face(pair);
  const int t_total = pair.t1 + pair.t2;
  if (t_total == 0) return {1.0, 0.0, 0.0, 0.0};
  if (mc_samples <= 1) {
    throw DomainError("internal_angle: needs at least 2 samples");
  }
  const double a =
      pair.k1 * pair.w1 * pair.w1 + pair.k2 * pair.w2 * pair.w2;
  if (!(a > 0.0)) {
    throw DomainError("internal_angle: face needs support mass");
  }
  const double log_c0 =
      kLnSqrtPi - t_total * kLn2 +
      0.5 * std::log((pair.k1 + pair.t1) * pair.w1 * pair.w1 +
                     (pair.k2 + pair.t2) * pair.w2 * pair.w2);

  // Tilt so the sampler concentrates where the Gaussian factor peaks:
  // shift the half-normal block means until E[S] = -a s / 2.
  const double v1 = pair.w1 * kInvSqrt2;
  const double v2 = pair.w2 * kInvSqrt2;
  auto mean_gap = [&](double s) {
    double e = 0.0;
    if (pair.t1 > 0) {
      const double u = s * v1;
      e += v1 * pair.t1 * (u + normal_pdf_over_cdf(u));
    }
    if (pair.t2 > 0) {
      const double u = s * v2;
      e += v2 * pair.t2 * (u + normal_pdf_over_cdf(u));
    }
    return e + 0.5 * a * s;
  };
  const double s_tilt = find_root(mean_gap, {-4.0, -1e-8}, 1e-10);
  const double u1 = s_tilt * v1;
  const double u2 = s_tilt * v2;
  const double c_norm = pair.t1 * log_mgf_abs_normal(u1) +
                        pair.t2 * log_mgf_abs_normal(u2);
  // Log weight at the dominant point S* = -a s / 2; ratios are taken
  // against it so the accumulator stays O(1).
  const double base = 0.25 * a * s_tilt * s_tilt + c_norm;

  Rng rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (int it = 0; it < mc_samples; ++it) {
    double s_val = 0.0;
    for (int j = 0; j < pair.t1; ++j) {
      s_val += v1 * truncated_normal_nonneg(rng, u1);
    }
    for (int j = 0; j < pair.t2; ++j) {
      s_val += v2 * truncated_normal_nonneg(rng, u2);
    }
    const double lw = -s_val * s_val / a - s_tilt * s_val + c_norm;
    const double r = std::exp(lw - base);
    const double d = r - mean;
    mean += d / (it + 1);
    m2 += d * (r - mean);
  }
  if (!(mean > 0.0)) {
    throw InsufficientSamples("internal_angle: degenerate sample mean");
  }
  const double var = m2 / (mc_samples - 1.0);
  const double rel = std::sqrt(var / mc_samples) / mean;

  AngleEstimate out;
  out.log_estimate = log_c0 - 0.5 * (std::log(a) + 2.0 * kLnSqrtPi) + base +
                     std::log(mean);
  out.estimate = std::exp(out.log_estimate);
  out.log_std_err = rel;
  out.std_err = out.estimate * rel;
  if (rel > 0.05) {
    throw InsufficientSamples(
        "internal_angle: relative error " + std::to_string(rel) +
        " exceeds 5%; increase mc_samples");
  }
  return out;
}

FailureBound failure_bound(const FiniteModel& fm, int mc_samples,
                           std::uint64_t seed, bool parity_restricted) {
  if (fm.n != fm.n1 + fm.n2) {
    throw DomainError("failure_bound: n must equal n1 + n2");
  }
  if (fm.n > 80) {
    throw DomainError("failure_bound: exact accounting is limited to n <= 80");
  }
  if (fm.k1 < 0 || fm.k1 > fm.n1 || fm.k2 < 0 || fm.k2 > fm.n2) {
    throw DomainError("failure_bound: support exceeds block");
  }
  if (fm.m <= 0 || fm.m >= fm.n) {
    throw DomainError("failure_bound: need 0 < m < n");
  }
  if (!(fm.w1 > 0.0) || !(fm.w2 > 0.0)) {
    throw DomainError("failure_bound: weights must be positive");
  }

  const int floor_t = fm.m - fm.k1 - fm.k2 + 1;  // keep t1 + t2 > floor_t
  FailureBound out;
  for (int t1 = 0; t1 <= fm.n1 - fm.k1; ++t1) {
    for (int t2 = 0; t2 <= fm.n2 - fm.k2; ++t2) {
      const int tt = t1 + t2;
      if (tt <= floor_t) continue;
      if (parity_restricted && (tt - floor_t - 1) % 2 != 0) continue;

      FacePair fp{fm.k1, fm.k2, t1, t2, fm.n1, fm.n2, fm.w1, fm.w2};
      const std::uint64_t term_seed = hash_seed(hash_seed(seed, t1), t2);
      const AngleEstimate beta = internal_angle(fp, mc_samples, term_seed);
      const ExternalAngle zeta = external_angle(fp);

      BoundTerm term;
      term.t1 = t1;
      term.t2 = t2;
      term.log_coeff = (tt + 1) * kLn2 + lchoose(fm.n1 - fm.k1, t1) +
                       lchoose(fm.n2 - fm.k2, t2);
      term.log_internal = beta.log_estimate;
      term.log_external = zeta.log_value;
      term.log_term = term.log_coeff + term.log_internal + term.log_external;
      term.term = std::exp(term.log_term);
      term.internal_rel_err = beta.log_std_err;
      out.raw += term.term;
      out.terms.push_back(term);
    }
  }
  out.clamped = out.raw > 1.0;
  out.bound = out.clamped ? 1.0 : out.raw;
  return out;
}

namespace {

// Minimal objective of the sign-pattern program
//   min sum_{i in Kbar} w_i u_i
//   s.t. u >= +-(N v) on Kbar,
//        sum_{i in K} w_i sigma_i (N v)_i + sum_{i in Kbar} w_i u_i = 1.
// Values below 1/2 certify a violating null vector for this pattern.
struct PatternResult {
  LpStatus status;
  double value;
  Eigen::VectorXd z;
};

PatternResult solve_pattern(const Eigen::MatrixXd& nullbasis,
                            const std::vector<int>& K,
                            const std::vector<int>& Kbar,
                            const Eigen::VectorXd& w,
                            const std::vector<int>& sigma) {
  const int d = static_cast<int>(nullbasis.cols());
  const int q = static_cast<int>(Kbar.size());
  const int rows = 2 * q + 1;
  const int cols = 2 * d + 3 * q;  // v+, v-, u, slack1, slack2

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);

  for (int r = 0; r < q; ++r) {
    const int i = Kbar[r];
    // u_i - (N v)_i - s1 = 0
    A.block(r, 0, 1, d) = -nullbasis.row(i);
    A.block(r, d, 1, d) = nullbasis.row(i);
    A(r, 2 * d + r) = 1.0;
    A(r, 2 * d + q + r) = -1.0;
    // u_i + (N v)_i - s2 = 0
    A.block(q + r, 0, 1, d) = nullbasis.row(i);
    A.block(q + r, d, 1, d) = -nullbasis.row(i);
    A(q + r, 2 * d + r) = 1.0;
    A(q + r, 2 * d + 2 * q + r) = -1.0;
    c[2 * d + r] = w[i];
  }
  for (std::size_t s = 0; s < K.size(); ++s) {
    const int i = K[s];
    const double coef = w[i] * sigma[s];
    A.block(rows - 1, 0, 1, d) += coef * nullbasis.row(i);
    A.block(rows - 1, d, 1, d) -= coef * nullbasis.row(i);
  }
  for (int r = 0; r < q; ++r) A(rows - 1, 2 * d + r) = w[Kbar[r]];
  b[rows - 1] = 1.0;

  LpResult lp = solve_lp(A, b, c);
  PatternResult pr{lp.status, 0.0, Eigen::VectorXd()};
  if (lp.status == LpStatus::Optimal) {
    pr.value = lp.objective;
    pr.z = nullbasis * (lp.x.head(d) - lp.x.segment(d, d));
  }
  return pr;
}

}  // namespace

NullSpaceReport null_space_condition_check(const Eigen::MatrixXd& A,
                                           const std::vector<int>& K,
                                           const Eigen::VectorXd& weights,
                                           int trials, std::uint64_t seed) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (weights.size() != n) {
    throw DomainError("null_space_condition_check: weight length mismatch");
  }
  std::vector<char> inK(n, 0);
  for (int i : K) {
    if (i < 0 || i >= n) {
      throw DomainError("null_space_condition_check: index out of range");
    }
    if (inK[i]) {
      throw DomainError("null_space_condition_check: duplicate index");
    }
    inK[i] = 1;
  }

  NullSpaceReport rep;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rk(A);
  rk.setThreshold(1e-10);
  const int rank = static_cast<int>(rk.rank());
  if (rank == n) {
    rep.verdict = NullSpaceVerdict::Holds;
    rep.exact = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    return rep;
  }
  if (rank < std::min(m, n)) {
    throw RankDeficient("null_space_condition_check: rank " +
                        std::to_string(rank) + " < " +
                        std::to_string(std::min(m, n)));
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> hqr(A.transpose());
  Eigen::MatrixXd Q = hqr.householderQ();
  Eigen::MatrixXd nullbasis = Q.rightCols(n - m);

  if (K.empty()) {
    rep.verdict = NullSpaceVerdict::Holds;
    rep.exact = true;
    rep.worst_margin = 1.0;
    return rep;
  }
  std::vector<int> Kbar;
  for (int i = 0; i < n; ++i) {
    if (!inK[i]) Kbar.push_back(i);
  }

  const std::size_t ksize = K.size();
  if (ksize <= 12) {
    // Certify every sign pattern; z -> -z halves the enumeration.
    rep.exact = true;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    bool all_solved = true;
    std::vector<int> sigma(ksize, 1);
    const std::uint64_t patterns = 1ull << (ksize - 1);
    for (std::uint64_t bits = 0; bits < patterns; ++bits) {
      for (std::size_t s = 1; s < ksize; ++s) {
        sigma[s] = (bits >> (s - 1)) & 1 ? -1 : 1;
      }
      PatternResult pr = solve_pattern(nullbasis, K, Kbar, weights, sigma);
      if (pr.status == LpStatus::Infeasible) continue;  // scale unreachable
      if (pr.status != LpStatus::Optimal) {
        all_solved = false;
        continue;
      }
      const double margin = 2.0 * pr.value - 1.0;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      if (margin < -1e-9) {
        rep.verdict = NullSpaceVerdict::Violated;
        rep.witness = pr.z;
        return rep;
      }
    }
    if (!all_solved) {
      rep.exact = false;
      rep.verdict = NullSpaceVerdict::Undetermined;
      return rep;
    }
    rep.verdict = NullSpaceVerdict::Holds;
    return rep;
  }

  // Large support: random null directions, then one LP polish on the sign
  // pattern of the worst direction found.
  Rng rng(seed);
  rep.exact = false;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  Eigen::VectorXd worst_z;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    Eigen::VectorXd g(n - m);
    for (int j = 0; j < n - m; ++j) g[j] = rng.normal();
    Eigen::VectorXd z = nullbasis * g;
    double on = 0.0, off = 0.0;
    for (int i = 0; i < n; ++i) {
      (inK[i] ? on : off) += weights[i] * std::fabs(z[i]);
    }
    const double total = on + off;
    if (!(total > 0.0)) continue;
    const double margin = (off - on) / total;
    if (margin < rep.worst_margin) {
      rep.worst_margin = margin;
      worst_z = z;
    }
  }
  if (worst_z.size() > 0) {
    std::vector<int> sigma;
    sigma.reserve(ksize);
    for (int i : K) sigma.push_back(worst_z[i] >= 0.0 ? 1 : -1);
    PatternResult pr = solve_pattern(nullbasis, K, Kbar, weights, sigma);
    if (pr.status == LpStatus::Optimal) {
      const double margin = 2.0 * pr.value - 1.0;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      if (margin < -1e-9) {
        rep.verdict = NullSpaceVerdict::Violated;
        rep.witness = pr.z;
        return rep;
      }
    }
  }
  if (rep.worst_margin < -1e-9) {
    rep.verdict = NullSpaceVerdict::Violated;
    rep.witness = worst_z;
    return rep;
  }
  rep.verdict = NullSpaceVerdict::Undetermined;
  return rep;
}

}  // namespace wl1
