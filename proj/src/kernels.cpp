#include "wl1/kernels.hpp"

#include <cmath>
#include <limits>

#include "wl1/error.hpp"

namespace wl1 {

namespace {
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993;
constexpr double kInvSqrtPi = 0.56418958354775628694807945156;
constexpr double kSqrt2OverPi = 0.79788456080286535587989211986;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210;
}  // namespace

double erf_scaled(double x) { return std::erf(x); }

double half_normal_density(double x) {
  if (x < 0.0) return 0.0;
  return kTwoOverSqrtPi * std::exp(-x * x);
}

PdfCdf std_normal_pdf_cdf(double x) {
  PdfCdf out;
  out.pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  out.cdf = 0.5 * std::erfc(-x * kInvSqrt2);
  return out;
}

double entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("entropy: argument must lie in [0, 1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

double erfcx_nonneg(double x) {
  if (x < 0.0) throw DomainError("erfcx_nonneg: argument must be >= 0");
  if (x < 3.0) {
    // erfc(x) is >= 2e-5 here, so the explicit product cannot underflow
    // and the exp amplifies relative error by at most x^2 ~ 9 ulps.
    return std::exp(x * x) * std::erfc(x);
  }
  // Modified Lentz evaluation of the Laplace continued fraction
  //   erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // which converges in a few dozen terms for x >= 3.
  const double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n <= 80; ++n) {
    double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return kInvSqrtPi / f;
}

double log_mgf_abs_normal(double s) {
  if (s <= 0.0) {
    // s^2/2 + log(2 Phi(s)) collapses to log erfcx(-s/sqrt(2)) exactly,
    // avoiding the underflow in Phi and the cancellation with s^2/2.
    return std::log(erfcx_nonneg(-s * kInvSqrt2));
  }
  // 2 Phi(s) = erfc(-s/sqrt(2)) lies in (1, 2): safe to evaluate directly.
  return 0.5 * s * s + std::log(std::erfc(-s * kInvSqrt2));
}

double normal_pdf_over_cdf(double s) {
  if (s <= 0.0) {
    return kSqrt2OverPi / erfcx_nonneg(-s * kInvSqrt2);
  }
  PdfCdf pc = std_normal_pdf_cdf(s);
  return pc.pdf / pc.cdf;
}

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
  double v = f(x);
  if (!std::isfinite(v)) {
    throw NonFinite("find_root: objective evaluated to a non-finite value");
  }
  return v;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Move an endpoint geometrically outward without letting it cross zero,
// so that brackets confined to one sign of the axis stay in-domain.
double widen_low(double lo, double width) {
  if (lo > 0.0) return 0.5 * lo;
  if (lo < 0.0) return 2.0 * lo;
  return lo - width;
}

double widen_high(double hi, double width) {
  if (hi > 0.0) return 2.0 * hi;
  if (hi < 0.0) return 0.5 * hi;
  return hi + width;
}

}  // namespace

double find_root(const std::function<double(double)>& f, Bracket bracket,
                 double tol) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  if (!(lo < hi)) throw DomainError("find_root: bracket requires lo < hi");
  double flo = eval_checked(f, lo);
  double fhi = eval_checked(f, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  const double width0 = hi - lo;
  for (int i = 0; i < 60 && sign_of(flo) == sign_of(fhi); ++i) {
    lo = widen_low(lo, width0);
    hi = widen_high(hi, width0);
    flo = eval_checked(f, lo);
    fhi = eval_checked(f, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
  }
  if (sign_of(flo) == sign_of(fhi)) {
    throw NoSignChange("find_root: no sign change after bracket expansion");
  }

  const double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    double width = hi - lo;
    if (width <= tol) break;
    if (width <= 8.0 * eps * std::max({1.0, std::fabs(lo), std::fabs(hi)}))
      break;

    double mid = 0.5 * (lo + hi);
    double fmid = eval_checked(f, mid);
    if (fmid == 0.0) return mid;

    // Ridders' exponential interpolation through (lo, mid, hi).
    double disc = fmid * fmid - flo * fhi;
    double xr;
    double fxr;
    if (disc > 0.0) {
      double step = (mid - lo) * fmid / std::sqrt(disc);
      xr = (flo >= fhi) ? mid + step : mid - step;
      fxr = eval_checked(f, xr);
      if (fxr == 0.0) return xr;
    } else {
      xr = mid;
      fxr = fmid;
    }

    // Keep the tightest sub-bracket that still straddles the root.
    double a = std::min(mid, xr), fa = (mid <= xr) ? fmid : fxr;
    double b = std::max(mid, xr), fb = (mid <= xr) ? fxr : fmid;
    if (sign_of(fa) != sign_of(fb)) {
      lo = a;
      flo = fa;
      hi = b;
      fhi = fb;
    } else if (sign_of(flo) != sign_of(fa)) {
      hi = a;
      fhi = fa;
    } else {
      lo = b;
      flo = fb;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wl1
