#pragma once

#include <functional>

namespace wl1 {

struct Bracket {
  double lo;
  double hi;
};

struct PdfCdf {
  double pdf;
  double cdf;
};

// G(x) = (2/sqrt(pi)) * integral_0^x exp(-y^2) dy, extended to x < 0 by
// oddness.  Monotone increasing with limits -1 and 1.
double erf_scaled(double x);

// g(x) = (2/sqrt(pi)) exp(-x^2) for x >= 0, zero for x < 0.
double half_normal_density(double x);

// Standard Gaussian pdf and cdf evaluated together.
PdfCdf std_normal_pdf_cdf(double x);

// Natural-log binary entropy H(x) = -x log x - (1-x) log(1-x), with
// H(0) = H(1) = 0 by continuity.  Throws DomainError outside [0, 1].
double entropy(double x);

// Scaled complementary error function exp(x^2) erfc(x) for x >= 0.
// Direct product below x = 3, Lentz continued fraction above; the switch
// keeps relative error ~1e-14 across the range.
double erfcx_nonneg(double x);

// log E[exp(s|Z|)] for Z standard normal: s^2/2 + log(2 Phi(s)).
// For s <= 0 evaluated as log erfcx(-s/sqrt(2)), which has no cancellation
// however negative s gets.
double log_mgf_abs_normal(double s);

// phi(s)/Phi(s), the Gaussian pdf-to-cdf ratio, stable for s << 0 where
// both factors underflow: sqrt(2/pi)/erfcx(-s/sqrt(2)).
double normal_pdf_over_cdf(double s);

// Bracketed root finding: verifies a sign change (expanding the bracket
// geometrically, up to 60 doublings, away from zero-preserving endpoints
// when none is present), then drives the bracket below tol width with
// Ridders' method, falling back to bisection steps whenever the
// accelerated point leaves the bracket.  Deterministic.
// Throws NoSignChange / NonFinite.
double find_root(const std::function<double(double)>& f, Bracket bracket,
                 double tol);

}  // namespace wl1

