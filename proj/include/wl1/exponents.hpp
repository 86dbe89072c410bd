#pragma once

#include <vector>

#include "wl1/model.hpp"

namespace wl1 {

// All three exponents are per-dimension rates in natural log.  The sign
// convention: a face-family's contribution to the failure union decays
// like exp(n * psi_tot) with psi_tot = psi_com - psi_int - psi_ext, so
// recovery needs psi_tot < 0 over the whole feasible tau region.

struct ExternalExponent {
  double value;  // psi_ext >= 0
  double x0;     // stationary point of the dual integrand, 0 when value is 0
};

struct InternalExponent {
  double value;   // psi_int >= 0
  double s_star;  // saddle of the shifted half-normal cumulant, 0 at tau = 0
  double y;       // conjugate point fed to the rate function
};

struct ExponentWitness {
  double x0 = 0.0;
  double s_star = 0.0;
  double y = 0.0;
  double b = 0.0;
  double omega_prime = 0.0;        // sum omega_i^2 gamma_i p_i
  double c = 0.0;                  // sum omega_i^2 (tau_i + gamma_i p_i)
  double lambda = 0.0;             // sum tau_i
  std::vector<double> alpha;       // gamma_i (1 - p_i) - tau_i per class
};

struct ExponentPoint {
  double psi_com;
  double psi_int;
  double psi_ext;
  double psi_tot;
  ExponentWitness witness;
};

// Exponent of the number of candidate support/sign configurations at
// extra-support fractions tau.  Weak counts one random support with random
// signs; Sectional adds the count of supports; Strong additionally counts
// the sign patterns on the support.
double psi_com(const SparsityModel& model, const FractionVector& tau,
               ThresholdKind kind);

// Decay exponent of the external angle along fixed fractions.  Returns
// (0, 0) when every alpha_i is zero (the face is the whole orthant slice).
ExternalExponent psi_ext(const SparsityModel& model,
                         const FractionVector& tau);

// Decay exponent of the internal angle along fixed fractions.  Returns
// zeros when lambda = sum tau_i is 0.  Throws DomainError when the
// stationarity system degenerates (omega_prime = 0 with lambda > 0).
InternalExponent psi_int(const SparsityModel& model,
                         const FractionVector& tau);

// Combined evaluation with the diagnostic witness record.
ExponentPoint psi_tot(const SparsityModel& model, const FractionVector& tau,
                      ThresholdKind kind);

}  // namespace wl1

