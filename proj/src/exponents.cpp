#include "wl1/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "wl1/error.hpp"
#include "wl1/kernels.hpp"

namespace wl1 {

namespace {
constexpr double kLog2 = 0.69314718055994530941723212146;

// Roundoff guard: the exponents are nonnegative by construction, so tiny
// negative results are zeroed while anything genuinely negative is
// returned as computed for the tests to catch.
double clamp_tiny_negative(double v) {
  return (v < 0.0 && v > -1e-9) ? 0.0 : v;
}
}  // namespace

double psi_com(const SparsityModel& model, const FractionVector& tau,
               ThresholdKind kind) {
  validate_tau(model, tau);
  double value = 0.0;
  double lambda = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const SignalClass& c = model.cls(i);
    double cap = c.gamma * (1.0 - c.p);
    lambda += tau[i];
    if (cap > 0.0) {
      value += cap * entropy(std::min(tau[i] / cap, 1.0));
    }
  }
  // Each of the lambda*n extra coordinates carries a free sign.
  value += lambda * kLog2;
  if (kind != ThresholdKind::Weak) {
    // Count the supports themselves, not just one random draw.
    for (std::size_t i = 0; i < model.size(); ++i) {
      const SignalClass& c = model.cls(i);
      value += c.gamma * entropy(c.p);
    }
  }
  if (kind == ThresholdKind::Strong) {
    // And every sign pattern on the support.
    for (std::size_t i = 0; i < model.size(); ++i) {
      const SignalClass& c = model.cls(i);
      value += c.gamma * c.p * kLog2;
    }
  }
  return value;
}

ExternalExponent psi_ext(const SparsityModel& model,
                         const FractionVector& tau) {
  validate_tau(model, tau);
  const std::size_t u = model.size();
  double c_sum = 0.0;
  std::vector<double> alpha(u);
  bool any_alpha = false;
  for (std::size_t i = 0; i < u; ++i) {
    const SignalClass& cl = model.cls(i);
    c_sum += cl.omega * cl.omega * (tau[i] + cl.gamma * cl.p);
    alpha[i] = std::max(cl.gamma * (1.0 - cl.p) - tau[i], 0.0);
    if (alpha[i] > 0.0) any_alpha = true;
  }
  if (!any_alpha) return {0.0, 0.0};
  if (!(c_sum > 0.0)) {
    throw DomainError("psi_ext: needs sum omega_i^2 (tau_i + gamma_i p_i) > 0");
  }

  auto stationarity = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < u; ++i) {
      if (alpha[i] == 0.0) continue;
      double w = model.cls(i).omega;
      double z = w * x;
      s += alpha[i] * w * half_normal_density(z) / (x * erf_scaled(z));
    }
    return 2.0 * c_sum - s;
  };

  double x0;
  try {
    x0 = find_root(stationarity, {1e-12, 1.0}, 1e-12);
  } catch (const NoSignChange& e) {
    throw RootFailure(std::string("psi_ext: ") + e.what());
  } catch (const NonFinite& e) {
    throw RootFailure(std::string("psi_ext: ") + e.what());
  }

  double value = c_sum * x0 * x0;
  for (std::size_t i = 0; i < u; ++i) {
    if (alpha[i] == 0.0) continue;
    value -= alpha[i] * std::log(erf_scaled(model.cls(i).omega * x0));
  }
  return {clamp_tiny_negative(value), x0};
}

InternalExponent psi_int(const SparsityModel& model,
                         const FractionVector& tau) {
  validate_tau(model, tau);
  const std::size_t u = model.size();
  double lambda = 0.0;
  for (double t : tau) lambda += t;
  if (lambda <= 0.0) return {0.0, 0.0, 0.0};

  double omega_prime = 0.0;
  double b_num = 0.0;
  for (std::size_t i = 0; i < u; ++i) {
    const SignalClass& cl = model.cls(i);
    omega_prime += cl.omega * cl.omega * cl.gamma * cl.p;
    b_num += cl.omega * cl.omega * tau[i];
  }
  if (!(omega_prime > 0.0)) {
    throw DomainError(
        "psi_int: stationarity degenerates when sum omega_i^2 gamma_i p_i "
        "is 0 with sum tau_i > 0");
  }
  double b = b_num / lambda;
  double target = lambda / (lambda * b + omega_prime);

  // Mhat(s) = -s / Q(s) with Q(s) = sum_i omega_i tau_i phi(omega_i s) /
  // (lambda Phi(omega_i s)); Mhat rises from 0 toward 1/b as s goes to
  // -infinity, and target < 1/b strictly, so a sign change always exists.
  auto mhat_gap = [&](double s) {
    double q = 0.0;
    for (std::size_t i = 0; i < u; ++i) {
      if (tau[i] <= 0.0) continue;
      double w = model.cls(i).omega;
      q += w * tau[i] * normal_pdf_over_cdf(w * s);
    }
    q /= lambda;
    return -s / q - target;
  };

  double s_star;
  try {
    s_star = find_root(mhat_gap, {-1.0, -1e-12}, 1e-12);
  } catch (const NoSignChange& e) {
    throw RootFailure(std::string("psi_int: ") + e.what());
  } catch (const NonFinite& e) {
    throw RootFailure(std::string("psi_int: ") + e.what());
  }

  // At the root, s*(b - 1/Mhat(s*)) reduces to -(omega_prime/lambda) s*;
  // the reduced form stays accurate when omega_prime << lambda b, where
  // the direct difference would cancel.
  double y = -(omega_prime / lambda) * s_star;

  double mgf_sum = 0.0;
  for (std::size_t i = 0; i < u; ++i) {
    if (tau[i] <= 0.0) continue;
    mgf_sum += tau[i] * log_mgf_abs_normal(model.cls(i).omega * s_star);
  }
  double rate = s_star * y - mgf_sum / lambda;
  double value =
      lambda * (rate + lambda * y * y / (2.0 * omega_prime) + kLog2);
  return {clamp_tiny_negative(value), s_star, y};
}

ExponentPoint psi_tot(const SparsityModel& model, const FractionVector& tau,
                      ThresholdKind kind) {
  ExponentPoint pt;
  pt.psi_com = psi_com(model, tau, kind);
  ExternalExponent ext = psi_ext(model, tau);
  InternalExponent in = psi_int(model, tau);
  pt.psi_ext = ext.value;
  pt.psi_int = in.value;
  pt.psi_tot = pt.psi_com - pt.psi_int - pt.psi_ext;

  ExponentWitness& w = pt.witness;
  w.x0 = ext.x0;
  w.s_star = in.s_star;
  w.y = in.y;
  w.lambda = 0.0;
  for (double t : tau) w.lambda += t;
  w.alpha.resize(model.size());
  w.c = 0.0;
  w.omega_prime = 0.0;
  double b_num = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const SignalClass& cl = model.cls(i);
    w.alpha[i] = std::max(cl.gamma * (1.0 - cl.p) - tau[i], 0.0);
    w.c += cl.omega * cl.omega * (tau[i] + cl.gamma * cl.p);
    w.omega_prime += cl.omega * cl.omega * cl.gamma * cl.p;
    b_num += cl.omega * cl.omega * tau[i];
  }
  w.b = (w.lambda > 0.0) ? b_num / w.lambda : 0.0;
  return pt;
}

}  // namespace wl1
