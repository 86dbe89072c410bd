#include "wl1/model.hpp"

#include <algorithm>
#include <cmath>

#include "wl1/error.hpp"

namespace wl1 {

std::string to_string(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::Weak:
      return "weak";
    case ThresholdKind::Sectional:
      return "sectional";
    case ThresholdKind::Strong:
      return "strong";
  }
  return "weak";
}

ThresholdKind threshold_kind_from_string(const std::string& name) {
  if (name == "weak") return ThresholdKind::Weak;
  if (name == "sectional") return ThresholdKind::Sectional;
  if (name == "strong") return ThresholdKind::Strong;
  throw DomainError("unknown threshold kind: " + name);
}

SparsityModel::SparsityModel(std::vector<SignalClass> classes)
    : classes_(std::move(classes)) {
  if (classes_.empty()) {
    throw DomainError("model needs at least one class");
  }
  double gamma_sum = 0.0;
  double min_omega = 0.0;
  bool first = true;
  for (const SignalClass& c : classes_) {
    if (!(c.gamma >= 0.0) || !std::isfinite(c.gamma)) {
      throw DomainError("class fractions must be nonnegative");
    }
    if (!(c.p >= 0.0 && c.p <= 1.0)) {
      throw DomainError("sparsity fractions must lie in [0, 1]");
    }
    if (!(c.omega > 0.0) || !std::isfinite(c.omega)) {
      throw DomainError("weights must be positive");
    }
    gamma_sum += c.gamma;
    min_omega = first ? c.omega : std::min(min_omega, c.omega);
    first = false;
  }
  if (std::fabs(gamma_sum - 1.0) > 1e-12) {
    throw DomainError("class fractions must sum to 1");
  }
  // Weights only matter up to a common scale; store min omega = 1.
  for (SignalClass& c : classes_) c.omega /= min_omega;
}

double SparsityModel::support_fraction() const {
  double s = 0.0;
  for (const SignalClass& c : classes_) s += c.gamma * c.p;
  return s;
}

void validate_tau(const SparsityModel& model, const FractionVector& tau) {
  if (tau.size() != model.size()) {
    throw DomainError("tau length must equal the class count");
  }
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const SignalClass& c = model.cls(i);
    double cap = c.gamma * (1.0 - c.p);
    if (!(tau[i] >= 0.0) || tau[i] > cap + 1e-15) {
      throw DomainError("tau_i must lie in [0, gamma_i (1 - p_i)]");
    }
  }
}

}  // namespace wl1
