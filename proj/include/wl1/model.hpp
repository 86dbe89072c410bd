#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wl1 {

enum class ThresholdKind { Weak, Sectional, Strong };

std::string to_string(ThresholdKind kind);
ThresholdKind threshold_kind_from_string(const std::string& name);

struct SignalClass {
  double gamma;  // fraction of indices in this class
  double p;      // fraction of those indices carrying a nonzero
  double omega;  // relative penalty weight on this class
};

// Partition of the index set into classes with per-class sparsity and
// penalty weight.  Fractions must sum to 1 (tolerance 1e-12), sparsities
// lie in [0, 1], weights are positive.  Weights are scale-free, so the
// model is stored with min omega normalized to 1.
class SparsityModel {
 public:
  explicit SparsityModel(std::vector<SignalClass> classes);

  std::size_t size() const { return classes_.size(); }
  const SignalClass& cls(std::size_t i) const { return classes_[i]; }
  const std::vector<SignalClass>& classes() const { return classes_; }

  // Total fraction of nonzero indices, sum of gamma_i p_i.
  double support_fraction() const;

 private:
  std::vector<SignalClass> classes_;
};

// Per-class fractions tau_i of extra support carried by each class; valid
// when 0 <= tau_i <= gamma_i (1 - p_i).
using FractionVector = std::vector<double>;

// Throws DomainError when tau does not match the model or leaves the box.
void validate_tau(const SparsityModel& model, const FractionVector& tau);

}  // namespace wl1

