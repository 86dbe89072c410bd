#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace wl1 {

// SplitMix64: tiny, fast, and good enough statistically for Monte-Carlo
// work.  Every stream in the library is keyed by a 64-bit seed produced by
// hashing (master seed, task coordinates), so results are independent of
// scheduling and worker count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]: never returns 0, so logs are always finite.
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Box-Muller pair; both values are consumed by callers that need bulk
  // normals, and normal() simply discards the second one so no hidden
  // cache state survives between calls.
  std::pair<double, double> normal_pair() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  double normal() { return normal_pair().first; }

 private:
  std::uint64_t state_;
};

// One round of SplitMix64 mixing used to derive substream seeds from a
// master seed and task coordinates; associative chaining is intentional:
// hash(hash(seed, i), j) keys cell (i, j).
inline std::uint64_t hash_seed(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (value + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Sample X ~ N(mu, 1) conditioned on X >= 0.  For mu >= 0 plain rejection
// from the untruncated normal accepts with probability >= 1/2.  For mu < 0
// uses Robert's translated-exponential rejection, which stays efficient
// however far the mean sits below the truncation point.
inline double truncated_normal_nonneg(Rng& rng, double mu) {
  if (mu >= 0.0) {
    for (;;) {
      double x = mu + rng.normal();
      if (x >= 0.0) return x;
    }
  }
  // Sample Z ~ N(0,1) | Z >= alpha with alpha = -mu > 0, return mu + Z.
  double alpha = -mu;
  double a = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
  for (;;) {
    double z = alpha - std::log(rng.uniform()) / a;
    double rho = std::exp(-0.5 * (z - a) * (z - a));
    if (rng.uniform() <= rho) return mu + z;
  }
}

}  // namespace wl1

