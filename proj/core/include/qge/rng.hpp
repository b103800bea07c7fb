#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace qge {

// Counter-based pseudorandom generator (splitmix64 finalizer over
// key + counter * odd constant). Output stream depends only on
// (seed, counter), so forked sub-streams reproduce bit-for-bit whether
// trials run serially or in parallel. Never use std:: distributions on
// top of this: their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64() { return mix(key_ + (++ctr_) * kGamma); }

  // 53-bit uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
  }

  // Box-Muller; one spare value cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // probability vector ~ Dirichlet(1,...,1), i.e. uniform on the simplex
  std::vector<double> dirichlet_uniform(std::size_t m) {
    std::vector<double> x(m);
    double total = 0.0;
    for (auto& v : x) {
      v = -std::log1p(-next_double());
      total += v;
    }
    for (auto& v : x) v /= total;
    return x;
  }

  // Independent sub-stream; deterministic in (parent key, stream id).
  Rng fork(std::uint64_t stream) const {
    return Rng(mix(key_ ^ mix(stream + 0x632be59bd9b4e019ULL)));
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qge
