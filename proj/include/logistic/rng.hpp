#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace logistic {

/// Seed for replicate `stream` of a run with master seed `master`: a
/// SplitMix64 finaliser applied to the (master, stream) counter. Depends only
/// on its arguments, so replicate streams do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  double normal() { return normal_(engine_); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Calls task(i) for i in [0, n) on `threads` workers. Each index runs exactly
/// once; callers write results into slot i so that aggregation order is fixed.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace logistic
