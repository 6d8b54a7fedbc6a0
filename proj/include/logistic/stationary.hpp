#pragma once

#include <cstdint>
#include <vector>

#include "logistic/chain_model.hpp"

namespace logistic {

// Invariant law of the modified chain on {0, ..., n_max}, in log space:
//   pi(x) = exp(log_weights[x] - log_norm),
//   log_weights[x+1] = log_weights[x] + log beta_x - log alpha_{x+1}.
struct StationaryLaw {
  ChainParams params;
  State n_max = 0;
  std::vector<double> log_weights;
  double log_norm = 0.0;
  // Upper bound on the invariant mass above n_max.
  double tail_bound = 0.0;

  double log_pi(State x) const;
  double pi(State x) const;
  std::vector<double> probabilities() const;
  State argmax() const;
};

/// sum_{j<x} log beta_j - sum_{j=1..x} log alpha_j. Modified chain only.
double log_stationary_weight(const ChainParams& params, State x);

/// Truncates at the smallest n_max >= 2 n* where beta/alpha drops below 1/2,
/// then extends until the geometric tail bound is below tail_tol.
StationaryLaw build_stationary(const ChainParams& params, double tail_tol = 1e-12);

/// Gaussian density with variance L b / gamma at offset k from the mode.
double local_clt_density(const ChainParams& params, double k);

/// f(z) = (1+z) log(1+z) - z = int_0^z log(1+x) dx, for z > -1.
double ld_f(double z);

/// (b / gamma) f(delta gamma / b): decay rate of log pi(n* + delta L) per unit L.
double ld_rate(const ChainParams& params, double delta);

/// (1/omega + r + 1/2) log(1 + r omega) - r, the Euler-Maclaurin estimate of
/// sum_{k=0}^{r} log(1 + omega k).
double euler_maclaurin_log_product(std::int64_t r, double omega);

}  // namespace logistic
