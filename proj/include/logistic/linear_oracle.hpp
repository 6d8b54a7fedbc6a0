#pragma once

// Reference answers from generic linear solves on a truncated state space.
// The systems are solved by banded Gaussian elimination with partial pivoting
// in 100-digit arithmetic; no product or series formula for birth-death
// chains is used. These exist to check the closed-form paths and are only
// practical for a few thousand states.

#include <vector>

#include "logistic/chain_model.hpp"

namespace logistic::oracle {

/// Invariant law of the generator truncated to {0..n_max} (reflecting at
/// n_max), from the global balance equations with pi(0) pinned and then
/// normalised.
std::vector<double> stationary_by_linear_solve(const ChainParams& params, State n_max);

/// Mean hitting time of `target` from every x in [target, n_max]: solves
/// L u = -1 on (target, n_max] with u(target) = 0, reflecting at n_max.
/// Entry i holds u(target + i).
std::vector<double> hitting_times_by_linear_solve(const ChainParams& params, State target,
                                                  State n_max);

/// Mean exit time from (lower, upper): L u = -1 inside, u(lower) = u(upper) = 0.
/// Entry i holds u(lower + i).
std::vector<double> exit_times_by_linear_solve(const ChainParams& params, State lower,
                                               State upper);

/// Probability of leaving (lower, upper) through `upper`: L p = 0 inside,
/// p(lower) = 0, p(upper) = 1. Entry i holds p(lower + i).
std::vector<double> exit_upper_probability_by_linear_solve(const ChainParams& params,
                                                           State lower, State upper);

}  // namespace logistic::oracle
