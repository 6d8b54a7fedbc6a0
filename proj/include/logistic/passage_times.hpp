#pragma once

// Mean first-passage times of the modified chain.
//
// With S_y = 1 + beta_y/alpha_{y+1} + beta_y beta_{y+1}/(alpha_{y+1} alpha_{y+2}) + ...
// the mean time of one downward step is E tau_{y+1 -> y} = S_{y+1} / alpha_{y+1},
// and a passage x -> y is the sum of its steps. For these rates
// S_y = F(mu L / gamma + y + 1, b L / gamma).

#include <optional>
#include <string_view>
#include <vector>

#include "logistic/chain_model.hpp"
#include "logistic/log_math.hpp"
#include "logistic/special_functions.hpp"
#include "logistic/stationary.hpp"

namespace logistic {

enum class PassageMethod { SeriesExact, HypergeomAsymptotic, LinearSolveOracle, MonteCarlo };

std::string_view to_string(PassageMethod method);

struct PassageEstimate {
  double log_mean_time = 0.0;
  PassageMethod method = PassageMethod::SeriesExact;
  std::optional<double> std_error;  // MonteCarlo only, on the linear scale
  std::optional<RegimeTag> regime;

  double mean() const { return std::exp(log_mean_time); }
};

/// Parameter A with S_y = F(A, b L / gamma).
double s_series_parameter(const ChainParams& params, State y);

/// log S_y by direct summation of the chain's rate ratios. With verify set,
/// also evaluates F(A, bL/gamma) through hypergeom_series and throws
/// ConvergenceError if the two disagree by more than 1e-8 relative.
double log_S(const ChainParams& params, State y, bool verify = false, double rel_tol = 1e-15);

/// log S_y for y = y_lo..y_hi. The top value is summed directly and the rest
/// follow from S_y = 1 + (beta_y / alpha_{y+1}) S_{y+1}.
std::vector<double> log_S_range(const ChainParams& params, State y_lo, State y_hi);

/// E tau_{y+1 -> y}.
PassageEstimate mean_step_time(const ChainParams& params, State y);

/// E tau_{y+1 -> y} with S_{y+1} from the large-A asymptotics.
PassageEstimate mean_step_time_asymptotic(const ChainParams& params, State y,
                                          double h_threshold = kDefaultHThreshold);

/// E tau_{x -> y} for x > y >= 0.
PassageEstimate mean_passage(const ChainParams& params, State x, State y);

/// E tau_{x -> target} for every x in [target, x_max]; entry i is x = target + i
/// (entry 0 is log 0 = -inf).
std::vector<double> log_mean_passage_profile(const ChainParams& params, State target,
                                             State x_max);

struct ExtinctionTime {
  PassageEstimate exact;                 // sum_{k=1}^{n*} S_k / alpha_k
  std::optional<double> log_asymptotic;  // (b/mu^2) log(b/(b-mu)) S_1; absent when mu = 0
  State n_star = 0;
};

ExtinctionTime mean_passage_to_zero(const ChainParams& params);

/// Harmonic function with psi2(n*) = 0, psi2(n*+1) = 1, as sign and log|psi2|.
SignedLog psi2(const ChainParams& params, State x);

/// Solves -int_0^{d1 c} log(1-x) dx = int_0^{d2 c} log(1+x) dx for d2, with
/// c = 1 - mu/b, by bisection.
double symmetric_delta2(const ChainParams& params, double delta1);

struct ExitAnalysis {
  double delta1 = 0.0;
  double delta2 = 0.0;
  State n_star = 0;
  State n1 = 0;  // floor((1 - delta1) n*)
  State n2 = 0;  // floor((1 + delta2) n*)
  double rho1 = 0.0;
  double rho2 = 0.0;
  // (b/gamma) L log rho1 + delta1 (1 - log rho1) n* - log(L)/2
  double log_asymptotic = 0.0;
  // Exact E tau_{n* -> {n1, n2}} from psi1~ and psi2 with both boundary
  // conditions enforced.
  PassageEstimate exact;
  // log(psi1~(n2) / 2), the value under the symmetry assumption.
  double log_half_psi1_n2 = 0.0;
  // P_{n*}(exit through n2) = |psi2(n1)| / (psi2(n2) + |psi2(n1)|).
  double exit_upper_probability = 0.0;
};

ExitAnalysis mean_exit_symmetric(const ChainParams& params, double delta1);

struct RecurrenceTime {
  double log_scale = 0.0;       // -log pi(k)
  double log_mean_cycle = 0.0;  // -log(pi(k) (alpha_k + beta_k)): mean time between entries to k
};

RecurrenceTime recurrence_time_estimate(const ChainParams& params, State k);
RecurrenceTime recurrence_time_estimate(const StationaryLaw& law, State k);

}  // namespace logistic
