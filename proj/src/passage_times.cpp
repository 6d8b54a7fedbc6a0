#include "logistic/passage_times.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "logistic/errors.hpp"

namespace logistic {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_modified(const ChainParams& params, const char* op) {
  require_supercritical(params);
  if (params.variant != Variant::Modified) {
    throw DomainError(std::string(op) + ": requires the modified chain");
  }
}

double log_ratio(const ChainParams& p, State x) {
  return std::log(beta(p, x)) - std::log(alpha(p, x + 1));
}

double log_step(const ChainParams& p, State k, double log_s_k) {
  return log_s_k - std::log(alpha(p, k));
}

// (1 - u) log(1 - u) + u = int_0^u -log(1 - x) dx.
double lower_integral(double u) {
  if (std::abs(u) < 1e-4) return u * u * (0.5 + u / 6.0 + u * u / 12.0);
  return (1.0 - u) * std::log1p(-u) + u;
}

}  // namespace

std::string_view to_string(PassageMethod method) {
  switch (method) {
    case PassageMethod::SeriesExact: return "SeriesExact";
    case PassageMethod::HypergeomAsymptotic: return "HypergeomAsymptotic";
    case PassageMethod::LinearSolveOracle: return "LinearSolveOracle";
    case PassageMethod::MonteCarlo: return "MonteCarlo";
  }
  return "?";
}

double s_series_parameter(const ChainParams& p, State y) {
  return p.mu * static_cast<double>(p.L) / p.gamma + static_cast<double>(y) + 1.0;
}

double log_S(const ChainParams& params, State y, bool verify, double rel_tol) {
  require_modified(params, "log_S");
  if (y < 0) throw DomainError("log_S: requires y >= 0");

  double log_scale = 0.0;
  double term = 1.0;
  CompensatedSum sum;
  sum.add(1.0);
  double result = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0;; ++j) {
    if (j >= kMaxSeriesTerms) {
      throw ConvergenceError("log_S(y=" + std::to_string(y) + "): series did not converge");
    }
    const State x = y + static_cast<State>(j);
    term *= beta(params, x) / alpha(params, x + 1);
    sum.add(term);
    if (sum.value() > 1e280) {
      const double s = sum.value();
      log_scale += std::log(s);
      term /= s;
      sum = CompensatedSum{};
      sum.add(1.0);
    }
    const double r_next = beta(params, x + 1) / alpha(params, x + 2);
    if (r_next < 1.0 && term * r_next / (1.0 - r_next) < rel_tol * sum.value()) {
      result = log_scale + std::log(sum.value());
      break;
    }
  }

  if (verify) {
    const double A = s_series_parameter(params, y);
    const double z = params.b * static_cast<double>(params.L) / params.gamma;
    const double via_f = hypergeom_series(A, z).log_value;
    if (std::abs(via_f - result) > 1e-8 * std::max(1.0, std::abs(result))) {
      std::ostringstream os;
      os.precision(17);
      os << "log_S(y=" << y << "): series " << result << " disagrees with F(" << A << ", " << z
         << ") = " << via_f;
      throw ConvergenceError(os.str());
    }
  }
  return result;
}

std::vector<double> log_S_range(const ChainParams& params, State y_lo, State y_hi) {
  require_modified(params, "log_S_range");
  if (y_lo < 0 || y_hi < y_lo) throw DomainError("log_S_range: requires 0 <= y_lo <= y_hi");
  std::vector<double> out(static_cast<std::size_t>(y_hi - y_lo + 1));
  out.back() = log_S(params, y_hi);
  for (State y = y_hi - 1; y >= y_lo; --y) {
    const auto i = static_cast<std::size_t>(y - y_lo);
    out[i] = log_add_exp(0.0, log_ratio(params, y) + out[i + 1]);
  }
  return out;
}

PassageEstimate mean_step_time(const ChainParams& params, State y) {
  require_modified(params, "mean_step_time");
  if (y < 0) throw DomainError("mean_step_time: requires y >= 0");
  return {log_step(params, y + 1, log_S(params, y + 1)), PassageMethod::SeriesExact, std::nullopt,
          std::nullopt};
}

PassageEstimate mean_step_time_asymptotic(const ChainParams& params, State y,
                                          double h_threshold) {
  require_modified(params, "mean_step_time_asymptotic");
  if (y < 0) throw DomainError("mean_step_time_asymptotic: requires y >= 0");
  const double z = params.b * static_cast<double>(params.L) / params.gamma;
  const HypergeomValue s = hypergeom_asymptotic(s_series_parameter(params, y + 1), z, h_threshold);
  return {log_step(params, y + 1, s.log_value), PassageMethod::HypergeomAsymptotic, std::nullopt,
          s.regime};
}

std::vector<double> log_mean_passage_profile(const ChainParams& params, State target,
                                             State x_max) {
  require_modified(params, "log_mean_passage_profile");
  if (target < 0 || x_max < target) {
    throw DomainError("log_mean_passage_profile: requires 0 <= target <= x_max");
  }
  std::vector<double> out(static_cast<std::size_t>(x_max - target + 1), kNegInf);
  if (x_max == target) return out;
  const std::vector<double> s = log_S_range(params, target + 1, x_max);
  for (State k = target + 1; k <= x_max; ++k) {
    const auto i = static_cast<std::size_t>(k - target);
    out[i] = log_add_exp(out[i - 1], log_step(params, k, s[i - 1]));
  }
  return out;
}

PassageEstimate mean_passage(const ChainParams& params, State x, State y) {
  require_modified(params, "mean_passage");
  if (y < 0 || x <= y) throw DomainError("mean_passage: requires x > y >= 0");
  const std::vector<double> s = log_S_range(params, y + 1, x);
  std::vector<double> steps(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    steps[i] = log_step(params, y + 1 + static_cast<State>(i), s[i]);
  }
  return {log_sum_exp(steps), PassageMethod::SeriesExact, std::nullopt, std::nullopt};
}

ExtinctionTime mean_passage_to_zero(const ChainParams& params) {
  require_modified(params, "mean_passage_to_zero");
  ExtinctionTime out;
  out.n_star = stationary_mode(params);
  if (out.n_star < 1) throw DomainError("mean_passage_to_zero: requires n* >= 1");
  out.exact = mean_passage(params, out.n_star, 0);
  if (params.mu > 0.0) {
    const double b = params.b;
    const double mu = params.mu;
    out.log_asymptotic =
        std::log(b / (mu * mu)) + std::log(std::log(b / (b - mu))) + log_S(params, 1);
  }
  return out;
}

SignedLog psi2(const ChainParams& params, State x) {
  require_modified(params, "psi2");
  if (x < 0) throw DomainError("psi2: requires x >= 0");
  const State n_star = stationary_mode(params);
  if (x == n_star) return {};
  // Increments D(j) = psi2(j) - psi2(j-1) obey beta_j D(j+1) = alpha_j D(j), D(n*+1) = 1.
  if (x > n_star) {
    double log_inc = 0.0;
    double acc = 0.0;
    for (State j = n_star + 2; j <= x; ++j) {
      log_inc += std::log(alpha(params, j - 1)) - std::log(beta(params, j - 1));
      acc = log_add_exp(acc, log_inc);
    }
    return {acc, 1};
  }
  double log_inc = std::log(beta(params, n_star)) - std::log(alpha(params, n_star));
  double acc = log_inc;
  for (State j = n_star - 1; j > x; --j) {
    log_inc += std::log(beta(params, j)) - std::log(alpha(params, j));
    acc = log_add_exp(acc, log_inc);
  }
  return {acc, -1};
}

double symmetric_delta2(const ChainParams& params, double delta1) {
  require_supercritical(params);
  if (!(delta1 > 0.0 && delta1 < 1.0)) {
    throw DomainError("symmetric_delta2: requires 0 < delta1 < 1");
  }
  const double c = 1.0 - params.mu / params.b;
  if (delta1 * c >= 1.0) throw DomainError("symmetric_delta2: delta1 (1 - mu/b) must be < 1");
  const double target = lower_integral(delta1 * c);
  double lo = 0.0;
  double hi = 1.0;
  while (ld_f(hi * c) < target) {
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("symmetric_delta2: no bracket");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (ld_f(mid * c) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ExitAnalysis mean_exit_symmetric(const ChainParams& params, double delta1) {
  require_modified(params, "mean_exit_symmetric");
  ExitAnalysis out;
  out.delta1 = delta1;
  out.delta2 = symmetric_delta2(params, delta1);
  out.n_star = stationary_mode(params);
  const double ns = static_cast<double>(out.n_star);
  out.n1 = static_cast<State>(std::floor((1.0 - delta1) * ns));
  out.n2 = static_cast<State>(std::floor((1.0 + out.delta2) * ns));
  if (!(out.n1 < out.n_star && out.n_star < out.n2)) {
    throw DomainError("mean_exit_symmetric: L too small, n1 < n* < n2 fails");
  }
  const double c = 1.0 - params.mu / params.b;
  out.rho1 = 1.0 - c * delta1;
  out.rho2 = 1.0 / (1.0 + out.delta2 * c);
  const double L = static_cast<double>(params.L);
  out.log_asymptotic = params.b / params.gamma * L * std::log(out.rho1) +
                       delta1 * (1.0 - std::log(out.rho1)) * ns - 0.5 * std::log(L);

  // u = psi1~ + c1 + c2 psi2 with psi1~(x) = E tau_{x -> n1} and psi2(n*) = 0, so
  // u(n*) = psi1~(n*) - p psi1~(n2) = (1 - p) psi1~(n*) - p E tau_{n2 -> n*}.
  const std::vector<double> profile = log_mean_passage_profile(params, out.n1, out.n2);
  const double log_psi1_nstar = profile[static_cast<std::size_t>(out.n_star - out.n1)];
  const double log_psi1_n2 = profile.back();
  const double log_down_leg = mean_passage(params, out.n2, out.n_star).log_mean_time;

  const double log_low = psi2(params, out.n1).log_abs;
  const double log_high = psi2(params, out.n2).log_abs;
  out.exit_upper_probability = 1.0 / (1.0 + std::exp(log_high - log_low));
  const double stay_low = 1.0 / (1.0 + std::exp(log_low - log_high));
  const double bracket =
      stay_low - out.exit_upper_probability * std::exp(log_down_leg - log_psi1_nstar);
  if (!(bracket > 0.0)) {
    throw ConvergenceError("mean_exit_symmetric: cancellation left a non-positive exit time");
  }
  out.exact = {log_psi1_nstar + std::log(bracket), PassageMethod::SeriesExact, std::nullopt,
               std::nullopt};
  out.log_half_psi1_n2 = log_psi1_n2 - std::numbers::ln2;
  return out;
}

RecurrenceTime recurrence_time_estimate(const StationaryLaw& law, State k) {
  if (k < 0 || k > law.n_max) throw DomainError("recurrence_time_estimate: k outside the law");
  RecurrenceTime out;
  out.log_scale = -law.log_pi(k);
  const RatePair r = rates(law.params, k);
  out.log_mean_cycle = out.log_scale - std::log(r.alpha + r.beta);
  return out;
}

RecurrenceTime recurrence_time_estimate(const ChainParams& params, State k) {
  if (k < 0) throw DomainError("recurrence_time_estimate: requires k >= 0");
  const StationaryLaw law = build_stationary(params, 1e-14);
  if (k <= law.n_max) return recurrence_time_estimate(law, k);
  RecurrenceTime out;
  out.log_scale = law.log_norm - log_stationary_weight(params, k);
  const RatePair r = rates(params, k);
  out.log_mean_cycle = out.log_scale - std::log(r.alpha + r.beta);
  return out;
}

}  // namespace logistic
