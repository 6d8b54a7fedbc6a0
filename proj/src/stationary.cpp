#include "logistic/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "logistic/errors.hpp"
#include "logistic/log_math.hpp"

namespace logistic {

namespace {

void require_ergodic(const ChainParams& params) {
  require_supercritical(params);
  if (params.variant != Variant::Modified) {
    throw DomainError("chain not ergodic: absorbing state at 0 (use the modified variant)");
  }
}

double log_step_ratio(const ChainParams& p, State x) {
  return std::log(beta(p, x)) - std::log(alpha(p, x + 1));
}

}  // namespace

double StationaryLaw::log_pi(State x) const {
  if (x < 0 || x > n_max) return -std::numeric_limits<double>::infinity();
  return log_weights[static_cast<std::size_t>(x)] - log_norm;
}

double StationaryLaw::pi(State x) const { return std::exp(log_pi(x)); }

std::vector<double> StationaryLaw::probabilities() const {
  std::vector<double> out(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), out.begin(),
                 [this](double w) { return std::exp(w - log_norm); });
  return out;
}

State StationaryLaw::argmax() const {
  // Ties resolve to the larger state.
  State best = 0;
  for (State x = 1; x <= n_max; ++x) {
    if (log_weights[static_cast<std::size_t>(x)] >= log_weights[static_cast<std::size_t>(best)]) {
      best = x;
    }
  }
  return best;
}

double log_stationary_weight(const ChainParams& params, State x) {
  require_ergodic(params);
  if (x < 0) throw DomainError("log_stationary_weight: state must be >= 0");
  CompensatedSum acc;
  for (State j = 0; j < x; ++j) acc.add(log_step_ratio(params, j));
  return acc.value();
}

StationaryLaw build_stationary(const ChainParams& params, double tail_tol) {
  require_ergodic(params);
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw DomainError("build_stationary: tail_tol must lie in (0, 1)");
  }
  StationaryLaw law;
  law.params = params;

  // Ratios beta_x / alpha_{x+1} = b / (mu + gamma (x+1) / L) decrease in x.
  State n_max = 2 * stationary_mode(params);
  while (log_step_ratio(params, n_max) >= -std::numbers::ln2) ++n_max;

  law.log_weights.assign(1, 0.0);
  for (;;) {
    while (static_cast<State>(law.log_weights.size()) <= n_max) {
      const State x = static_cast<State>(law.log_weights.size()) - 1;
      law.log_weights.push_back(law.log_weights.back() + log_step_ratio(params, x));
    }
    law.log_norm = log_sum_exp(law.log_weights);
    const double r = std::exp(log_step_ratio(params, n_max));
    law.tail_bound = std::exp(law.log_weights.back() - law.log_norm) * r / (1.0 - r);
    if (law.tail_bound < tail_tol) break;
    n_max += std::max<State>(1, n_max / 4);
  }
  law.n_max = n_max;
  return law;
}

double local_clt_density(const ChainParams& params, double k) {
  require_supercritical(params);
  const double var = static_cast<double>(params.L) * params.b / params.gamma;
  return std::exp(-k * k / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double ld_f(double z) {
  if (!(z > -1.0)) throw DomainError("ld_f: requires z > -1");
  // The series z^2/2 - z^3/6 + ... avoids cancellation near 0.
  if (std::abs(z) < 1e-4) return z * z * (0.5 - z / 6.0 + z * z / 12.0);
  return (1.0 + z) * std::log1p(z) - z;
}

double ld_rate(const ChainParams& params, double delta) {
  require_supercritical(params);
  if (!(delta > 0.0)) throw DomainError("ld_rate: requires delta > 0");
  return params.b / params.gamma * ld_f(delta * params.gamma / params.b);
}

double euler_maclaurin_log_product(std::int64_t r, double omega) {
  if (r < 0) throw DomainError("euler_maclaurin_log_product: requires r >= 0");
  if (!(omega > 0.0)) throw DomainError("euler_maclaurin_log_product: requires omega > 0");
  const double rd = static_cast<double>(r);
  return (1.0 / omega + rd + 0.5) * std::log1p(rd * omega) - rd;
}

}  // namespace logistic
