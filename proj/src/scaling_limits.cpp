#include "logistic/scaling_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "logistic/errors.hpp"
#include "logistic/rng.hpp"
#include "logistic/simulator.hpp"
#include "logistic/stats.hpp"

namespace logistic {

namespace {

void require_density(double z0, double t) {
  if (!(z0 >= 0.0) || !std::isfinite(z0)) throw DomainError("requires z0 >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("requires t >= 0");
}

double z_star(const ChainParams& p) { return (p.b - p.mu) / p.gamma; }

}  // namespace

double drift_F(const ChainParams& p, double z) { return p.b * z - p.mu * z - p.gamma * z * z; }

double drift_F_prime(const ChainParams& p, double z) { return p.b - p.mu - 2.0 * p.gamma * z; }

double variance_G(const ChainParams& p, double z) { return (p.b + p.mu) * z + p.gamma * z * z; }

FluidState fluid_solution(const ChainParams& params, double z0, double t) {
  require_supercritical(params);
  require_density(z0, t);
  const double zs = z_star(params);
  if (z0 == 0.0) return {0.0, zs};
  const double decay = std::exp(-params.gamma * zs * t);
  return {zs * z0 / (z0 + (zs - z0) * decay), zs};
}

double log_linearised_growth(const ChainParams& params, double z0, double t) {
  require_supercritical(params);
  require_density(z0, t);
  const double zs = z_star(params);
  const double g = params.gamma * zs;
  // int_0^t F'(Z) = g t - 2 log(D(t) / z*), D(t) = z0 e^{g t} + z* - z0.
  // Written relative to e^{g t} so that large t does not overflow.
  const double rel = z0 + (zs - z0) * std::exp(-g * t);
  return -g * t - 2.0 * std::log(rel / zs);
}

GaussMoments clt_moments(const ChainParams& params, double z0, double zeta0, double t,
                         double quad_tol) {
  require_supercritical(params);
  require_density(z0, t);
  if (!(z0 > 0.0)) throw DomainError("clt_moments: requires z0 > 0");
  if (!(quad_tol > 0.0)) throw DomainError("clt_moments: requires quad_tol > 0");
  const double log_Lt = log_linearised_growth(params, z0, t);
  GaussMoments out{zeta0 * std::exp(log_Lt), 0.0};
  if (t == 0.0) return out;
  auto integrand = [&](double u) {
    const double z = fluid_solution(params, z0, u).z;
    return std::exp(2.0 * (log_Lt - log_linearised_growth(params, z0, u))) * variance_G(params, z);
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, t, 15, quad_tol, &error);
  if (!(error <= quad_tol * std::max(std::abs(value), 1e-300))) {
    throw ConvergenceError("clt_moments: quadrature error estimate " + std::to_string(error) +
                           " exceeds tolerance");
  }
  out.variance = value;
  return out;
}

OuParams ou_params(const ChainParams& params) {
  require_supercritical(params);
  if (!(params.gamma > 0.0)) throw DomainError("ou_params: requires gamma > 0");
  return {params.mu - params.b, 2.0 * params.b * (params.b - params.mu) / params.gamma};
}

double breiman_polynomial(int m, double u) {
  if (m < 1) throw DomainError("breiman_polynomial: requires m >= 1");
  // Term k: (-2u)^k m! / ((2k)! (m-k)!); successive ratio -2u (m-k) / ((2k+1)(2k+2)).
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < m; ++k) {
    term *= -2.0 * u * static_cast<double>(m - k) / (static_cast<double>(2 * k + 1) * (2 * k + 2));
    sum += term;
  }
  return sum;
}

double breiman_nu(int m) {
  if (m < 1) throw DomainError("breiman_nu: requires m >= 1");
  const double step = 0.01 / m;
  double lo = 0.0;
  double hi = step;
  while (breiman_polynomial(m, hi) > 0.0) {
    lo = hi;
    hi += step;
    if (hi > 10.0 * m + 10.0) throw ConvergenceError("breiman_nu: no positive root found");
  }
  // Bisect down to adjacent doubles; hi is then the smallest double with a
  // non-positive value, which is the root itself when it is representable.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (breiman_polynomial(m, mid) > 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(hi);
}

double kummer_m_half(double a, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * x / ((0.5 + k) * (k + 1.0));
    sum += term;
    if (term == 0.0 || (std::abs(term) < 1e-17 * std::abs(sum) && k > std::abs(a))) return sum;
  }
  throw ConvergenceError("kummer_m_half: series did not converge");
}

double breiman_rate(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("breiman_rate: requires A > 0");
  const double x = 0.5 * A * A;
  // M(-nu, 1/2, x) is positive on (0, nu(A)) and negative just beyond; the
  // next root is at least twice as far out, so a doubling scan cannot skip it.
  double lo = 0.0;
  double hi = 1e-12;
  while (kummer_m_half(-hi, x) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("breiman_rate: no root bracketed");
  }
  for (int i = 0; i < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kummer_m_half(-mid, x) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OuExitTable ou_exit_tail_check(const ChainParams& params, double A,
                               const std::vector<double>& t_grid, std::size_t n_reps,
                               std::uint64_t seed, const OuExitOptions& options) {
  if (!(A > 0.0)) throw DomainError("ou_exit_tail_check: requires A > 0");
  if (t_grid.empty()) throw DomainError("ou_exit_tail_check: empty time grid");
  if (n_reps < 1) throw DomainError("ou_exit_tail_check: requires n_reps >= 1");
  const OuParams ou = ou_params(params);
  const double time_unit = -1.0 / ou.q;
  const double dt = options.dt > 0.0 ? options.dt : time_unit / 100.0;
  const double sd = std::sqrt(ou.a / (-2.0 * ou.q));
  const double B = A * sd;
  const double horizon = *std::max_element(t_grid.begin(), t_grid.end());
  const double decay = std::exp(ou.q * dt);
  const double step_sd = std::sqrt(ou.a * (1.0 - decay * decay) / (-2.0 * ou.q));
  const double bridge = 2.0 / (ou.a * dt);

  std::vector<double> exit_time(n_reps, std::numeric_limits<double>::infinity());
  parallel_for(n_reps, options.threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    double zeta = 0.0;
    for (std::int64_t k = 1;; ++k) {
      const double t = static_cast<double>(k) * dt;
      const double next = zeta * decay + step_sd * rng.normal();
      bool out = std::abs(next) >= B;
      if (!out) {
        const double p_up = std::exp(-bridge * (B - zeta) * (B - next));
        const double p_down = std::exp(-bridge * (B + zeta) * (B + next));
        out = rng.uniform() < 1.0 - (1.0 - p_up) * (1.0 - p_down);
      }
      if (out) {
        exit_time[i] = t;
        return;
      }
      if (t > horizon) return;
      zeta = next;
    }
  });

  OuExitTable table;
  table.boundary = B;
  table.nu = breiman_rate(A);
  table.predicted_slope = -2.0 * table.nu * (-ou.q);
  std::sort(exit_time.begin(), exit_time.end());
  std::vector<double> fit_t;
  std::vector<double> fit_log;
  for (double t : t_grid) {
    const auto alive = exit_time.end() - std::upper_bound(exit_time.begin(), exit_time.end(), t);
    const double s = static_cast<double>(alive) / static_cast<double>(n_reps);
    table.t.push_back(t);
    table.survival.push_back(s);
    if (t >= options.fit_from * time_unit && t <= options.fit_to * time_unit && s > 0.0) {
      fit_t.push_back(t);
      fit_log.push_back(std::log(s));
    }
  }
  table.fit_points = fit_t.size();
  table.fitted_slope = fit_t.size() >= 2 ? fit_line(fit_t, fit_log).slope
                                         : std::numeric_limits<double>::quiet_NaN();
  return table;
}

double lln_sup_error(const ChainParams& params, double z0, double T, std::uint64_t seed) {
  require_supercritical(params);
  require_density(z0, T);
  const double L = static_cast<double>(params.L);
  const auto n0 = static_cast<State>(std::llround(L * z0));
  const double z_init = static_cast<double>(n0) / L;
  double sup = 0.0;
  Rng rng(seed);
  // Z(t) is monotone, so on a holding interval the gap peaks at an endpoint.
  run_chain(params, n0, StopRule::until(T), rng, [&](State x, double t0, double t1, State) {
    const double zx = static_cast<double>(x) / L;
    sup = std::max({sup, std::abs(zx - fluid_solution(params, z_init, t0).z),
                    std::abs(zx - fluid_solution(params, z_init, t1).z)});
  });
  return sup;
}

LlnScaling lln_scaling(const ChainParams& params, std::int64_t L_small, std::int64_t L_large,
                       double z0, double T, int n_seeds, std::uint64_t seed, unsigned threads) {
  if (n_seeds < 1) throw DomainError("lln_scaling: requires n_seeds >= 1");
  LlnScaling out{L_small, L_large, 0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(n_seeds);
  std::vector<double> small(n);
  std::vector<double> large(n);
  ChainParams ps = params;
  ps.L = L_small;
  ChainParams pl = params;
  pl.L = L_large;
  parallel_for(2 * n, threads, [&](std::size_t i) {
    if (i < n) {
      small[i] = lln_sup_error(ps, z0, T, derive_seed(seed, i));
    } else {
      large[i - n] = lln_sup_error(pl, z0, T, derive_seed(seed ^ 0x5bd1e995ULL, i - n));
    }
  });
  out.median_small = median(small);
  out.median_large = median(large);
  out.ratio = out.median_small / out.median_large;
  return out;
}

FluctuationSample sample_fluctuations(const ChainParams& params, double z0, double zeta0,
                                      double t, std::size_t n_reps, std::uint64_t seed,
                                      unsigned threads) {
  require_supercritical(params);
  require_density(z0, t);
  if (n_reps < 2) throw DomainError("sample_fluctuations: requires n_reps >= 2");
  const double L = static_cast<double>(params.L);
  const double root_L = std::sqrt(L);
  const auto n0 = static_cast<State>(std::llround(L * z0 + zeta0 * root_L));
  if (n0 < 0) throw DomainError("sample_fluctuations: negative starting state");
  const std::vector<State> end = sample_state_at(params, n0, t, n_reps, seed, threads);
  const double z_t = fluid_solution(params, z0, t).z;
  std::vector<double> zeta(n_reps);
  for (std::size_t i = 0; i < n_reps; ++i) {
    zeta[i] = root_L * (static_cast<double>(end[i]) / L - z_t);
  }
  const SampleSummary s = summarize(zeta);
  double m4 = 0.0;
  for (double v : zeta) m4 += std::pow(v - s.mean, 4);
  m4 /= static_cast<double>(n_reps);
  FluctuationSample out;
  out.zeta0 = (static_cast<double>(n0) - L * z0) / root_L;
  out.mean = s.mean;
  out.variance = s.variance;
  out.mean_std_error = s.std_error;
  out.variance_std_error =
      std::sqrt(std::max(0.0, m4 - s.variance * s.variance) / static_cast<double>(n_reps));
  out.n = n_reps;
  return out;
}

}  // namespace logistic
