#pragma once

// Density Z_L(t) = N_L(t) / L: its deterministic limit, the Gaussian
// fluctuations sqrt(L) (Z_L - Z), the Ornstein-Uhlenbeck process at the
// equilibrium density, and Breiman's exit rate for that process.

#include <cstdint>
#include <vector>

#include "logistic/chain_model.hpp"

namespace logistic {

/// F(z) = b z - mu z - gamma z^2.
double drift_F(const ChainParams& params, double z);
/// F'(z) = b - mu - 2 gamma z.
double drift_F_prime(const ChainParams& params, double z);
/// G(z) = (b + mu) z + gamma z^2.
double variance_G(const ChainParams& params, double z);

struct FluidState {
  double z = 0.0;
  double z_star = 0.0;  // (b - mu) / gamma
};

/// Z(t) = z* z0 / (z0 + (z* - z0) e^{-gamma z* t}).
FluidState fluid_solution(const ChainParams& params, double z0, double t);

struct GaussMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean zeta0 L_t and variance L_t^2 int_0^t L_u^{-2} G(Z(u)) du, with
/// L_u = exp(int_0^u F'(Z(s)) ds) in closed form and the variance integral by
/// adaptive Gauss-Kronrod quadrature. Throws ConvergenceError if the error
/// estimate exceeds quad_tol (relative).
GaussMoments clt_moments(const ChainParams& params, double z0, double zeta0, double t,
                         double quad_tol = 1e-10);

/// log L_t.
double log_linearised_growth(const ChainParams& params, double z0, double t);

struct OuParams {
  double q = 0.0;  // drift coefficient mu - b
  double a = 0.0;  // diffusion coefficient 2 b (b - mu) / gamma
};

OuParams ou_params(const ChainParams& params);

/// sum_{k=0}^m (-2u)^k / (2k)! * m! / (m - k)!.
double breiman_polynomial(int m, double u);

/// A = sqrt(u) for the smallest positive root u of breiman_polynomial(m, .).
double breiman_nu(int m);

/// nu(A) for real A > 0: the smallest nu > 0 with M(-nu, 1/2, A^2/2) = 0,
/// where M is Kummer's function. At A = breiman_nu(m) this returns m.
double breiman_rate(double A);

/// Kummer's M(a, 1/2, x) by its power series.
double kummer_m_half(double a, double x);

struct OuExitOptions {
  double dt = 0.0;  // 0 picks (-1/q) / 100
  // Tail window for the log-slope fit, in units of -1/q.
  double fit_from = 1.5;
  double fit_to = 3.5;
  unsigned threads = 1;
};

struct OuExitTable {
  std::vector<double> t;
  std::vector<double> survival;  // empirical P{tau > t}
  double boundary = 0.0;         // A sqrt(a / (-2q)) in zeta units
  double nu = 0.0;               // breiman_rate(A)
  double fitted_slope = 0.0;     // d log P / dt over the fit window
  double predicted_slope = 0.0;  // -2 nu (-q)
  std::size_t fit_points = 0;
};

/// Simulates zeta from 0 with exact Gaussian transitions over steps of dt,
/// adding a Brownian-bridge test for crossings inside a step, until
/// |zeta| >= boundary. A is measured in stationary standard deviations, so
/// for q = -1, a = 2 the boundary is A itself.
OuExitTable ou_exit_tail_check(const ChainParams& params, double A,
                               const std::vector<double>& t_grid, std::size_t n_reps,
                               std::uint64_t seed, const OuExitOptions& options = {});

/// sup_{t <= T} |N(t)/L - Z(t)| along one run started at round(L z0).
double lln_sup_error(const ChainParams& params, double z0, double T, std::uint64_t seed);

struct LlnScaling {
  std::int64_t L_small = 0;
  std::int64_t L_large = 0;
  double median_small = 0.0;
  double median_large = 0.0;
  double ratio = 0.0;  // median_small / median_large
};

/// Median sup-error over n_seeds runs at two system sizes.
LlnScaling lln_scaling(const ChainParams& params, std::int64_t L_small, std::int64_t L_large,
                       double z0, double T, int n_seeds, std::uint64_t seed, unsigned threads = 1);

struct FluctuationSample {
  double zeta0 = 0.0;  // realised (N0 - L z0) / sqrt(L)
  double mean = 0.0;
  double variance = 0.0;
  double mean_std_error = 0.0;
  double variance_std_error = 0.0;
  std::size_t n = 0;
};

/// Empirical moments of sqrt(L) (N(t)/L - Z(t, z0)) from N0 = round(L z0 + zeta0 sqrt(L)).
FluctuationSample sample_fluctuations(const ChainParams& params, double z0, double zeta0,
                                      double t, std::size_t n_reps, std::uint64_t seed,
                                      unsigned threads = 1);

}  // namespace logistic
