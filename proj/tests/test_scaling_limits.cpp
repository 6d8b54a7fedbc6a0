#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "doctest.h"
#include "logistic/errors.hpp"
#include "logistic/scaling_limits.hpp"

using namespace logistic;
using doctest::Approx;

namespace {

// Independent oracle: integrate Z' = F(Z), m' = F'(Z) m, v' = 2 F'(Z) v + G(Z).
std::array<double, 3> moment_ode(const ChainParams& p, double z0, double zeta0, double t) {
  namespace ode = boost::numeric::odeint;
  std::array<double, 3> y{z0, zeta0, 0.0};
  auto rhs = [&](const std::array<double, 3>& s, std::array<double, 3>& d, double) {
    const double z = s[0];
    const double f = (p.b - p.mu) * z - p.gamma * z * z;
    const double fp = p.b - p.mu - 2.0 * p.gamma * z;
    const double g = (p.b + p.mu) * z + p.gamma * z * z;
    d = {f, fp * s[1], 2.0 * fp * s[2] + g};
  };
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<std::array<double, 3>>>(
                              1e-13, 1e-13),
                          rhs, y, 0.0, t, 1e-3);
  return y;
}

}  // namespace

TEST_CASE("drift and variance polynomials") {
  const ChainParams p = make_params(2, 1, 1, 100);
  CHECK(drift_F(p, 0.0) == 0.0);
  CHECK(drift_F(p, 1.0) == 0.0);
  CHECK(drift_F(p, 0.5) == Approx(0.25));
  CHECK(drift_F_prime(p, 1.0) == Approx(-1.0));
  CHECK(variance_G(p, 0.5) == Approx(1.75));
  const ChainParams r = make_params(3, 1, 0.5, 100);
  const double z_star = 4.0;
  CHECK(variance_G(r, z_star) == Approx(2.0 * 3 * 2 / 0.5));
}

TEST_CASE("fluid solution") {
  const ChainParams p = make_params(3, 1, 0.7, 100);
  const double z_star = 2.0 / 0.7;
  CHECK(fluid_solution(p, 0.0, 5.0).z == 0.0);
  CHECK(fluid_solution(p, z_star, 5.0).z == Approx(z_star).epsilon(1e-14));
  CHECK(fluid_solution(p, 0.3, 0.0).z == Approx(0.3).epsilon(1e-15));
  CHECK(fluid_solution(p, 0.3, 1.0).z_star == Approx(z_star));

  for (double z0 : {0.1, 1.0, 6.0}) {
    for (double t : {0.1, 1.0, 4.0}) {
      const double z = fluid_solution(p, z0, t).z;
      CHECK(z == Approx(moment_ode(p, z0, 0.0, t)[0]).epsilon(1e-8));
      // ODE residual by central difference.
      const double h = 1e-5;
      const double dz = (fluid_solution(p, z0, t + h).z - fluid_solution(p, z0, t - h).z) / (2 * h);
      CHECK(std::abs(dz - drift_F(p, z)) < 1e-6);
      // Semigroup property.
      const double two_step = fluid_solution(p, fluid_solution(p, z0, t).z, 0.7).z;
      CHECK(two_step == Approx(fluid_solution(p, z0, t + 0.7).z).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(fluid_solution(p, -0.1, 1.0), DomainError);
}

TEST_CASE("Gaussian moments") {
  const ChainParams p = make_params(3, 1, 0.7, 100);
  const GaussMoments zero = clt_moments(p, 0.5, 1.3, 0.0);
  CHECK(zero.mean == Approx(1.3));
  CHECK(zero.variance == 0.0);

  for (double z0 : {0.2, 2.0, 5.0}) {
    for (double t : {0.5, 2.0}) {
      const GaussMoments m = clt_moments(p, z0, 0.8, t);
      const auto y = moment_ode(p, z0, 0.8, t);
      CHECK(m.mean == Approx(y[1]).epsilon(1e-8));
      CHECK(m.variance == Approx(y[2]).epsilon(1e-8));
      CHECK(log_linearised_growth(p, z0, t) == Approx(std::log(y[1] / 0.8)).epsilon(1e-8));
    }
  }

  // At the equilibrium the fluctuations are the OU process.
  const ChainParams q = make_params(2, 1, 1, 100);
  const OuParams ou = ou_params(q);
  CHECK(ou.q == -1.0);
  CHECK(ou.a == 4.0);
  for (double t : {0.3, 1.0, 3.0}) {
    const GaussMoments m = clt_moments(q, 1.0, 1.0, t);
    CHECK(m.mean == Approx(std::exp(ou.q * t)).epsilon(1e-12));
    CHECK(m.variance == Approx(ou.a * (1 - std::exp(2 * ou.q * t)) / (-2 * ou.q)).epsilon(1e-9));
  }

  // Started at the equilibrium the variance rises monotonically to a / (-2q).
  double prev = 0.0;
  for (double t = 0.25; t <= 4.0; t += 0.25) {
    const double v = clt_moments(q, 1.0, 0.0, t).variance;
    CHECK(v < ou.a / (-2 * ou.q));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("simulated fluctuations match the Gaussian moments") {
  const ChainParams p = make_params(2, 1, 1, 4000, Variant::Unmodified);
  const FluctuationSample s = sample_fluctuations(p, 0.5, 0.0, 1.0, 4000, 77);
  CHECK(s.n == 4000);
  const GaussMoments m = clt_moments(p, 0.5, s.zeta0, 1.0);
  CHECK(std::abs(s.mean - m.mean) < 4 * s.mean_std_error);
  CHECK(std::abs(s.variance - m.variance) < 4 * s.variance_std_error);
}

TEST_CASE("law of large numbers error shrinks with L") {
  const ChainParams p = make_params(2, 1, 1, 100, Variant::Unmodified);
  const double e1 = lln_sup_error(p, 0.5, 5.0, 3);
  CHECK(e1 == lln_sup_error(p, 0.5, 5.0, 3));
  const LlnScaling s = lln_scaling(p, 250, 4000, 0.5, 5.0, 15, 9);
  CHECK(s.median_large < s.median_small);
  CHECK(s.ratio == Approx(s.median_small / s.median_large));
}

TEST_CASE("Breiman polynomials and roots") {
  CHECK(breiman_polynomial(1, 0.25) == Approx(0.75));
  CHECK(breiman_polynomial(2, 0.5) == Approx(1 - 1 + 1.0 / 12));
  CHECK(breiman_nu(1) == 1.0);
  CHECK(breiman_nu(2) == Approx(std::sqrt(3 - std::sqrt(6.0))).epsilon(1e-14));
  // Higher rates need closer boundaries.
  double prev = 2.0;
  for (int m = 1; m <= 6; ++m) {
    const double A = breiman_nu(m);
    CHECK(A > 0.0);
    CHECK(A < prev);
    prev = A;
    CHECK(std::abs(breiman_polynomial(m, A * A)) < 1e-10);
    CHECK(breiman_rate(A) == Approx(m).epsilon(1e-9));
  }
  CHECK_THROWS_AS(breiman_nu(0), DomainError);
  CHECK_THROWS_AS(breiman_polynomial(0, 1.0), DomainError);
  CHECK_THROWS_AS(breiman_rate(0.0), DomainError);

  // Rate decreases as the boundary moves out.
  CHECK(breiman_rate(0.5) > breiman_rate(1.0));
  CHECK(breiman_rate(1.0) > breiman_rate(2.0));
}

TEST_CASE("Kummer function at b = 1/2") {
  CHECK(kummer_m_half(0.0, 3.0) == Approx(1.0));
  CHECK(kummer_m_half(0.7, 0.0) == 1.0);
  for (double x : {0.1, 1.0, 5.0}) {
    CHECK(kummer_m_half(0.5, x) == Approx(std::exp(x)).epsilon(1e-13));
  }
  for (int m = 1; m <= 5; ++m) {
    for (double u : {0.2, 1.0, 4.0}) {
      CHECK(kummer_m_half(-m, u / 2) == Approx(breiman_polynomial(m, u)).epsilon(1e-12));
    }
  }
}

TEST_CASE("OU exit survival curve") {
  const ChainParams p = make_params(2, 1, 1, 100);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.1 * i);
  OuExitOptions opt;
  opt.threads = 2;
  const OuExitTable t = ou_exit_tail_check(p, 1.0, grid, 4000, 5, opt);
  REQUIRE(t.survival.size() == grid.size());
  CHECK(t.survival.front() == 1.0);
  for (std::size_t i = 1; i < t.survival.size(); ++i) CHECK(t.survival[i] <= t.survival[i - 1]);
  CHECK(t.boundary == Approx(std::sqrt(2.0)));
  CHECK(t.nu == Approx(1.0));
  CHECK(t.predicted_slope == Approx(-2.0));
  CHECK(t.fit_points > 5);
  CHECK(t.fitted_slope == Approx(t.predicted_slope).epsilon(0.1));

  opt.threads = 1;
  const OuExitTable again = ou_exit_tail_check(p, 1.0, grid, 4000, 5, opt);
  CHECK(again.survival == t.survival);
}
