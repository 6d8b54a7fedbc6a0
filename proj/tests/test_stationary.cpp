#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "logistic/errors.hpp"
#include "logistic/linear_oracle.hpp"
#include "logistic/stationary.hpp"
#include "logistic/stats.hpp"

using namespace logistic;
using doctest::Approx;

TEST_CASE("log weights") {
  const ChainParams p = make_params(2, 1, 1, 100);
  CHECK(log_stationary_weight(p, 0) == 0.0);
  CHECK(log_stationary_weight(p, 1) == Approx(std::log(2.0 / 1.01)).epsilon(1e-15));
  CHECK_THROWS_AS(log_stationary_weight(make_params(2, 1, 1, 100, Variant::Unmodified), 3),
                  DomainError);
  CHECK_THROWS_AS(build_stationary(make_params(2, 1, 1, 100, Variant::Unmodified)), DomainError);
}

TEST_CASE("normalisation and detailed balance") {
  for (const ChainParams& p : {make_params(2, 1, 1, 50), make_params(3, 1, 0.5, 77),
                               make_params(1.5, 0.5, 2, 200)}) {
    const StationaryLaw law = build_stationary(p, 1e-12);
    const auto pi = law.probabilities();
    double total = 0.0;
    for (double v : pi) total += v;
    CHECK(total <= 1.0 + 1e-12);
    CHECK(total >= 1.0 - 1e-12);
    CHECK(law.tail_bound <= 1e-12);
    CHECK(law.n_max >= 2 * stationary_mode(p));
    for (State x = 0; x < law.n_max; ++x) {
      const double lhs = law.log_pi(x) + std::log(beta(p, x));
      const double rhs = law.log_pi(x + 1) + std::log(alpha(p, x + 1));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("product form equals the truncated generator's null vector") {
  for (std::int64_t L : {10, 50, 120, 200}) {
    const ChainParams p = make_params(2, 1, 1, L);
    const StationaryLaw law = build_stationary(p);
    const auto oracle_pi = oracle::stationary_by_linear_solve(p, law.n_max);
    CHECK(total_variation(law.probabilities(), oracle_pi) < 1e-10);
  }
}

TEST_CASE("mode") {
  const ChainParams p = make_params(2, 1, 1, 10000);
  const StationaryLaw law = build_stationary(p);
  const State n_star = stationary_mode(p);
  CHECK(law.argmax() >= n_star - 1);
  CHECK(law.argmax() <= n_star + 1);
  // Integer (b - mu) L / gamma: two tied modes, the larger is reported.
  CHECK(build_stationary(make_params(2, 1, 1, 40)).argmax() == 40);
}

TEST_CASE("local CLT") {
  CHECK(local_clt_density(make_params(2, 1, 1, 2000), 0) ==
        Approx(1.0 / std::sqrt(2 * std::numbers::pi * 4000)));
  const ChainParams p = make_params(2, 1, 1, 100000);
  CHECK(local_clt_density(p, 123.0) == local_clt_density(p, -123.0));
  const StationaryLaw law = build_stationary(p);
  const State n_star = stationary_mode(p);
  const double sigma = std::sqrt(2e5);
  const auto k = static_cast<State>(std::llround(sigma));
  const double ratio = law.pi(n_star + k) / local_clt_density(p, static_cast<double>(k));
  CHECK(ratio >= 0.98);
  CHECK(ratio <= 1.02);
  CHECK(law.pi(n_star) * std::sqrt(2 * std::numbers::pi * 2e5) == Approx(1.0).epsilon(0.02));
}

TEST_CASE("local CLT error shrinks with L") {
  double prev = 1.0;
  for (std::int64_t L : {1000, 10000, 100000}) {
    const ChainParams p = make_params(2, 1, 1, L);
    const StationaryLaw law = build_stationary(p);
    const State n_star = stationary_mode(p);
    const auto reach = static_cast<State>(2.0 * std::sqrt(2.0 * static_cast<double>(L)));
    double worst = 0.0;
    for (State k = -reach; k <= reach; ++k) {
      worst = std::max(worst, std::abs(law.pi(n_star + k) /
                                           local_clt_density(p, static_cast<double>(k)) -
                                       1.0));
    }
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("large-deviation rate") {
  CHECK(ld_f(1.0) == Approx(0.38629436111989061883).epsilon(1e-15));
  const double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [](double x) { return std::log1p(x); }, 0.0, 1.0, 10, 1e-14);
  CHECK(ld_f(1.0) == Approx(q).epsilon(1e-12));
  const ChainParams p = make_params(2, 1, 1, 100);
  CHECK(ld_rate(p, 1e-3) / ld_rate(p, 2e-3) == Approx(0.25).epsilon(0.01));
  CHECK(ld_f(5e-5) == Approx(0.5 * 5e-5 * 5e-5).epsilon(1e-4));
  // The series branch and the closed form meet.
  CHECK(ld_f(0.99999e-4) == Approx(ld_f(1.00001e-4)).epsilon(1e-4));
  CHECK_THROWS_AS(ld_f(-1.0), DomainError);
}

TEST_CASE("large deviations against the exact law") {
  double prev = 1.0;
  for (std::int64_t L : {1000, 10000, 100000}) {
    const ChainParams p = make_params(2, 1, 1, L);
    const StationaryLaw law = build_stationary(p);
    const double Ld = static_cast<double>(L);
    const State x = stationary_mode(p) + static_cast<State>(std::llround(0.3 * Ld));
    const double measured = -(law.log_pi(x) + 0.5 * std::log(Ld)) / Ld;
    const double err = std::abs(measured - ld_rate(p, 0.3)) / ld_rate(p, 0.3);
    if (L == 100000) CHECK(err < 0.02);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("Euler-Maclaurin log product") {
  CHECK(euler_maclaurin_log_product(0, 0.5) == 0.0);
  // Direct sum of log(1 + 1e-4 k), k = 0..1e4, to 40 digits.
  const double direct = 3863.2901806225194968;
  CHECK(std::abs(euler_maclaurin_log_product(10000, 1e-4) - direct) < 10 * 1e-4);
  double prev = -1.0;
  for (std::int64_t r = 0; r <= 1000; r += 50) {
    const double v = euler_maclaurin_log_product(r, 1e-3);
    CHECK(v > prev);
    prev = v;
  }
}
