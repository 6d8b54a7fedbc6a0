#include <cmath>

#include "doctest.h"
#include "logistic/chain_model.hpp"
#include "logistic/errors.hpp"

using namespace logistic;
using doctest::Approx;

TEST_CASE("rates") {
  const ChainParams m = make_params(2, 1, 1, 100);
  CHECK(rates(m, 0).alpha == 0.0);
  CHECK(rates(m, 0).beta == 2.0);
  CHECK(rates(m, 100).alpha == 200.0);
  CHECK(rates(m, 100).beta == 202.0);
  const ChainParams u = make_params(2, 1, 1, 100, Variant::Unmodified);
  CHECK(rates(u, 0).alpha == 0.0);
  CHECK(rates(u, 0).beta == 1.0);
  CHECK(rates(u, 7).beta == 14.0);
  CHECK_THROWS_AS(rates(m, -1), DomainError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(make_params(1, 1, 1, 10), DomainError);
  CHECK_THROWS_AS(make_params(2, 1, 0, 10), DomainError);
  CHECK_THROWS_AS(make_params(2, -1, 1, 10), DomainError);
  CHECK_THROWS_AS(make_params(2, 1, 1, 0), DomainError);
  ChainParams p = make_params(2, 1, 1, 10);
  p.mu = 3;
  p.exploratory = true;
  CHECK_NOTHROW(validate(p));
  CHECK_THROWS_AS(require_supercritical(p), DomainError);
}

TEST_CASE("equilibrium point and mode") {
  CHECK(equilibrium_point(make_params(2, 1, 1, 100, Variant::Unmodified)) == 100);
  CHECK(equilibrium_point(make_params(2, 1, 2, 100, Variant::Unmodified)) == 50);
  // x^2/100 - x - 2 = 0 by the quadratic formula.
  const double root = (100.0 + std::sqrt(10000.0 + 800.0)) / 2.0;
  CHECK(equilibrium_point(make_params(2, 1, 1, 100)) == static_cast<State>(std::floor(root)));
  CHECK(equilibrium_point(make_params(2, 1, 1, 100)) == 101);
  CHECK(stationary_mode(make_params(2, 1, 1, 100)) == 100);
  CHECK(stationary_mode(make_params(1.5, 0.5, 2, 50)) == 25);
  CHECK(stationary_mode(make_params(3, 1, 0.7, 10)) == 28);  // 20 / 0.7 = 28.57
}

TEST_CASE("drift changes sign at the modified root") {
  for (const ChainParams& p : {make_params(2, 1, 1, 100), make_params(3, 1, 0.5, 37),
                               make_params(1.5, 0.5, 2, 64)}) {
    const State root = equilibrium_point(p);
    for (State x = 0; x <= 3 * root; ++x) {
      const double d = beta(p, x) - alpha(p, x);
      if (x <= root) CHECK(d > 0.0);
      if (x > root) CHECK(d < 0.0);
    }
  }
}

TEST_CASE("generator") {
  const ChainParams p = make_params(2, 1, 1, 100);
  for (State x : {0, 1, 50, 100, 300}) {
    CHECK(std::abs(apply_generator(p, [](State) { return 3.25; }, x)) < 1e-12);
    const double lin = apply_generator(p, [](State y) { return static_cast<double>(y); }, x);
    const double xd = static_cast<double>(x);
    CHECK(lin == Approx(2 * (xd + 1) - xd - xd * xd / 100));
  }
}

TEST_CASE("variant names") {
  CHECK(parse_variant("modified") == Variant::Modified);
  CHECK(parse_variant(to_string(Variant::Unmodified)) == Variant::Unmodified);
  CHECK_THROWS_AS(parse_variant("other"), DomainError);
}
