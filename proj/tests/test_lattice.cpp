#include <cmath>

#include "doctest.h"
#include "logistic/errors.hpp"
#include "logistic/lattice.hpp"
#include "logistic/stats.hpp"

using namespace logistic;

TEST_CASE("site sum tracks the total after every event") {
  const ChainParams p = make_params(2, 1, 1, 10, Variant::Unmodified);
  LatticeOptions opt;
  opt.check_invariant = true;
  opt.snapshot_times = {0.0, 1.0, 2.5, 5.0};
  const LatticeRun run = simulate_mean_field_lattice(p, LatticeState::uniform(10, 20), 5.0, 3, opt);
  CHECK(run.final_state.consistent());
  REQUIRE(run.snapshots.size() == 4);
  for (const auto& s : run.snapshots) CHECK(s.state.consistent());
  CHECK(run.snapshots.front().state.total == 20);
  for (std::size_t i = 1; i < run.totals.events.size(); ++i) {
    CHECK(std::abs(run.totals.events[i].state - run.totals.events[i - 1].state) == 1);
    CHECK(run.totals.events[i].time > run.totals.events[i - 1].time);
  }
  CHECK(run.totals.events.back().state == run.final_state.total);
}

TEST_CASE("input checks") {
  const ChainParams p = make_params(2, 1, 1, 10);
  CHECK_THROWS_AS(simulate_mean_field_lattice(p, LatticeState::uniform(9, 5), 1.0, 1), DomainError);
  LatticeState broken = LatticeState::uniform(10, 5);
  broken.total = 6;
  CHECK_THROWS_AS(simulate_mean_field_lattice(p, broken, 1.0, 1), DomainError);
  CHECK(LatticeState::uniform(4, 10).site_counts == std::vector<std::int64_t>{3, 3, 2, 2});
}

TEST_CASE("total count has the chain's law at T = 5") {
  const ChainParams p = make_params(2, 1, 1, 10, Variant::Unmodified);
  const std::size_t n = 10000;
  std::vector<std::int64_t> lattice(n);
  LatticeOptions opt;
  opt.record_totals = false;
  for (std::size_t i = 0; i < n; ++i) {
    lattice[i] = simulate_mean_field_lattice(p, LatticeState::uniform(10, 20), 5.0,
                                             derive_seed(404, i), opt)
                     .final_state.total;
  }
  const auto direct = sample_state_at(p, 20, 5.0, n, 505);
  CHECK(chi_square_two_sample(lattice, direct).p_value > 1e-3);
}

TEST_CASE("sites are exchangeable") {
  const ChainParams p = make_params(2, 1, 1, 10, Variant::Unmodified);
  LatticeOptions opt;
  opt.record_totals = false;
  // All particles start on site 0; by T = 20 the uniform kernel has mixed them.
  LatticeState start;
  start.site_counts.assign(10, 0);
  start.site_counts[0] = 10;
  start.total = 10;
  const std::size_t n = 4000;
  std::vector<std::vector<double>> per_site(10, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto run = simulate_mean_field_lattice(p, start, 20.0, derive_seed(606, i), opt);
    for (std::size_t s = 0; s < 10; ++s) {
      per_site[s][i] = static_cast<double>(run.final_state.site_counts[s]);
    }
  }
  const SampleSummary ref = summarize(per_site[0]);
  for (std::size_t s = 1; s < 10; ++s) {
    const SampleSummary other = summarize(per_site[s]);
    const double se = std::hypot(ref.std_error, other.std_error);
    CHECK(std::abs(other.mean - ref.mean) < 3.5 * se);
  }
}

TEST_CASE("self-pair convention changes the death rate") {
  const ChainParams p = make_params(2, 1, 1, 10, Variant::Unmodified);
  LatticeOptions inc;
  inc.record_totals = false;
  LatticeOptions exc = inc;
  exc.pairs = CompetitionPairs::ExcludeSelf;
  double mean_inc = 0.0;
  double mean_exc = 0.0;
  for (std::size_t i = 0; i < 2000; ++i) {
    const auto init = LatticeState::uniform(10, 10);
    mean_inc += static_cast<double>(
        simulate_mean_field_lattice(p, init, 5.0, derive_seed(1, i), inc).final_state.total);
    mean_exc += static_cast<double>(
        simulate_mean_field_lattice(p, init, 5.0, derive_seed(2, i), exc).final_state.total);
  }
  // Excluding self-pairs removes gamma N / L of death rate, raising the level.
  CHECK(mean_exc > mean_inc);
}
