#include <cmath>
#include <sstream>

#include "doctest.h"
#include "logistic/errors.hpp"
#include "logistic/passage_times.hpp"
#include "logistic/simulator.hpp"
#include "logistic/stationary.hpp"
#include "logistic/stats.hpp"
#include "logistic/trajectory_io.hpp"

using namespace logistic;
using doctest::Approx;

TEST_CASE("trajectory invariants and determinism") {
  const ChainParams p = make_params(2, 1, 1, 20);
  const Trajectory a = simulate(p, 20, StopRule::until(10), 42);
  const Trajectory b = simulate(p, 20, StopRule::until(10), 42);
  CHECK(a.events == b.events);
  CHECK(a.stop_reason == StopReason::TimeLimit);
  CHECK(a.end_time == 10.0);
  REQUIRE(a.events.size() > 100);
  CHECK(a.events.front() == Event{0.0, 20});
  for (std::size_t i = 1; i < a.events.size(); ++i) {
    CHECK(a.events[i].time > a.events[i - 1].time);
    CHECK(std::abs(a.events[i].state - a.events[i - 1].state) == 1);
  }
  CHECK(simulate(p, 20, StopRule::until(10), 43).events != a.events);
}

TEST_CASE("stop rules") {
  const ChainParams p = make_params(2, 1, 1, 20);
  const Trajectory hit = simulate(p, 20, StopRule::hit({10, 30}), 5);
  CHECK(hit.stop_reason == StopReason::HitTarget);
  REQUIRE(hit.hit_state.has_value());
  CHECK((*hit.hit_state == 10 || *hit.hit_state == 30));
  CHECK(hit.events.back().state == *hit.hit_state);
  const Trajectory already = simulate(p, 7, StopRule::hit({7}), 5);
  CHECK(already.events.size() == 1);
  CHECK(already.end_time == 0.0);
  CHECK_THROWS_AS(simulate(p, -1, StopRule::until(1), 1), DomainError);
  CHECK_THROWS_AS(simulate(p, 1, StopRule{}, 1), DomainError);
  StopRule capped = StopRule::hit({1000});
  capped.event_cap = 1000;
  CHECK_THROWS_AS(simulate(p, 20, capped, 1), SimulationError);
}

TEST_CASE("pure birth: mean matches e^{bt}") {
  ChainParams p = make_params(2, 1, 1, 10, Variant::Unmodified);
  p.b = 1.0;
  p.mu = 0.0;
  p.gamma = 0.0;
  p.exploratory = true;
  const auto end = sample_state_at(p, 1, 2.0, 10000, 99);
  std::vector<double> v(end.begin(), end.end());
  const SampleSummary s = summarize(v);
  CHECK(std::abs(s.mean - std::exp(2.0)) < 3 * s.std_error);
}

TEST_CASE("holding times and jump directions") {
  const ChainParams p = make_params(2, 1, 1, 50);
  for (State x : {State{40}, State{50}, State{62}}) {
    std::vector<double> holds;
    std::uint64_t up = 0;
    Rng rng(derive_seed(11, static_cast<std::uint64_t>(x)));
    run_chain(p, x, StopRule::until(1e9), rng, [&](State s, double t0, double t1, State next) {
      if (s != x) return true;
      holds.push_back(t1 - t0);
      up += next > s;
      return holds.size() < 10000;
    });
    const RatePair r = rates(p, x);
    CHECK(ks_test_exponential(holds, r.alpha + r.beta).p_value > 1e-3);
    CHECK(binomial_test(up, holds.size(), r.beta / (r.alpha + r.beta)).p_value > 1e-3);
  }
}

TEST_CASE("first passage sampling") {
  const ChainParams p = make_params(2, 1, 1, 30);
  const FirstPassageSample zero = sample_first_passage(p, 12, {12}, 50, 1);
  for (double t : zero.times) CHECK(t == 0.0);
  CHECK(zero.fraction_at(12) == 1.0);

  const State n_star = stationary_mode(p);
  const FirstPassageSample s = sample_first_passage(p, n_star + 1, {n_star}, 100000, 2);
  CHECK(std::abs(s.mean - mean_step_time(p, n_star).mean()) < 3 * s.std_error);

  CHECK_THROWS_AS(sample_first_passage(p, 5, {}, 10, 1), DomainError);
  CHECK_THROWS_AS(sample_first_passage(p, 5, {6}, 0, 1), DomainError);
  CHECK_THROWS_AS(sample_first_passage(p, 5, {100000}, 2, 1, 1, 10000), SimulationError);
}

TEST_CASE("results do not depend on the thread count") {
  const ChainParams p = make_params(2, 1, 1, 30);
  const auto one = sample_first_passage(p, 30, {20, 40}, 2000, 8, 1);
  const auto four = sample_first_passage(p, 30, {20, 40}, 2000, 8, 4);
  CHECK(one.times == four.times);
  CHECK(one.hit_states == four.hit_states);
  CHECK(one.mean == four.mean);
  CHECK(sample_state_at(p, 30, 2.0, 500, 3, 1) == sample_state_at(p, 30, 2.0, 500, 3, 3));
}

TEST_CASE("occupation measure") {
  Trajectory single;
  single.events = {{0.0, 4}};
  single.end_time = 5.0;
  const auto point = occupation_measure(single, 1.0);
  REQUIRE(point.size() == 5);
  CHECK(point[4] == 1.0);
  CHECK_THROWS_AS(occupation_measure(single, 6.0), DomainError);

  const ChainParams p = make_params(2, 1, 1, 50);
  const auto pi = build_stationary(p).probabilities();
  const auto a = simulate_occupation(p, 50, 1e5, 100.0, 1);
  const auto b = simulate_occupation(p, 50, 1e5, 100.0, 2);
  CHECK(total_variation(a, pi) < 0.02);
  CHECK(total_variation(a, b) < 0.03);

  // Stored and streamed paths agree.
  const Trajectory t = simulate(p, 50, StopRule::until(200.0), 9);
  const auto stored = occupation_measure(t, 10.0);
  const auto streamed = simulate_occupation(p, 50, 200.0, 10.0, 9);
  REQUIRE(stored.size() == streamed.size());
  for (std::size_t i = 0; i < stored.size(); ++i) CHECK(stored[i] == Approx(streamed[i]));
}

TEST_CASE("occupation measure approaches pi as T grows") {
  const ChainParams p = make_params(2, 1, 1, 50);
  const auto pi = build_stationary(p).probabilities();
  double prev = 1.0;
  for (double T : {1e3, 1e4, 1e5}) {
    double mean_tv = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
      mean_tv += total_variation(simulate_occupation(p, 50, T, 100.0, derive_seed(21, s)), pi);
    }
    mean_tv /= 5;
    CHECK(mean_tv < prev);
    prev = mean_tv;
  }
}

TEST_CASE("binary and CSV trajectory files") {
  const ChainParams p = make_params(2, 1, 1, 20);
  const Trajectory t = simulate(p, 20, StopRule::until(3), 42);
  std::stringstream bin;
  write_trajectory_binary(bin, t);
  const std::string bytes = bin.str();
  CHECK(bytes.substr(0, 4) == "LGTR");
  CHECK(bytes.size() == 72 + 16 * t.events.size());
  const Trajectory back = read_trajectory_binary(bin);
  CHECK(back.events == t.events);
  CHECK(back.seed == 42);
  CHECK(back.params.L == 20);
  CHECK(back.params.b == 2.0);
  CHECK(back.end_time == t.end_time);
  CHECK(back.stop_reason == t.stop_reason);

  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_trajectory_binary(bad), DomainError);
  std::stringstream truncated(bytes.substr(0, 80));
  CHECK_THROWS_AS(read_trajectory_binary(truncated), DomainError);

  std::stringstream csv;
  write_trajectory_csv(csv, t, "# seed=42\n");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "# seed=42");
  std::getline(csv, line);
  CHECK(line == "time,state");
  std::getline(csv, line);
  CHECK(line == "0,20");
}
