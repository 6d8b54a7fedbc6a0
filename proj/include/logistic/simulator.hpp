#pragma once

// Exact event-driven simulation of the chain: at state x wait Exp(alpha_x + beta_x),
// then step up with probability beta_x / (alpha_x + beta_x).

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "logistic/chain_model.hpp"
#include "logistic/errors.hpp"
#include "logistic/rng.hpp"

namespace logistic {

inline constexpr std::uint64_t kDefaultEventCap = 1'000'000'000;

struct StopRule {
  std::optional<double> time_limit;
  std::vector<State> targets;  // stop on first entry (or at t = 0 if x0 is a target)
  std::uint64_t event_cap = kDefaultEventCap;

  static StopRule until(double T) { return {T, {}, kDefaultEventCap}; }
  static StopRule hit(std::vector<State> targets) {
    return {std::nullopt, std::move(targets), kDefaultEventCap};
  }
  bool is_target(State x) const {
    for (State t : targets) {
      if (t == x) return true;
    }
    return false;
  }
};

enum class StopReason { TimeLimit, HitTarget, Absorbed };

std::string_view to_string(StopReason reason);

struct Event {
  double time = 0.0;
  State state = 0;
  bool operator==(const Event&) const = default;
};

struct Trajectory {
  ChainParams params;
  std::uint64_t seed = 0;
  std::vector<Event> events;  // events[0] = (0, x0)
  StopReason stop_reason = StopReason::TimeLimit;
  std::optional<State> hit_state;
  double end_time = 0.0;  // T for TimeLimit, the last event time otherwise
};

struct RunOutcome {
  StopReason reason = StopReason::TimeLimit;
  State final_state = 0;
  double end_time = 0.0;
  std::uint64_t jumps = 0;
};

/// Streaming core. For each holding interval calls
/// observer(state, t_begin, t_end, next_state); the interval cut by a time
/// limit is reported with next_state == state. An observer returning bool
/// ends the run after the current jump by returning false.
template <class Observer>
RunOutcome run_chain(const ChainParams& params, State x0, const StopRule& stop, Rng& rng,
                     Observer&& observer) {
  if (x0 < 0) throw DomainError("simulate: requires x0 >= 0");
  if (!stop.time_limit && stop.targets.empty()) {
    throw DomainError("simulate: stop rule needs a time limit or a target set");
  }
  RunOutcome out;
  State x = x0;
  double t = 0.0;
  if (stop.is_target(x)) return {StopReason::HitTarget, x, 0.0, 0};
  const double horizon = stop.time_limit.value_or(std::numeric_limits<double>::infinity());
  for (;;) {
    const double up = beta(params, x);
    const double total = up + alpha(params, x);
    if (!(total > 0.0)) return {StopReason::Absorbed, x, t, out.jumps};
    const double t_next = t + rng.exponential(total);
    if (t_next >= horizon) {
      observer(x, t, horizon, x);
      return {StopReason::TimeLimit, x, horizon, out.jumps};
    }
    const State next = rng.uniform() * total < up ? x + 1 : x - 1;
    const double t_begin = t;
    t = t_next;
    if constexpr (std::is_same_v<std::invoke_result_t<Observer&, State, double, double, State>,
                                 bool>) {
      if (!observer(x, t_begin, t_next, next)) {
        return {StopReason::TimeLimit, next, t, out.jumps + 1};
      }
    } else {
      observer(x, t_begin, t_next, next);
    }
    x = next;
    if (++out.jumps >= stop.event_cap && !stop.is_target(x)) {
      throw SimulationError("simulate: event cap of " + std::to_string(stop.event_cap) +
                            " reached at t = " + std::to_string(t));
    }
    if (stop.is_target(x)) return {StopReason::HitTarget, x, t, out.jumps};
  }
}

/// Records the full event list.
Trajectory simulate(const ChainParams& params, State x0, const StopRule& stop, std::uint64_t seed);

struct FirstPassageSample {
  std::vector<double> times;      // replicate i in slot i
  std::vector<State> hit_states;  // which target was reached
  double mean = 0.0;
  double std_error = 0.0;

  /// Fraction of replicates that stopped at `target`.
  double fraction_at(State target) const;
};

/// n_reps runs from x0 until a target is hit; replicate i is seeded with
/// derive_seed(seed, i). Throws SimulationError if a run is absorbed or hits
/// the event cap.
FirstPassageSample sample_first_passage(const ChainParams& params, State x0,
                                        const std::vector<State>& targets, std::size_t n_reps,
                                        std::uint64_t seed, unsigned threads = 1,
                                        std::uint64_t event_cap = kDefaultEventCap);

/// Time spent in each state after burn_in.
class OccupationAccumulator {
 public:
  explicit OccupationAccumulator(double burn_in = 0.0) : burn_in_(burn_in) {}

  void add(State x, double t_begin, double t_end);
  double total_time() const { return total_; }
  /// Normalised histogram; entry i is state i. Throws if no time was recorded.
  std::vector<double> distribution() const;

 private:
  double burn_in_;
  double total_ = 0.0;
  std::vector<double> time_in_state_;
};

/// Time-weighted state histogram of traj after burn_in.
std::vector<double> occupation_measure(const Trajectory& traj, double burn_in);

/// Simulates up to T and returns the occupation measure without storing events.
std::vector<double> simulate_occupation(const ChainParams& params, State x0, double T,
                                        double burn_in, std::uint64_t seed);

/// Value of the chain at time t for each replicate, started at x0.
std::vector<State> sample_state_at(const ChainParams& params, State x0, double t,
                                   std::size_t n_reps, std::uint64_t seed, unsigned threads = 1);

}  // namespace logistic
