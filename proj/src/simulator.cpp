#include "logistic/simulator.hpp"

#include <cmath>
#include <string>

#include "logistic/stats.hpp"

namespace logistic {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::TimeLimit: return "TimeLimit";
    case StopReason::HitTarget: return "HitTarget";
    case StopReason::Absorbed: return "Absorbed";
  }
  return "?";
}

Trajectory simulate(const ChainParams& params, State x0, const StopRule& stop,
                    std::uint64_t seed) {
  validate(params);
  Trajectory traj;
  traj.params = params;
  traj.seed = seed;
  traj.events.push_back({0.0, x0});
  Rng rng(seed);
  const RunOutcome outcome =
      run_chain(params, x0, stop, rng, [&](State x, double, double t_end, State next) {
        if (next != x) traj.events.push_back({t_end, next});
      });
  traj.stop_reason = outcome.reason;
  traj.end_time = outcome.end_time;
  if (outcome.reason == StopReason::HitTarget) traj.hit_state = outcome.final_state;
  return traj;
}

double FirstPassageSample::fraction_at(State target) const {
  if (hit_states.empty()) return 0.0;
  std::size_t count = 0;
  for (State s : hit_states) count += (s == target);
  return static_cast<double>(count) / static_cast<double>(hit_states.size());
}

FirstPassageSample sample_first_passage(const ChainParams& params, State x0,
                                        const std::vector<State>& targets, std::size_t n_reps,
                                        std::uint64_t seed, unsigned threads,
                                        std::uint64_t event_cap) {
  validate(params);
  if (n_reps < 1) throw DomainError("sample_first_passage: requires n_reps >= 1");
  if (targets.empty()) throw DomainError("sample_first_passage: empty target set");
  FirstPassageSample out;
  out.times.assign(n_reps, 0.0);
  out.hit_states.assign(n_reps, 0);
  const StopRule stop{std::nullopt, targets, event_cap};
  parallel_for(n_reps, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const RunOutcome r = run_chain(params, x0, stop, rng, [](State, double, double, State) {});
    if (r.reason != StopReason::HitTarget) {
      throw SimulationError("sample_first_passage: replicate " + std::to_string(i) +
                            " was absorbed at " + std::to_string(r.final_state) +
                            " before reaching a target");
    }
    out.times[i] = r.end_time;
    out.hit_states[i] = r.final_state;
  });
  const SampleSummary s = summarize(out.times);
  out.mean = s.mean;
  out.std_error = s.std_error;
  return out;
}

void OccupationAccumulator::add(State x, double t_begin, double t_end) {
  const double lo = std::max(t_begin, burn_in_);
  if (!(t_end > lo)) return;
  const auto i = static_cast<std::size_t>(x);
  if (i >= time_in_state_.size()) time_in_state_.resize(i + 1, 0.0);
  time_in_state_[i] += t_end - lo;
  total_ += t_end - lo;
}

std::vector<double> OccupationAccumulator::distribution() const {
  if (!(total_ > 0.0)) throw DomainError("occupation_measure: empty window after burn-in");
  std::vector<double> out(time_in_state_);
  for (double& v : out) v /= total_;
  return out;
}

std::vector<double> occupation_measure(const Trajectory& traj, double burn_in) {
  if (traj.events.empty()) throw DomainError("occupation_measure: empty trajectory");
  if (!(traj.end_time > burn_in)) {
    throw DomainError("occupation_measure: trajectory ends before burn-in");
  }
  OccupationAccumulator acc(burn_in);
  for (std::size_t i = 0; i < traj.events.size(); ++i) {
    const double t_end = i + 1 < traj.events.size() ? traj.events[i + 1].time : traj.end_time;
    acc.add(traj.events[i].state, traj.events[i].time, t_end);
  }
  return acc.distribution();
}

std::vector<double> simulate_occupation(const ChainParams& params, State x0, double T,
                                        double burn_in, std::uint64_t seed) {
  validate(params);
  if (!(T > burn_in)) throw DomainError("simulate_occupation: requires T > burn_in");
  OccupationAccumulator acc(burn_in);
  Rng rng(seed);
  run_chain(params, x0, StopRule::until(T), rng,
            [&](State x, double t0, double t1, State) { acc.add(x, t0, t1); });
  return acc.distribution();
}

std::vector<State> sample_state_at(const ChainParams& params, State x0, double t,
                                   std::size_t n_reps, std::uint64_t seed, unsigned threads) {
  validate(params);
  std::vector<State> out(n_reps, 0);
  const StopRule stop = StopRule::until(t);
  parallel_for(n_reps, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    out[i] = run_chain(params, x0, stop, rng, [](State, double, double, State) {}).final_state;
  });
  return out;
}

}  // namespace logistic
