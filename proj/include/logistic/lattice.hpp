#pragma once

// Mean-field lattice model on L sites. Every particle gives birth at rate b
// and places the offspring on a uniformly chosen site; the population dies at
// total rate mu N + gamma N^2 / L (or gamma N (N - 1) / L without self-pairs),
// the victim being a uniformly chosen particle. An empty box of the
// unmodified chain receives an immigrant at rate beta_0 = 1, and the modified
// chain adds immigration at rate b. The total count is then the logistic chain.

#include <cstdint>
#include <vector>

#include "logistic/chain_model.hpp"
#include "logistic/simulator.hpp"

namespace logistic {

enum class CompetitionPairs {
  IncludeSelf,  // gamma N^2 / L, matches the chain's down-rate
  ExcludeSelf,  // gamma N (N - 1) / L
};

struct LatticeState {
  std::vector<std::int64_t> site_counts;
  std::int64_t total = 0;

  static LatticeState uniform(std::int64_t sites, std::int64_t n);
  bool consistent() const;
};

struct LatticeSnapshot {
  double time = 0.0;
  LatticeState state;
};

struct LatticeRun {
  std::vector<LatticeSnapshot> snapshots;  // at the requested grid times
  Trajectory totals;                       // N(t), same format as simulate()
  LatticeState final_state;
};

struct LatticeOptions {
  CompetitionPairs pairs = CompetitionPairs::IncludeSelf;
  std::vector<double> snapshot_times;
  bool record_totals = true;
  // Checks the site sum against the total after every event.
  bool check_invariant = false;
  std::uint64_t event_cap = kDefaultEventCap;
};

LatticeRun simulate_mean_field_lattice(const ChainParams& params, const LatticeState& initial,
                                       double T, std::uint64_t seed,
                                       const LatticeOptions& options = {});

}  // namespace logistic
