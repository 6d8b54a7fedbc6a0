#include "logistic/lattice.hpp"

#include <algorithm>
#include <string>

#include "logistic/errors.hpp"
#include "logistic/rng.hpp"

namespace logistic {

namespace {

// Fenwick tree over site counts, for drawing a uniformly chosen particle.
class Fenwick {
 public:
  explicit Fenwick(const std::vector<std::int64_t>& counts) : tree_(counts.size() + 1, 0) {
    for (std::size_t i = 0; i < counts.size(); ++i) add(i, counts[i]);
  }

  void add(std::size_t i, std::int64_t delta) {
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  // Smallest site whose cumulative count exceeds r, for 0 <= r < total.
  std::size_t find(std::int64_t r) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= r) {
        pos += step;
        r -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace

LatticeState LatticeState::uniform(std::int64_t sites, std::int64_t n) {
  if (sites < 1 || n < 0) throw DomainError("LatticeState::uniform: requires sites >= 1, n >= 0");
  LatticeState s;
  s.site_counts.assign(static_cast<std::size_t>(sites), n / sites);
  for (std::int64_t i = 0; i < n % sites; ++i) ++s.site_counts[static_cast<std::size_t>(i)];
  s.total = n;
  return s;
}

bool LatticeState::consistent() const {
  std::int64_t sum = 0;
  for (auto c : site_counts) {
    if (c < 0) return false;
    sum += c;
  }
  return sum == total;
}

LatticeRun simulate_mean_field_lattice(const ChainParams& params, const LatticeState& initial,
                                       double T, std::uint64_t seed,
                                       const LatticeOptions& options) {
  validate(params);
  if (static_cast<std::int64_t>(initial.site_counts.size()) != params.L) {
    throw DomainError("simulate_mean_field_lattice: need exactly L sites");
  }
  if (!initial.consistent()) {
    throw DomainError("simulate_mean_field_lattice: site counts do not sum to total");
  }
  if (!(T >= 0.0)) throw DomainError("simulate_mean_field_lattice: requires T >= 0");
  std::vector<double> grid = options.snapshot_times;
  std::sort(grid.begin(), grid.end());

  LatticeRun run;
  run.totals.params = params;
  run.totals.seed = seed;
  run.totals.events.push_back({0.0, initial.total});
  LatticeState state = initial;
  Fenwick tree(state.site_counts);
  Rng rng(seed);
  const double L = static_cast<double>(params.L);
  auto sites = static_cast<std::uint64_t>(params.L);
  std::size_t next_snapshot = 0;
  double t = 0.0;
  std::uint64_t events = 0;

  for (;;) {
    const double n = static_cast<double>(state.total);
    const double birth = beta(params, state.total);
    const double pairs = options.pairs == CompetitionPairs::IncludeSelf ? n * n : n * (n - 1.0);
    const double death = params.mu * n + params.gamma * pairs / L;
    const double total_rate = birth + death;
    const double t_next = total_rate > 0.0 ? t + rng.exponential(total_rate)
                                           : std::numeric_limits<double>::infinity();
    while (next_snapshot < grid.size() && grid[next_snapshot] < std::min(t_next, T)) {
      run.snapshots.push_back({grid[next_snapshot++], state});
    }
    if (t_next >= T) {
      while (next_snapshot < grid.size() && grid[next_snapshot] <= T) {
        run.snapshots.push_back({grid[next_snapshot++], state});
      }
      run.totals.stop_reason = total_rate > 0.0 ? StopReason::TimeLimit : StopReason::Absorbed;
      run.totals.end_time = T;
      break;
    }
    t = t_next;
    if (rng.uniform() * total_rate < birth) {
      const auto site = static_cast<std::size_t>(rng.below(sites));
      ++state.site_counts[site];
      tree.add(site, 1);
      ++state.total;
    } else {
      const auto victim = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(state.total)));
      const std::size_t site = tree.find(victim);
      --state.site_counts[site];
      tree.add(site, -1);
      --state.total;
    }
    if (options.record_totals) run.totals.events.push_back({t, state.total});
    if (options.check_invariant && !state.consistent()) {
      throw SimulationError("simulate_mean_field_lattice: site sum diverged from total at t = " +
                            std::to_string(t));
    }
    if (++events >= options.event_cap) {
      throw SimulationError("simulate_mean_field_lattice: event cap reached");
    }
  }
  run.final_state = std::move(state);
  return run;
}

}  // namespace logistic
