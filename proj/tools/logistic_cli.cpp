// logistic: command-line front end for the logistic chain library.
//
// Exit status: 0 on success, 1 on a numerical or simulation failure, 2 on a
// usage error (bad flags, bad parameters).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "logistic/acceptance.hpp"
#include "logistic/errors.hpp"
#include "logistic/lattice.hpp"
#include "logistic/linear_oracle.hpp"
#include "logistic/passage_times.hpp"
#include "logistic/run_config.hpp"
#include "logistic/scaling_limits.hpp"
#include "logistic/simulator.hpp"
#include "logistic/special_functions.hpp"
#include "logistic/stationary.hpp"
#include "logistic/trajectory_io.hpp"

namespace {

using logistic::format_double;
using logistic::State;
using nlohmann::json;

constexpr const char* kOutputDirEnv = "LOGISTIC_OUTPUT_DIR";
// Above this many states the linear-solve oracle is skipped.
constexpr State kOracleLimit = 20000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double b = 2.0;
  double mu = 1.0;
  double gamma = 1.0;
  std::int64_t L = 100;
  std::string variant = "modified";
  bool exploratory = false;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out;
  std::string output = "csv";
  std::string config;
};

// Output sink: --out, else $LOGISTIC_OUTPUT_DIR/<command>.<ext>, else stdout.
class Sink {
 public:
  Sink(const std::string& out, const std::string& command, const std::string& ext, bool binary) {
    std::string path = out;
    if (path.empty()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        path = (std::filesystem::path(dir) / (command + "." + ext)).string();
      }
    }
    if (path.empty()) {
      if (binary) throw UsageError("binary output needs --out or " + std::string(kOutputDirEnv));
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
    if (!*file_) throw UsageError("cannot open output file " + path);
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  ~Sink() {
    if (file_) {
      file_->close();
      std::cerr << "wrote " << path_ << '\n';
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

json config_json(const logistic::RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : logistic::parse_key_values(cfg.to_text())) j[k] = v;
  return j;
}

json estimate_json(const logistic::PassageEstimate& e) {
  json j{{"mean", e.mean()},
         {"log_mean", e.log_mean_time},
         {"method", std::string(logistic::to_string(e.method))}};
  if (e.std_error) j["std_error"] = *e.std_error;
  if (e.regime) {
    j["regime"] = std::string(logistic::to_string(e.regime->kind));
    if (e.regime->h) j["h"] = *e.regime->h;
  }
  return j;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

// Builds argv with config-file entries ahead of the user's flags, so that an
// explicit flag (parsed later, last value wins) overrides the file.
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::vector<std::string>& commands) {
  std::string path;
  std::size_t sub_pos = 0;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (sub_pos == 0 && std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
      sub_pos = i;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> from_file;
  std::string command;
  for (const auto& [key, value] : logistic::parse_key_values(buf.str())) {
    if (key == "command") {
      command = value;
    } else {
      from_file.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> out{args[0]};
  if (sub_pos == 0) {
    if (command.empty()) throw UsageError("no subcommand given");
    out.push_back(command);
    out.insert(out.end(), from_file.begin(), from_file.end());
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
  }
  out.insert(out.end(), args.begin() + 1, args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logistic birth-death chain: stationary law, passage times, simulation, limits"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--b", c.b, "per-capita birth rate");
  app.add_option("--mu", c.mu, "per-capita mortality");
  app.add_option("--gamma", c.gamma, "competition weight");
  app.add_option("--L", c.L, "system size");
  app.add_option("--variant", c.variant, "modified or unmodified")
      ->check(CLI::IsMember({"modified", "unmodified"}));
  app.add_flag("--exploratory", c.exploratory, "allow b <= mu or gamma = 0 (simulation only)");
  app.add_option("--seed", c.seed, "master seed; generated and printed when omitted");
  app.add_option("--threads", c.threads, "worker threads for Monte-Carlo work")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output path (default: $" + std::string(kOutputDirEnv) +
                                     "/<command>.<ext> or stdout)");
  app.add_option("--output", c.output, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", c.config, "key=value file; explicit flags win");

  // stationary
  auto* st = app.add_subcommand("stationary", "invariant law with its Gaussian approximation");
  double tail_tol = 1e-12;
  st->add_option("--tail-tol", tail_tol, "bound on the mass above the truncation");

  // ldcheck
  auto* ld = app.add_subcommand("ldcheck", "large-deviation rate against the exact law");
  std::vector<std::int64_t> ld_Ls{1000, 10000, 100000};
  std::vector<double> ld_deltas{0.1, 0.3};
  ld->add_option("--Ls", ld_Ls, "system sizes")->delimiter(',');
  ld->add_option("--deltas", ld_deltas, "offsets delta (state n* + delta L)")->delimiter(',');

  // hypergeom
  auto* hg = app.add_subcommand("hypergeom", "F(A, z) by series, gamma function and asymptotics");
  double hg_A = 0.0;
  double hg_z = 0.0;
  double h_threshold = logistic::kDefaultHThreshold;
  hg->add_option("--A", hg_A, "first argument")->required();
  hg->add_option("--z", hg_z, "second argument")->required();
  hg->add_option("--h-threshold", h_threshold, "regime switch in |z - A| / sqrt(A)");

  // passage
  auto* pa = app.add_subcommand("passage", "mean first-passage or exit times");
  std::optional<State> pa_x;
  std::optional<State> pa_y;
  std::optional<double> pa_delta1;
  std::size_t pa_reps = 0;
  pa->add_option("--x", pa_x, "start state (with --y)");
  pa->add_option("--y", pa_y, "target state below x");
  pa->add_option("--delta1", pa_delta1, "symmetric exit from n*: lower offset");
  pa->add_option("--mc-reps", pa_reps, "Monte-Carlo replicates (0 = none)");

  // passage-mc
  auto* pm = app.add_subcommand("passage-mc", "Monte-Carlo first-passage summary");
  State pm_x0 = 0;
  std::vector<State> pm_targets;
  std::size_t pm_reps = 1000;
  std::uint64_t pm_cap = logistic::kDefaultEventCap;
  pm->add_option("--x0", pm_x0, "start state")->required();
  pm->add_option("--targets", pm_targets, "target states")->required()->delimiter(',');
  pm->add_option("--reps", pm_reps, "replicates")->check(CLI::PositiveNumber);
  pm->add_option("--event-cap", pm_cap, "events per replicate before giving up");

  // simulate
  auto* si = app.add_subcommand("simulate", "one exact trajectory");
  State si_x0 = 0;
  std::optional<double> si_T;
  std::vector<State> si_targets;
  std::string si_format = "csv";
  si->add_option("--x0", si_x0, "start state")->required();
  si->add_option("--T", si_T, "time limit");
  si->add_option("--targets", si_targets, "stop on hitting one of these")->delimiter(',');
  si->add_option("--format", si_format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}));

  // lattice
  auto* la = app.add_subcommand("lattice", "mean-field lattice model snapshots");
  std::int64_t la_n0 = 0;
  double la_T = 1.0;
  int la_snapshots = 10;
  std::string la_pairs = "include";
  la->add_option("--N0", la_n0, "initial particles, spread evenly")->required();
  la->add_option("--T", la_T, "time horizon");
  la->add_option("--snapshots", la_snapshots, "number of equally spaced snapshots after t = 0");
  la->add_option("--pairs", la_pairs, "competition self-pairs: include or exclude")
      ->check(CLI::IsMember({"include", "exclude"}));

  // limits
  auto* li = app.add_subcommand("limits", "fluid limit and fluctuation moments on a time grid");
  double li_z0 = 0.5;
  double li_zeta0 = 0.0;
  double li_T = 5.0;
  int li_steps = 10;
  std::size_t li_reps = 0;
  li->add_option("--z0", li_z0, "initial density");
  li->add_option("--zeta0", li_zeta0, "initial fluctuation");
  li->add_option("--T", li_T, "time horizon");
  li->add_option("--steps", li_steps, "grid intervals");
  li->add_option("--reps", li_reps, "Monte-Carlo replicates per grid time (0 = none)");

  // breiman
  auto* br = app.add_subcommand("breiman", "OU exit-rate thresholds A with nu(A) = m");
  int br_m_max = 6;
  br->add_option("--m-max", br_m_max, "largest m")->check(CLI::PositiveNumber);

  // validate
  auto* va = app.add_subcommand("validate", "acceptance suite, one PASS/FAIL line per criterion");
  bool va_quick = false;
  std::vector<std::string> va_only;
  va->add_flag("--quick", va_quick, "smaller Monte-Carlo samples");
  va->add_option("--only", va_only, "criterion ids")->delimiter(',');

  try {
    std::vector<std::string> args(argv, argv + argc);
    std::vector<std::string> commands;
    for (const CLI::App* sc : app.get_subcommands({})) commands.push_back(sc->get_name());
    args = merge_config(args, commands);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
      return app.exit(e) == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    logistic::RunConfig cfg;
    cfg.command = command;
    cfg.params.b = c.b;
    cfg.params.mu = c.mu;
    cfg.params.gamma = c.gamma;
    cfg.params.L = c.L;
    cfg.params.variant = logistic::parse_variant(c.variant);
    cfg.params.exploratory = c.exploratory;
    cfg.threads = c.threads;
    cfg.output = logistic::parse_output_format(c.output);
    if (command == "passage" || command == "passage-mc") cfg.output = logistic::OutputFormat::Json;
    for (const CLI::Option* opt : sub->get_options()) {
      const auto& names = opt->get_lnames();
      if (names.empty() || names.front() == "help") continue;
      std::vector<std::string> values = opt->results();
      if (values.empty()) {
        const std::string def = opt->get_default_str();
        if (def.empty() || def == "[]" || def == "{}") continue;
        values = {def};
      }
      std::string text = join(values);
      if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
        text = text.substr(1, text.size() - 2);
      }
      cfg.options[names.front()] = text;
    }
    try {
      logistic::validate(cfg.params);
    } catch (const logistic::DomainError& e) {
      throw UsageError(e.what());
    }

    const bool randomized = command == "passage-mc" || command == "simulate" ||
                            command == "lattice" || (command == "passage" && pa_reps > 0) ||
                            (command == "limits" && li_reps > 0);
    if (randomized) {
      if (!c.seed) {
        c.seed = fresh_seed();
        std::cerr << "seed: " << *c.seed << '\n';
      }
      cfg.seed = c.seed;
    }
    const logistic::ChainParams& params = cfg.params;
    const bool as_json = cfg.output == logistic::OutputFormat::Json;

    if (command == "stationary") {
      const logistic::StationaryLaw law = logistic::build_stationary(params, tail_tol);
      const State n_star = logistic::stationary_mode(params);
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      if (as_json) {
        json rows = json::array();
        for (State x = 0; x <= law.n_max; ++x) {
          const double g = logistic::local_clt_density(params, static_cast<double>(x - n_star));
          rows.push_back({{"x", x}, {"pi", law.pi(x)}, {"gauss", g}, {"ratio", law.pi(x) / g}});
        }
        sink.stream() << json{{"config", config_json(cfg)}, {"n_star", n_star},
                              {"n_max", law.n_max}, {"tail_bound", law.tail_bound},
                              {"rows", rows}}.dump(2)
                      << '\n';
      } else {
        auto& os = sink.stream();
        os << cfg.header() << "x,pi,gauss,ratio\n";
        for (State x = 0; x <= law.n_max; ++x) {
          const double g = logistic::local_clt_density(params, static_cast<double>(x - n_star));
          os << x << ',' << format_double(law.pi(x)) << ',' << format_double(g) << ','
             << format_double(law.pi(x) / g) << '\n';
        }
      }
    } else if (command == "ldcheck") {
      struct Row {
        std::int64_t L;
        double delta, measured, predicted;
      };
      std::vector<Row> rows;
      for (std::int64_t L : ld_Ls) {
        logistic::ChainParams p = params;
        p.L = L;
        const logistic::StationaryLaw law = logistic::build_stationary(p);
        const State n_star = logistic::stationary_mode(p);
        const double Ld = static_cast<double>(L);
        for (double delta : ld_deltas) {
          const State x = n_star + static_cast<State>(std::llround(delta * Ld));
          const double lp = x <= law.n_max ? law.log_pi(x)
                                           : logistic::log_stationary_weight(p, x) - law.log_norm;
          rows.push_back({L, delta, -lp - 0.5 * std::log(Ld), Ld * logistic::ld_rate(p, delta)});
        }
      }
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      if (as_json) {
        json arr = json::array();
        for (const Row& r : rows) {
          arr.push_back({{"L", r.L}, {"delta", r.delta}, {"measured", r.measured},
                         {"predicted", r.predicted}});
        }
        sink.stream() << json{{"config", config_json(cfg)}, {"rows", arr}}.dump(2) << '\n';
      } else {
        auto& os = sink.stream();
        os << cfg.header() << "L,delta,measured,predicted\n";
        for (const Row& r : rows) {
          os << r.L << ',' << format_double(r.delta) << ',' << format_double(r.measured) << ','
             << format_double(r.predicted) << '\n';
        }
      }
    } else if (command == "hypergeom") {
      struct Row {
        std::string method;
        std::optional<double> log_value;
        std::string regime;
        std::optional<double> h;
        std::string note;
      };
      std::vector<Row> rows;
      auto attempt = [&](const std::string& method, auto&& fn) {
        try {
          const logistic::HypergeomValue v = fn();
          rows.push_back({method, v.log_value, std::string(logistic::to_string(v.regime.kind)),
                          v.regime.h, ""});
        } catch (const logistic::DomainError& e) {
          rows.push_back({method, std::nullopt, "", std::nullopt, e.what()});
        }
      };
      attempt("series", [&] { return logistic::hypergeom_series(hg_A, hg_z); });
      attempt("gamma", [&] { return logistic::hypergeom_via_gamma(hg_A, hg_z); });
      attempt("asymptotic", [&] { return logistic::hypergeom_asymptotic(hg_A, hg_z, h_threshold); });
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      if (as_json) {
        json arr = json::array();
        for (const Row& r : rows) {
          json j{{"method", r.method}};
          j["log_value"] = r.log_value ? json(*r.log_value) : json(nullptr);
          if (!r.regime.empty()) j["regime"] = r.regime;
          if (r.h) j["h"] = *r.h;
          if (!r.note.empty()) j["note"] = r.note;
          arr.push_back(j);
        }
        sink.stream() << json{{"config", config_json(cfg)}, {"A", hg_A}, {"z", hg_z},
                              {"values", arr}}.dump(2)
                      << '\n';
      } else {
        auto& os = sink.stream();
        os << cfg.header() << "method,log_value,regime,h\n";
        for (const Row& r : rows) {
          os << r.method << ',' << (r.log_value ? format_double(*r.log_value) : "") << ','
             << r.regime << ',' << (r.h ? format_double(*r.h) : "") << '\n';
        }
      }
    } else if (command == "passage") {
      json result{{"config", config_json(cfg)}};
      if (pa_delta1) {
        if (pa_x || pa_y) throw UsageError("passage: give either --delta1 or --x/--y");
        const logistic::ExitAnalysis ex = logistic::mean_exit_symmetric(params, *pa_delta1);
        result["query"] = {{"delta1", ex.delta1}, {"delta2", ex.delta2}, {"n_star", ex.n_star},
                           {"n1", ex.n1},         {"n2", ex.n2}};
        result["exact"] = estimate_json(ex.exact);
        result["exact"]["exit_upper_probability"] = ex.exit_upper_probability;
        result["asymptotic"] = {{"log_mean", ex.log_asymptotic},
                                {"mean", std::exp(ex.log_asymptotic)},
                                {"log_half_psi1_n2", ex.log_half_psi1_n2}};
        if (ex.n2 - ex.n1 <= kOracleLimit) {
          const auto u = logistic::oracle::exit_times_by_linear_solve(params, ex.n1, ex.n2);
          const auto p = logistic::oracle::exit_upper_probability_by_linear_solve(params, ex.n1,
                                                                                   ex.n2);
          const auto i = static_cast<std::size_t>(ex.n_star - ex.n1);
          result["oracle"] = {{"mean", u[i]},
                              {"exit_upper_probability", p[i]},
                              {"method", "LinearSolveOracle"}};
        } else {
          result["oracle"] = nullptr;
        }
        if (pa_reps > 0) {
          const auto mc = logistic::sample_first_passage(params, ex.n_star, {ex.n1, ex.n2},
                                                         pa_reps, *c.seed, c.threads);
          result["monte_carlo"] = {{"mean", mc.mean},
                                   {"std_error", mc.std_error},
                                   {"n", pa_reps},
                                   {"exit_upper_fraction", mc.fraction_at(ex.n2)},
                                   {"method", "MonteCarlo"}};
        } else {
          result["monte_carlo"] = nullptr;
        }
      } else {
        if (!pa_x || !pa_y) throw UsageError("passage: needs --x and --y, or --delta1");
        const State x = *pa_x;
        const State y = *pa_y;
        if (!(y >= 0 && x > y)) throw UsageError("passage: requires x > y >= 0");
        result["query"] = {{"x", x}, {"y", y}};
        result["exact"] = estimate_json(logistic::mean_passage(params, x, y));
        std::vector<double> steps;
        std::vector<std::string> regimes;
        for (State k = y; k < x; ++k) {
          const auto e = logistic::mean_step_time_asymptotic(params, k, h_threshold);
          steps.push_back(e.log_mean_time);
          const std::string r(logistic::to_string(e.regime->kind));
          if (std::find(regimes.begin(), regimes.end(), r) == regimes.end()) regimes.push_back(r);
        }
        const double la = logistic::log_sum_exp(steps);
        result["asymptotic"] = {{"mean", std::exp(la)},
                                {"log_mean", la},
                                {"method", "HypergeomAsymptotic"},
                                {"regimes", regimes}};
        const State n_max = std::max(x, 2 * logistic::build_stationary(params).n_max);
        if (n_max - y <= kOracleLimit) {
          const auto u = logistic::oracle::hitting_times_by_linear_solve(params, y, n_max);
          result["oracle"] = {{"mean", u[static_cast<std::size_t>(x - y)]},
                              {"method", "LinearSolveOracle"}};
        } else {
          result["oracle"] = nullptr;
        }
        if (pa_reps > 0) {
          const auto mc =
              logistic::sample_first_passage(params, x, {y}, pa_reps, *c.seed, c.threads);
          result["monte_carlo"] = {
              {"mean", mc.mean}, {"std_error", mc.std_error}, {"n", pa_reps}, {"method", "MonteCarlo"}};
        } else {
          result["monte_carlo"] = nullptr;
        }
      }
      Sink sink(c.out, command, "json", false);
      sink.stream() << result.dump(2) << '\n';
    } else if (command == "passage-mc") {
      const auto mc = logistic::sample_first_passage(params, pm_x0, pm_targets, pm_reps, *c.seed,
                                                     c.threads, pm_cap);
      json fractions = json::object();
      for (State t : pm_targets) fractions[std::to_string(t)] = mc.fraction_at(t);
      Sink sink(c.out, command, "json", false);
      sink.stream() << json{{"config", config_json(cfg)},
                            {"x0", pm_x0},
                            {"targets", pm_targets},
                            {"n", pm_reps},
                            {"mean", mc.mean},
                            {"std_error", mc.std_error},
                            {"hit_fractions", fractions}}
                           .dump(2)
                    << '\n';
    } else if (command == "simulate") {
      logistic::StopRule stop;
      stop.time_limit = si_T;
      stop.targets = si_targets;
      if (!si_T && si_targets.empty()) throw UsageError("simulate: needs --T or --targets");
      const logistic::Trajectory traj = logistic::simulate(params, si_x0, stop, *c.seed);
      const bool binary = si_format == "binary";
      Sink sink(c.out, command, binary ? "lgtr" : "csv", binary);
      if (binary) {
        logistic::write_trajectory_binary(sink.stream(), traj);
      } else {
        logistic::write_trajectory_csv(sink.stream(), traj, cfg.header());
      }
    } else if (command == "lattice") {
      if (la_snapshots < 1) throw UsageError("lattice: --snapshots must be >= 1");
      logistic::LatticeOptions lo;
      lo.pairs = la_pairs == "include" ? logistic::CompetitionPairs::IncludeSelf
                                       : logistic::CompetitionPairs::ExcludeSelf;
      for (int i = 0; i <= la_snapshots; ++i) lo.snapshot_times.push_back(la_T * i / la_snapshots);
      lo.record_totals = false;
      const auto run = logistic::simulate_mean_field_lattice(
          params, logistic::LatticeState::uniform(params.L, la_n0), la_T, *c.seed, lo);
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      if (as_json) {
        json snaps = json::array();
        for (const auto& s : run.snapshots) {
          snaps.push_back({{"time", s.time}, {"total", s.state.total}, {"sites", s.state.site_counts}});
        }
        sink.stream() << json{{"config", config_json(cfg)}, {"snapshots", snaps}}.dump(2) << '\n';
      } else {
        auto& os = sink.stream();
        os << cfg.header() << "time,total";
        for (std::int64_t i = 0; i < params.L; ++i) os << ",site" << i;
        os << '\n';
        for (const auto& s : run.snapshots) {
          os << format_double(s.time) << ',' << s.state.total;
          for (auto n : s.state.site_counts) os << ',' << n;
          os << '\n';
        }
      }
    } else if (command == "limits") {
      if (li_steps < 1) throw UsageError("limits: --steps must be >= 1");
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      json rows = json::array();
      auto& os = sink.stream();
      if (!as_json) os << cfg.header() << "t,Z,mean,var,empirical_mean,empirical_var\n";
      for (int i = 0; i <= li_steps; ++i) {
        const double t = li_T * i / li_steps;
        const double Z = logistic::fluid_solution(params, li_z0, t).z;
        const logistic::GaussMoments m = logistic::clt_moments(params, li_z0, li_zeta0, t);
        std::optional<logistic::FluctuationSample> emp;
        if (li_reps > 0) {
          emp = logistic::sample_fluctuations(params, li_z0, li_zeta0, t, li_reps,
                                              logistic::derive_seed(*c.seed, i), c.threads);
        }
        if (as_json) {
          json r{{"t", t}, {"Z", Z}, {"mean", m.mean}, {"var", m.variance}};
          r["empirical_mean"] = emp ? json(emp->mean) : json(nullptr);
          r["empirical_var"] = emp ? json(emp->variance) : json(nullptr);
          rows.push_back(r);
        } else {
          os << format_double(t) << ',' << format_double(Z) << ',' << format_double(m.mean) << ','
             << format_double(m.variance) << ',' << (emp ? format_double(emp->mean) : "") << ','
             << (emp ? format_double(emp->variance) : "") << '\n';
        }
      }
      if (as_json) os << json{{"config", config_json(cfg)}, {"rows", rows}}.dump(2) << '\n';
    } else if (command == "breiman") {
      Sink sink(c.out, command, as_json ? "json" : "csv", false);
      auto& os = sink.stream();
      json rows = json::array();
      if (!as_json) os << cfg.header() << "m,A\n";
      for (int m = 1; m <= br_m_max; ++m) {
        const double A = logistic::breiman_nu(m);
        if (as_json) {
          rows.push_back({{"m", m}, {"A", A}});
        } else {
          os << m << ',' << format_double(A) << '\n';
        }
      }
      if (as_json) os << json{{"config", config_json(cfg)}, {"rows", rows}}.dump(2) << '\n';
    } else if (command == "validate") {
      logistic::SuiteOptions so;
      so.quick = va_quick;
      so.threads = c.threads;
      if (c.seed) so.seed = *c.seed;
      so.only = va_only;
      Sink sink(c.out, command, "txt", false);
      auto& os = sink.stream();
      int failures = 0;
      int count = 0;
      logistic::run_acceptance(so, [&](const logistic::CriterionResult& r) {
        os << logistic::format_result_line(r) << '\n' << std::flush;
        failures += !r.passed;
        ++count;
      });
      if (count == 0) throw UsageError("validate: no criterion matches --only");
      os << (count - failures) << "/" << count << " criteria passed\n";
      return failures == 0 ? 0 : 1;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const logistic::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
