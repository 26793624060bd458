// sqzent: two-cavity entanglement dynamics in squeezed-vacuum reservoirs.
//
//   sqzent evolve   [flags]            one trajectory -> CSV
//   sqzent sweep    [flags] --param P  long-format CSV over a parameter grid
//   sqzent figure   ID [flags]         preset datasets (2a ... 9)
//   sqzent steady   [flags]            single-mode steady-state report
//   sqzent selftest [--criterion K]    acceptance suite
//
// Exit codes: 0 ok, 1 selftest failure, 2 invalid input, 3 numerical failure,
// 4 I/O error.

#include <cstdlib>
#include <iostream>
#include <list>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sqzent/error.hpp"
#include "sqzent/runner.hpp"
#include "sqzent/selftest.hpp"

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

// Flags that were given on the command line, in declaration order.
class FlagSet {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& help) {
    auto& slot = slots_.emplace_back();
    slot.key = key;
    slot.option = app->add_option("--" + key, slot.value, help);
  }

  Pairs given() const {
    Pairs out;
    for (const auto& s : slots_)
      if (s.option->count() > 0) out.emplace_back(s.key, s.value);
    return out;
  }

 private:
  struct Slot {
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
  };
  std::list<Slot> slots_;  // stable addresses for CLI11's bound references
};

void add_run_flags(CLI::App* app, FlagSet& flags) {
  flags.add(app, "config", "JSON file of flat key/value settings; flags override it");
  flags.add(app, "topology", "separate|common");
  flags.add(app, "init", "noon|epr");
  flags.add(app, "n", "excitation number 1|2");
  flags.add(app, "alpha", "mixing angle (rad)");
  flags.add(app, "psi", "initial-state phase (rad)");
  flags.add(app, "N", "mean photon number of the reservoir");
  flags.add(app, "M", "squeezing correlation |M|, or 'max' for sqrt(N(N+1))");
  flags.add(app, "theta", "squeezing phase (rad)");
  flags.add(app, "kappa", "decay rate; time is reported as kappa*t");
  flags.add(app, "tmax", "final kappa*t");
  flags.add(app, "step", "RK4 step in kappa*t");
  flags.add(app, "samples", "output intervals over [0, tmax]");
  flags.add(app, "nmax", "photon cutoff per mode");
  flags.add(app, "method", "rk4|expm");
  flags.add(app, "observables", "comma list of observables");
  flags.add(app, "out", "output CSV path ('-' for stdout)");
  flags.add(app, "threads", "worker threads for sweeps (0: all cores)");
}

void add_sweep_flags(CLI::App* app, FlagSet& flags) {
  flags.add(app, "param", "m_mag|theta|alpha|n_mean");
  flags.add(app, "from", "first value");
  flags.add(app, "to", "last value ('max' for the squeezing bound when sweeping m_mag)");
  flags.add(app, "points", "number of grid points");
  flags.add(app, "summary", "per-point summary CSV (sudden death, revival, final values)");
}

// Settings from --config followed by explicit flags.
Pairs collect(const FlagSet& flags) {
  const auto given = flags.given();
  Pairs out;
  for (const auto& [k, v] : given)
    if (k == "config") out = sqzent::load_config_file(v);
  for (const auto& kv : given)
    if (kv.first != "config") out.push_back(kv);
  return out;
}

unsigned parse_threads(const std::string& v) {
  try {
    const long t = std::stol(v);
    if (t >= 0) return static_cast<unsigned>(t);
  } catch (const std::exception&) {
  }
  throw sqzent::InvalidArgument("threads must be a non-negative integer");
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw sqzent::InvalidArgument("option '" + key + "': '" + v + "' is not a number");
}

int cmd_evolve(const Pairs& settings) {
  sqzent::RunConfig c;
  for (const auto& [k, v] : settings) {
    if (k == "threads") continue;
    if (!sqzent::apply_option(c, k, v))
      throw sqzent::InvalidArgument("evolve: unknown setting '" + k + "'");
  }
  sqzent::write_csv(sqzent::run_evolve(c), c.out);
  return 0;
}

int cmd_sweep(const Pairs& settings) {
  sqzent::SweepSpec s;
  std::string to_text, summary;
  bool have_param = false, have_from = false, have_to = false;
  for (const auto& [k, v] : settings) {
    if (k == "param") { s.param = v; have_param = true; }
    else if (k == "from") { s.from = parse_real(k, v); have_from = true; }
    else if (k == "to") { to_text = v; have_to = true; }
    else if (k == "points") {
      const long p = std::strtol(v.c_str(), nullptr, 10);
      if (p < 1) throw sqzent::InvalidArgument("points must be >= 1");
      s.points = static_cast<std::size_t>(p);
    }
    else if (k == "summary") summary = v;
    else if (k == "threads") s.threads = parse_threads(v);
    else if (!sqzent::apply_option(s.base, k, v))
      throw sqzent::InvalidArgument("sweep: unknown setting '" + k + "'");
  }
  if (!have_param || !have_from || !have_to)
    throw sqzent::InvalidArgument("sweep needs --param, --from and --to");
  if (to_text == "max") {
    if (s.param != "m_mag") throw sqzent::InvalidArgument("'--to max' applies to m_mag sweeps");
    s.to = sqzent::max_squeezing(s.base.reservoir);
  } else {
    s.to = parse_real("to", to_text);
  }
  const auto res = sqzent::run_sweep(s);
  sqzent::write_csv(res.data, s.base.out);
  if (!summary.empty()) sqzent::write_csv(res.summary, summary);
  return 0;
}

int cmd_figure(const std::string& id, const Pairs& settings) {
  Pairs overrides;
  std::string out, summary;
  unsigned threads = 0;
  for (const auto& [k, v] : settings) {
    if (k == "out") out = v;
    else if (k == "summary") summary = v;
    else if (k == "threads") threads = parse_threads(v);
    else if (k == "param") throw sqzent::InvalidArgument("figure presets fix the swept parameter");
    else overrides.emplace_back(k, v);
  }
  const auto res = sqzent::run_figure(id, overrides, threads);
  sqzent::write_csv(res.data, out);
  if (!summary.empty()) {
    if (res.summary.columns.empty())
      throw sqzent::InvalidArgument("figure " + id + " is a single evolution; no summary");
    sqzent::write_csv(res.summary, summary);
  }
  return 0;
}

int cmd_steady(const Pairs& settings) {
  sqzent::RunConfig c;
  c.n_max = 12;
  for (const auto& [k, v] : settings) {
    if (k == "N" || k == "M" || k == "theta" || k == "kappa" || k == "nmax" || k == "out" ||
        k == "topology") {
      sqzent::apply_option(c, k, v);
    } else if (k != "threads") {
      throw sqzent::InvalidArgument("steady: setting '" + k + "' does not apply");
    }
  }
  if (c.m_at_max) c.reservoir.m_mag = sqzent::max_squeezing(c.reservoir);
  sqzent::write_csv(sqzent::to_dataset(sqzent::run_steady(c.reservoir, c.n_max)), c.out);
  return 0;
}

int cmd_selftest(const std::vector<int>& criteria, unsigned threads) {
  bool all = true;
  for (const auto& r : sqzent::run_acceptance(criteria, threads)) {
    std::cout << sqzent::format_result(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of two cavity modes in squeezed-vacuum reservoirs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sqzent " + sqzent::artifact_version());

  FlagSet evolve_flags, sweep_flags, figure_flags, steady_flags;
  auto* evolve = app.add_subcommand("evolve", "evolve one initial state and sample observables");
  add_run_flags(evolve, evolve_flags);

  auto* sweep = app.add_subcommand("sweep", "evolve over a grid of one parameter");
  add_run_flags(sweep, sweep_flags);
  add_sweep_flags(sweep, sweep_flags);

  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "preset datasets; flags override preset values");
  figure->add_option("id", figure_id, "figure id (2a 2b 3a 3b 4a 4b 5a 5b 6 7a 7b 8a 8b 9)")
      ->required();
  add_run_flags(figure, figure_flags);
  add_sweep_flags(figure, figure_flags);

  auto* steady = app.add_subcommand("steady", "single-mode steady-state photon statistics");
  for (const char* key : {"config", "topology", "N", "M", "theta", "kappa", "nmax", "out"})
    steady_flags.add(steady, key, "see 'evolve --help'");

  std::vector<int> criteria;
  std::string selftest_threads = "0";
  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--criterion", criteria, "criterion number (repeatable; default all)");
  selftest->add_option("--threads", selftest_threads, "threads for the sweep determinism check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(collect(evolve_flags));
    if (sweep->parsed()) return cmd_sweep(collect(sweep_flags));
    if (figure->parsed()) return cmd_figure(figure_id, collect(figure_flags));
    if (steady->parsed()) return cmd_steady(collect(steady_flags));
    if (selftest->parsed()) return cmd_selftest(criteria, parse_threads(selftest_threads));
  } catch (const std::exception& e) {
    std::cerr << "sqzent: " << e.what() << '\n';
    return sqzent::exit_code_for(e);
  }
  return 0;
}
