#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqzent/fock.hpp"
#include "sqzent/lindblad.hpp"
#include "sqzent/propagator.hpp"

namespace sqzent {

enum class Method { Rk4, Expm };

struct RunConfig {
  ReservoirSpec reservoir;
  /// When set, |M| follows the mean photon number: sqrt(N(N+1)).
  bool m_at_max = false;
  InitialStateSpec initial;
  int n_max = 2;
  double t_end = 5.0;
  double step = 1e-3;
  /// Output rows are at k * t_end / samples, k = 0..samples.
  std::size_t samples = 500;
  Method method = Method::Rk4;
  std::vector<std::string> observables{"concurrence"};
  std::string out;  // empty or "-" writes to stdout
};

/// Names accepted in RunConfig::observables.
const std::vector<std::string>& observable_names();

/// Resolves m_at_max and checks every field. Throws InvalidArgument.
RunConfig resolved(RunConfig config);

/// Sets one field from its textual form. Keys are the CLI flag names without
/// dashes: topology, init, n, alpha, psi, N, M (a number or "max"), theta,
/// kappa, tmax, step, samples, nmax, method, observables, out.
/// Returns false for an unknown key.
bool apply_option(RunConfig& config, const std::string& key, const std::string& value);

/// Flat key/value pairs from a JSON object. Numbers keep their shortest
/// round-trip representation and arrays are joined with commas. Throws
/// IoError when the file cannot be read and InvalidArgument when it does not
/// hold a flat JSON object.
std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path);

/// A CSV table with '#' metadata lines.
struct Dataset {
  std::vector<std::string> metadata;  // written as "# <line>"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

/// Shortest text that round-trips at 17 significant digits.
std::string format_number(double v);

void write_csv(const Dataset& data, std::ostream& os);
/// Writes to `path`, or stdout for "" and "-". Throws IoError.
void write_csv(const Dataset& data, const std::string& path);

/// Columns for the requested observables, in request order.
std::vector<std::string> observable_columns(const std::vector<std::string>& observables,
                                            const ModeBasis& basis);
std::vector<double> observable_row(const std::vector<std::string>& observables,
                                   const DensityMatrix& rho);

/// Evolves config.initial and samples the observables.
Trajectory simulate(const RunConfig& config);
Dataset run_evolve(const RunConfig& config);

struct SweepSpec {
  std::string param = "m_mag";  // m_mag | theta | alpha | n_mean
  double from = 0.0;
  double to = 0.0;
  std::size_t points = 2;
  RunConfig base;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
};

std::vector<double> sweep_values(const SweepSpec& spec);
/// Config for one sweep value (validated).
RunConfig sweep_point_config(const SweepSpec& spec, double value);

/// Sudden death and revival of a non-negative measure sampled on a
/// trajectory: the first time it drops below kEsdThreshold and, after that,
/// the first time it rises above it again.
struct EsdEvents {
  std::optional<double> death;
  std::optional<double> revival;
};
inline constexpr double kEsdThreshold = 1e-9;
inline constexpr double kEsdTimeTol = 1e-6;

/// Locates events on the sampled curve and refines each crossing by
/// bisection with exact propagation from the bracketing snapshot.
EsdEvents find_esd(const Superoperator& l, const Trajectory& traj, const std::string& measure);

struct SweepResult {
  Dataset data;     // long format: param, t, observables...
  Dataset summary;  // one row per point: param, esd/revival of the first measure, final values
};

/// Points run independently on a worker pool; output order is by swept value
/// then time regardless of the thread count.
SweepResult run_sweep(const SweepSpec& spec);

const std::vector<std::string>& figure_ids();

/// A figure preset is either a single evolution or a sweep.
struct FigurePreset {
  std::string id;
  std::string description;
  std::optional<SweepSpec> sweep;
  RunConfig evolve;
};

/// Preset for a figure id with key/value overrides applied on top. Throws
/// InvalidArgument for an unknown id.
FigurePreset figure_preset(const std::string& id,
                           const std::vector<std::pair<std::string, std::string>>& overrides = {});
/// Runs the preset; overrides are recorded in the metadata.
SweepResult run_figure(const std::string& id,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {},
                       unsigned threads = 0);

struct SteadyReport {
  ReservoirSpec reservoir;
  int n_max = 12;
  RegimeClass regime = RegimeClass::Vacuum;
  std::vector<double> populations;  // P_0..P_{n_max}
  std::vector<double> ratios;       // R_1..R_{n_max}
  std::vector<double> residual_printed;    // n = 1..n_max-2
  std::vector<double> residual_corrected;  // n = 1..n_max-2
  double trace = 1.0;
  double min_eigenvalue = 0.0;
};

/// Single-mode steady state of a squeezed reservoir with mean photon number
/// reservoir.n_mean_a.
SteadyReport run_steady(const ReservoirSpec& reservoir, int n_max);
Dataset to_dataset(const SteadyReport& report);

/// "# key = value" metadata lines describing a configuration.
std::vector<std::string> describe(const RunConfig& config);

std::string to_string(Method m);
std::string artifact_version();

}  // namespace sqzent
