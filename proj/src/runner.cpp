#include "sqzent/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "sqzent/error.hpp"
#include "sqzent/measures.hpp"

#ifndef SQZENT_VERSION
#define SQZENT_VERSION "0.0.0"
#endif

namespace sqzent {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Coherences reported by name: (first label, second label, sector n).
struct NamedElement {
  const char* name;
  int i;
  int j;
  int n;
};
constexpr NamedElement kElements[] = {
    {"rho14", 1, 4, 1}, {"rho23", 2, 3, 1}, {"rho15", 1, 5, 2},
    {"rho19", 1, 9, 2}, {"rho37", 3, 7, 2},
};

const NamedElement* find_element(const std::string& name) {
  for (const auto& e : kElements)
    if (name == e.name) return &e;
  return nullptr;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw InvalidArgument("option '" + key + "': '" + value + "' is not a finite number");
  return out;
}

long parse_integer(const std::string& key, const std::string& value) {
  long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument("option '" + key + "': '" + value + "' is not an integer");
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? "," : "") + items[k];
  return out;
}

bool is_measure(const std::string& name) {
  return name == "concurrence" || name == "log_negativity";
}

double measure_of(const std::string& name, const DensityMatrix& rho) {
  return name == "concurrence" ? concurrence_wootters(rho).value : log_negativity(rho).value;
}

Trajectory simulate_with(const Superoperator& l, const RunConfig& c) {
  const auto rho0 = build_initial_state(c.initial, l.basis());
  if (c.t_end == 0.0) return Trajectory{{0.0}, {rho0}};
  if (c.method == Method::Expm) return evolve_expm_grid(l, rho0, c.t_end, c.samples);
  // Whole number of RK4 steps per output interval, each no longer than c.step.
  const std::size_t sub = step_count(c.t_end / static_cast<double>(c.samples), c.step);
  const double h = c.t_end / static_cast<double>(c.samples * sub);
  return evolve_rk4(l, rho0, c.t_end, h, sub);
}

ModeBasis basis_of(const RunConfig& c) { return ModeBasis(c.n_max, c.n_max); }

std::vector<std::string> header_lines(const std::string& command) {
  return {"sqzent " + artifact_version(), "command = " + command};
}

}  // namespace

std::string artifact_version() { return SQZENT_VERSION; }

std::string to_string(Method m) { return m == Method::Rk4 ? "rk4" : "expm"; }

const std::vector<std::string>& observable_names() {
  static const std::vector<std::string> names{
      "concurrence", "log_negativity", "rho14", "rho23",          "rho15",
      "rho19",       "rho37",          "populations", "trace", "min_eigenvalue"};
  return names;
}

RunConfig resolved(RunConfig c) {
  if (c.m_at_max) c.reservoir.m_mag = max_squeezing(c.reservoir);
  validate(c.reservoir);
  validate(c.initial);
  if (c.n_max < 1) throw InvalidArgument("nmax must be >= 1");
  if (c.n_max < c.initial.n)
    throw InvalidArgument("nmax " + std::to_string(c.n_max) +
                          " is smaller than the excitation number " +
                          std::to_string(c.initial.n));
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) throw InvalidArgument("tmax must be >= 0");
  if (!(c.step > 0.0) || !std::isfinite(c.step)) throw InvalidArgument("step must be > 0");
  if (c.samples < 1) throw InvalidArgument("samples must be >= 1");
  if (c.observables.empty()) throw InvalidArgument("no observables requested");
  std::set<std::string> seen;
  const auto& known = observable_names();
  for (const auto& o : c.observables) {
    if (std::find(known.begin(), known.end(), o) == known.end())
      throw InvalidArgument("unknown observable '" + o + "' (known: " + join(known) + ")");
    if (!seen.insert(o).second) throw InvalidArgument("observable '" + o + "' requested twice");
    if (const auto* e = find_element(o); e && c.n_max < e->n)
      throw InvalidArgument("observable '" + o + "' needs nmax >= " + std::to_string(e->n));
  }
  return c;
}

bool apply_option(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "topology") {
    c.reservoir.topology = parse_topology(value);
  } else if (key == "init") {
    c.initial.family = parse_state_family(value);
  } else if (key == "n") {
    c.initial.n = static_cast<int>(parse_integer(key, value));
  } else if (key == "alpha") {
    c.initial.alpha = parse_double(key, value);
  } else if (key == "psi") {
    c.initial.psi = parse_double(key, value);
  } else if (key == "N") {
    c.reservoir.n_mean_a = c.reservoir.n_mean_b = parse_double(key, value);
  } else if (key == "M") {
    c.m_at_max = value == "max";
    if (!c.m_at_max) c.reservoir.m_mag = parse_double(key, value);
  } else if (key == "theta") {
    c.reservoir.theta = parse_double(key, value);
  } else if (key == "kappa") {
    c.reservoir.kappa = parse_double(key, value);
  } else if (key == "tmax") {
    c.t_end = parse_double(key, value);
  } else if (key == "step") {
    c.step = parse_double(key, value);
  } else if (key == "samples") {
    const long s = parse_integer(key, value);
    if (s < 1) throw InvalidArgument("samples must be >= 1");
    c.samples = static_cast<std::size_t>(s);
  } else if (key == "nmax") {
    c.n_max = static_cast<int>(parse_integer(key, value));
  } else if (key == "method") {
    if (value == "rk4") c.method = Method::Rk4;
    else if (value == "expm") c.method = Method::Expm;
    else throw InvalidArgument("unknown method '" + value + "' (expected rk4|expm)");
  } else if (key == "observables") {
    c.observables = split_list(value);
  } else if (key == "out") {
    c.out = value;
  } else {
    return false;
  }
  return true;
}

std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config file '" + path + "' must hold a JSON object");
  auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    throw InvalidArgument("config key '" + key + "' must be a string, number or array of them");
  };
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, v] : j.items()) {
    if (v.is_array()) {
      std::vector<std::string> parts;
      for (const auto& item : v) parts.push_back(scalar(key, item));
      out.emplace_back(key, join(parts));
    } else {
      out.emplace_back(key, scalar(key, v));
    }
  }
  return out;
}

std::size_t Dataset::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("dataset has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const Dataset& data, std::ostream& os) {
  for (const auto& m : data.metadata) os << "# " << m << '\n';
  os << join(data.columns) << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
    os << '\n';
  }
}

void write_csv(const Dataset& data, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(data, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(data, out);
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<std::string> observable_columns(const std::vector<std::string>& observables,
                                            const ModeBasis& basis) {
  std::vector<std::string> cols;
  for (const auto& o : observables) {
    if (find_element(o)) {
      cols.push_back("re_" + o);
      cols.push_back("im_" + o);
      cols.push_back("abs_" + o);
    } else if (o == "populations") {
      for (std::size_t k = 0; k < basis.dim(); ++k) {
        const auto [a, b] = basis.occupations(k);
        cols.push_back("p_" + std::to_string(a) + "_" + std::to_string(b));
      }
    } else {
      cols.push_back(o);
    }
  }
  return cols;
}

std::vector<double> observable_row(const std::vector<std::string>& observables,
                                   const DensityMatrix& rho) {
  std::vector<double> row;
  for (const auto& o : observables) {
    if (const auto* e = find_element(o)) {
      const cplx v = rho.element(e->i, e->j, e->n);
      row.push_back(v.real());
      row.push_back(v.imag());
      row.push_back(std::abs(v));
    } else if (o == "populations") {
      for (std::size_t k = 0; k < rho.dim(); ++k) row.push_back(rho(k, k).real());
    } else if (o == "trace") {
      row.push_back(rho.matrix().trace().real());
    } else if (o == "min_eigenvalue") {
      row.push_back(rho.min_eigenvalue());
    } else if (is_measure(o)) {
      row.push_back(measure_of(o, rho));
    } else {
      throw InvalidArgument("unknown observable '" + o + "'");
    }
  }
  return row;
}

std::vector<std::string> describe(const RunConfig& c) {
  return {
      "topology = " + to_string(c.reservoir.topology),
      "init = " + to_string(c.initial.family),
      "n = " + std::to_string(c.initial.n),
      "alpha = " + format_number(c.initial.alpha),
      "psi = " + format_number(c.initial.psi),
      "N = " + format_number(c.reservoir.n_mean_a),
      "M = " + format_number(c.reservoir.m_mag) + (c.m_at_max ? " (max)" : ""),
      "theta = " + format_number(c.reservoir.theta),
      "kappa = " + format_number(c.reservoir.kappa),
      "tmax = " + format_number(c.t_end),
      "step = " + format_number(c.step),
      "samples = " + std::to_string(c.samples),
      "nmax = " + std::to_string(c.n_max),
      "method = " + to_string(c.method),
      "observables = " + join(c.observables),
  };
}

Trajectory simulate(const RunConfig& config) {
  const auto c = resolved(config);
  return simulate_with(build_liouvillian(c.reservoir, basis_of(c)), c);
}

Dataset run_evolve(const RunConfig& config) {
  const auto c = resolved(config);
  const auto basis = basis_of(c);
  const auto traj = simulate_with(build_liouvillian(c.reservoir, basis), c);
  Dataset d;
  d.metadata = header_lines("evolve");
  for (auto& line : describe(c)) d.metadata.push_back(std::move(line));
  d.columns = {"t"};
  for (auto& col : observable_columns(c.observables, basis)) d.columns.push_back(std::move(col));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (double v : observable_row(c.observables, traj.states[k])) row.push_back(v);
    d.rows.push_back(std::move(row));
  }
  return d;
}

std::vector<double> sweep_values(const SweepSpec& s) {
  static const std::set<std::string> params{"m_mag", "theta", "alpha", "n_mean"};
  if (!params.count(s.param))
    throw InvalidArgument("unknown sweep parameter '" + s.param +
                          "' (expected m_mag|theta|alpha|n_mean)");
  if (!std::isfinite(s.from) || !std::isfinite(s.to))
    throw InvalidArgument("sweep range must be finite");
  if (s.points < 1) throw InvalidArgument("sweep needs at least one point");
  if (s.points == 1) {
    if (s.from != s.to) throw InvalidArgument("a one-point sweep needs from == to");
    return {s.from};
  }
  std::vector<double> v(s.points);
  for (std::size_t k = 0; k < s.points; ++k)
    v[k] = std::lerp(s.from, s.to, static_cast<double>(k) / static_cast<double>(s.points - 1));
  return v;
}

RunConfig sweep_point_config(const SweepSpec& s, double value) {
  RunConfig c = s.base;
  if (s.param == "m_mag") {
    c.m_at_max = false;
    c.reservoir.m_mag = value;
  } else if (s.param == "theta") {
    c.reservoir.theta = value;
  } else if (s.param == "alpha") {
    c.initial.alpha = value;
  } else if (s.param == "n_mean") {
    c.reservoir.n_mean_a = c.reservoir.n_mean_b = value;
  }
  try {
    return resolved(c);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument("sweep point " + s.param + " = " + format_number(value) + ": " +
                          e.what());
  }
}

EsdEvents find_esd(const Superoperator& l, const Trajectory& traj, const std::string& measure) {
  if (!is_measure(measure))
    throw InvalidArgument("find_esd: '" + measure + "' is not an entanglement measure");
  EsdEvents ev;
  if (traj.size() == 0) return ev;
  auto refine = [&](std::size_t k, bool falling) {
    // Invariant: the crossing lies in (lo, hi]; evolve exactly from snapshot k-1.
    double lo = traj.times[k - 1], hi = traj.times[k];
    while (hi - lo > kEsdTimeTol) {
      const double mid = 0.5 * (lo + hi);
      const auto rho = evolve_expm(l, traj.states[k - 1], mid - traj.times[k - 1]);
      const bool below = measure_of(measure, rho) < kEsdThreshold;
      if (below == falling) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi);
  };
  std::vector<double> m(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) m[k] = measure_of(measure, traj.states[k]);
  std::size_t k = 0;
  if (m[0] < kEsdThreshold) {
    ev.death = 0.0;
  } else {
    for (k = 1; k < m.size() && m[k] >= kEsdThreshold; ++k) {
    }
    if (k == m.size()) return ev;
    ev.death = refine(k, true);
  }
  for (++k; k < m.size(); ++k)
    if (m[k] >= kEsdThreshold) {
      ev.revival = refine(k, false);
      break;
    }
  return ev;
}

SweepResult run_sweep(const SweepSpec& spec) {
  const auto values = sweep_values(spec);
  // Validate every point before any computation.
  std::vector<RunConfig> configs;
  for (double v : values) configs.push_back(sweep_point_config(spec, v));
  const auto basis = basis_of(configs.front());
  const auto& obs = configs.front().observables;
  const auto measure_it = std::find_if(obs.begin(), obs.end(), is_measure);
  const std::optional<std::string> measure =
      measure_it == obs.end() ? std::nullopt : std::optional<std::string>(*measure_it);

  struct PointOutput {
    std::vector<std::vector<double>> rows;
    std::vector<double> summary;
    std::exception_ptr error;
  };
  std::vector<PointOutput> results(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        const auto& c = configs[i];
        const auto l = build_liouvillian(c.reservoir, basis);
        const auto traj = simulate_with(l, c);
        auto& out = results[i];
        for (std::size_t k = 0; k < traj.size(); ++k) {
          std::vector<double> row{values[i], traj.times[k]};
          for (double v : observable_row(c.observables, traj.states[k])) row.push_back(v);
          out.rows.push_back(std::move(row));
        }
        out.summary = {values[i]};
        if (measure) {
          const auto ev = find_esd(l, traj, *measure);
          out.summary.push_back(ev.death.value_or(kNan));
          out.summary.push_back(ev.revival.value_or(kNan));
        }
        const auto& last = out.rows.back();
        out.summary.insert(out.summary.end(), last.begin() + 2, last.end());
      } catch (...) {
        results[i].error = std::current_exception();
      }
    }
  };
  unsigned threads =
      spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& r : results)
    if (r.error) std::rethrow_exception(r.error);

  SweepResult res;
  auto meta = header_lines("sweep");
  for (auto& line : describe(configs.front())) meta.push_back(std::move(line));
  meta.push_back("sweep = " + spec.param + " from " + format_number(spec.from) + " to " +
                 format_number(spec.to) + " points " + std::to_string(values.size()));
  const auto obs_cols = observable_columns(obs, basis);
  res.data.metadata = meta;
  res.data.columns = {spec.param, "t"};
  res.data.columns.insert(res.data.columns.end(), obs_cols.begin(), obs_cols.end());
  for (auto& r : results)
    for (auto& row : r.rows) res.data.rows.push_back(std::move(row));

  res.summary.metadata = meta;
  res.summary.metadata.push_back("esd threshold = " + format_number(kEsdThreshold) +
                                 ", bisection tolerance = " + format_number(kEsdTimeTol) +
                                 " (nan: no event)");
  res.summary.columns = {spec.param};
  if (measure) {
    res.summary.columns.push_back("esd_time_" + *measure);
    res.summary.columns.push_back("revival_time_" + *measure);
  }
  for (const auto& col : obs_cols) res.summary.columns.push_back("final_" + col);
  for (auto& r : results) res.summary.rows.push_back(std::move(r.summary));
  return res;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"2a", "2b", "3a", "3b", "4a", "4b", "5a",
                                            "5b", "6",  "7a", "7b", "8a", "8b", "9"};
  return ids;
}

FigurePreset figure_preset(const std::string& id,
                           const std::vector<std::pair<std::string, std::string>>& overrides) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw InvalidArgument("unknown figure id '" + id + "' (known: " + join(ids) + ")");

  constexpr double pi = std::numbers::pi;
  RunConfig base;
  base.reservoir.n_mean_a = base.reservoir.n_mean_b = 0.1;
  base.initial.alpha = pi / 4;
  base.initial.psi = 0.0;
  base.reservoir.theta = 0.0;

  const char panel = id.size() > 1 ? id[1] : 'a';
  const int number = id[0] - '0';
  base.initial.family = panel == 'b' ? StateFamily::EPR : StateFamily::NOON;
  base.reservoir.topology =
      number <= 4 ? Topology::SeparateReservoirs : Topology::CommonReservoir;
  base.initial.n = (number == 4 || number == 8 || number == 9) ? 2 : 1;
  base.observables = {base.initial.n == 2 ? "log_negativity" : "concurrence"};

  FigurePreset p;
  p.id = id;
  std::optional<SweepSpec> sweep;
  auto make_sweep = [&](const std::string& param, double from, double to, std::size_t points) {
    SweepSpec s;
    s.param = param;
    s.from = from;
    s.to = to;
    s.points = points;
    sweep = s;
  };
  bool m_range_to_max = false;
  switch (number) {
    case 2:
    case 4:
    case 5:
    case 8:
      make_sweep("m_mag", 0.0, 0.0, 60);
      m_range_to_max = true;
      p.description = "entanglement vs kappa*t and |M|";
      break;
    case 3:
      base.m_at_max = true;
      make_sweep("theta", 0.0, 2 * pi, 60);
      p.description = "concurrence vs kappa*t and squeezing phase, separate reservoirs";
      break;
    case 6:
      base.m_at_max = true;
      base.initial.family = StateFamily::EPR;
      // 61 points put theta = pi on the grid.
      make_sweep("theta", 0.0, 2 * pi, 61);
      p.description = "concurrence vs kappa*t and squeezing phase, common reservoir, EPR";
      break;
    case 7:
      base.m_at_max = true;
      base.observables = {"rho14", "rho23"};
      if (panel == 'b') make_sweep("theta", 0.0, pi, 2);
      p.description = "coherences rho14 and rho23, common reservoir";
      break;
    case 9:
      base.m_at_max = true;
      base.initial.family = StateFamily::NOON;
      base.observables = {"rho15", "rho19", "rho37"};
      p.description = "coherences rho15, rho19 and rho37, common reservoir, n = 2 NOON";
      break;
    default:
      break;
  }

  for (const auto& [key, value] : overrides) {
    if (apply_option(base, key, value)) continue;
    if (!sweep)
      throw InvalidArgument("figure " + id + " is not a sweep; unknown override '" + key + "'");
    if (key == "from") {
      sweep->from = parse_double(key, value);
    } else if (key == "to") {
      sweep->to = parse_double(key, value);
      m_range_to_max = false;
    } else if (key == "points") {
      sweep->points = static_cast<std::size_t>(std::max(0L, parse_integer(key, value)));
    } else {
      throw InvalidArgument("unknown override '" + key + "' for figure " + id);
    }
  }
  if (sweep) {
    if (m_range_to_max) sweep->to = max_squeezing(base.reservoir);
    sweep->base = base;
  }
  p.sweep = sweep;
  p.evolve = base;
  return p;
}

SweepResult run_figure(const std::string& id,
                       const std::vector<std::pair<std::string, std::string>>& overrides,
                       unsigned threads) {
  auto preset = figure_preset(id, overrides);
  SweepResult res;
  if (preset.sweep) {
    preset.sweep->threads = threads;
    res = run_sweep(*preset.sweep);
  } else {
    res.data = run_evolve(preset.evolve);
  }
  auto& meta = res.data.metadata;
  meta[1] = "command = figure " + id;
  meta.insert(meta.begin() + 2, "figure = " + id + ": " + preset.description);
  for (const auto& [key, value] : overrides) meta.push_back("override " + key + " = " + value);
  if (!res.summary.metadata.empty()) {
    res.summary.metadata[1] = meta[1];
    res.summary.metadata.insert(res.summary.metadata.begin() + 2, meta[2]);
    for (const auto& [key, value] : overrides)
      res.summary.metadata.push_back("override " + key + " = " + value);
  }
  return res;
}

SteadyReport run_steady(const ReservoirSpec& reservoir, int n_max) {
  if (reservoir.topology != Topology::SeparateReservoirs)
    throw InvalidArgument("steady: the population analysis is single-mode (separate topology)");
  if (n_max < 1) throw InvalidArgument("steady: nmax must be >= 1");
  SteadyReport r;
  r.reservoir = reservoir;
  r.reservoir.n_mean_b = reservoir.n_mean_a;
  r.n_max = n_max;
  r.regime = classify_regime(r.reservoir.n_mean_a, r.reservoir.m_mag);
  const auto l = liouvillian_separate(r.reservoir, ModeBasis::single_mode(n_max));
  const auto ss = steady_state(l);
  r.populations = reduced_populations(ss, Mode::A);
  r.ratios = photon_ratios(ss, Mode::A, n_max);
  for (int n = 1; n <= n_max - 2; ++n) {
    r.residual_printed.push_back(
        recurrence_residual(ss, r.reservoir, n, RecurrenceForm::AsPrinted));
    r.residual_corrected.push_back(
        recurrence_residual(ss, r.reservoir, n, RecurrenceForm::Corrected));
  }
  r.trace = ss.matrix().trace().real();
  r.min_eigenvalue = ss.min_eigenvalue();
  return r;
}

Dataset to_dataset(const SteadyReport& r) {
  Dataset d;
  d.metadata = header_lines("steady");
  d.metadata.push_back("N = " + format_number(r.reservoir.n_mean_a));
  d.metadata.push_back("M = " + format_number(r.reservoir.m_mag));
  d.metadata.push_back("theta = " + format_number(r.reservoir.theta));
  d.metadata.push_back("kappa = " + format_number(r.reservoir.kappa));
  d.metadata.push_back("nmax = " + std::to_string(r.n_max));
  d.metadata.push_back("regime = " + to_string(r.regime));
  d.metadata.push_back("trace = " + format_number(r.trace));
  d.metadata.push_back("min_eigenvalue = " + format_number(r.min_eigenvalue));
  d.metadata.push_back("residual_printed uses (rho_{n-2,n} - rho_{n,n-2}); residual_corrected "
                       "uses the form derived from the master equation");
  d.columns = {"n", "P_n", "R_n", "residual_printed", "residual_corrected"};
  for (std::size_t n = 0; n < r.populations.size(); ++n) {
    const bool has_res = n >= 1 && n - 1 < r.residual_printed.size();
    d.rows.push_back({static_cast<double>(n), r.populations[n], n == 0 ? 1.0 : r.ratios[n - 1],
                      has_res ? r.residual_printed[n - 1] : kNan,
                      has_res ? r.residual_corrected[n - 1] : kNan});
  }
  return d;
}

}  // namespace sqzent
