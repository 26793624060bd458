#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sqzent/error.hpp"
#include "sqzent/oracles.hpp"
#include "sqzent/runner.hpp"

using namespace sqzent;
using std::numbers::pi;

namespace {

std::string csv(const Dataset& d) {
  std::ostringstream os;
  write_csv(d, os);
  return os.str();
}

RunConfig quick_config() {
  RunConfig c;
  c.reservoir.n_mean_a = c.reservoir.n_mean_b = 0.1;
  c.m_at_max = true;
  c.t_end = 1.0;
  c.samples = 10;
  c.step = 1e-2;
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sqzent_test_" + name);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1) == "0.10000000000000001");
  for (double v : {pi, -1e-300, 6.02e23, 1.0 / 3.0}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("evolve output") {
  auto c = quick_config();
  c.observables = {"concurrence", "trace", "rho23", "populations"};
  const auto d = run_evolve(c);
  REQUIRE(d.rows.size() == 11);
  CHECK(d.columns.front() == "t");
  CHECK(d.rows.back()[0] == doctest::Approx(1.0));
  const auto tr = d.column("trace");
  for (const auto& row : d.rows) CHECK(std::abs(row[tr] - 1.0) < 1e-12);
  CHECK(d.column("abs_rho23") == d.column("re_rho23") + 2);
  CHECK(d.column("p_2_2") == d.columns.size() - 1);
  CHECK_THROWS_AS(d.column("rho99"), InvalidArgument);

  SUBCASE("identical on repeat") { CHECK(csv(run_evolve(c)) == csv(d)); }
  SUBCASE("metadata lines precede the header") {
    const auto text = csv(d);
    CHECK(text.rfind("# ", 0) == 0);
    CHECK(text.find("\nt,concurrence,trace,re_rho23") != std::string::npos);
  }
}

TEST_CASE("vacuum NOON concurrence column follows the closed form") {
  RunConfig c;
  c.t_end = 2.0;
  c.samples = 8;
  c.initial = {StateFamily::NOON, 1, 0.5, 1.0};
  const auto d = run_evolve(c);
  for (const auto& row : d.rows)
    CHECK(row[1] ==
          doctest::Approx(vacuum_noon_n1(0.5, 1.0, row[0]).measure->value).epsilon(1e-10));
}

TEST_CASE("sweeps") {
  SweepSpec s;
  s.param = "theta";
  s.from = 0.0;
  s.to = pi;
  s.points = 3;
  s.base = quick_config();
  s.base.initial.family = StateFamily::EPR;

  SUBCASE("grid") {
    const auto v = sweep_values(s);
    REQUIRE(v.size() == 3);
    CHECK(v[1] == doctest::Approx(pi / 2));
    CHECK(v[2] == pi);
  }
  SUBCASE("single point equals evolve") {
    s.points = 1;
    s.to = s.from = 0.7;
    const auto res = run_sweep(s);
    auto c = s.base;
    c.reservoir.theta = 0.7;
    const auto d = run_evolve(c);
    REQUIRE(res.data.rows.size() == d.rows.size());
    for (std::size_t k = 0; k < d.rows.size(); ++k) {
      CHECK(res.data.rows[k][0] == 0.7);
      CHECK(std::vector<double>(res.data.rows[k].begin() + 1, res.data.rows[k].end()) ==
            d.rows[k]);
    }
    s.to = 0.8;
    CHECK_THROWS_AS(sweep_values(s), InvalidArgument);
  }
  SUBCASE("thread count does not change the output") {
    s.points = 7;
    s.threads = 1;
    const auto serial = run_sweep(s);
    s.threads = 4;
    const auto parallel = run_sweep(s);
    CHECK(csv(serial.data) == csv(parallel.data));
    CHECK(csv(serial.summary) == csv(parallel.summary));
  }
  SUBCASE("invalid sweeps") {
    s.param = "kappa";
    CHECK_THROWS_AS(sweep_values(s), InvalidArgument);
    s.param = "m_mag";
    s.from = 0.0;
    s.to = 1.0;  // beyond sqrt(N(N+1))
    CHECK_THROWS_AS(run_sweep(s), InvalidArgument);
  }
}

TEST_CASE("figure presets") {
  CHECK(figure_ids().size() == 14);
  CHECK_THROWS_AS(figure_preset("10"), InvalidArgument);

  SUBCASE("squeezing range follows the overridden photon number") {
    const auto p = figure_preset("2a", {{"N", "0.5"}});
    REQUIRE(p.sweep.has_value());
    CHECK(p.sweep->to == doctest::Approx(std::sqrt(0.75)));
    CHECK(p.sweep->points == 60);
    CHECK(figure_preset("2a", {{"to", "0.2"}}).sweep->to == 0.2);
  }
  SUBCASE("phase grid of the common EPR preset contains pi") {
    const auto v = sweep_values(*figure_preset("6").sweep);
    CHECK(std::find(v.begin(), v.end(), pi) != v.end());
  }
  SUBCASE("cutoffs and measures") {
    CHECK(figure_preset("4a").evolve.initial.n == 2);
    CHECK(figure_preset("9").evolve.observables.size() == 3);
    CHECK(figure_preset("8b").evolve.observables.front() == "log_negativity");
    CHECK(figure_preset("3b").evolve.initial.family == StateFamily::EPR);
    CHECK(figure_preset("5a").evolve.reservoir.topology == Topology::CommonReservoir);
  }
  SUBCASE("unknown overrides are rejected") {
    CHECK_THROWS_AS(figure_preset("7a", {{"points", "3"}}), InvalidArgument);
    CHECK_THROWS_AS(figure_preset("2a", {{"bogus", "1"}}), InvalidArgument);
  }
}

TEST_CASE("sudden death moves later with stronger squeezing in separate reservoirs") {
  const auto res = run_figure("2a", {{"method", "expm"}, {"points", "8"}, {"samples", "100"}});
  const auto& s = res.summary;
  const auto esd = s.column("esd_time_concurrence");
  double previous = 0.0;
  for (const auto& row : s.rows) {
    REQUIRE(std::isfinite(row[esd]));
    CHECK(row[esd] >= previous - 1e-6);
    previous = row[esd];
    CHECK(std::isnan(row[s.column("revival_time_concurrence")]));
  }
  CHECK(s.rows.back()[esd] - s.rows.front()[esd] > 0.1);
}

TEST_CASE("common reservoir keeps entanglement only beyond classical squeezing") {
  const auto res = run_figure("5a", {{"method", "expm"}, {"points", "6"}, {"samples", "50"}});
  const auto& s = res.summary;
  for (const auto& row : s.rows) {
    const double m = row[0];
    const double final_c = row[s.column("final_concurrence")];
    if (m <= 0.1) CHECK(final_c < 1e-6);
    else CHECK(final_c > 1e-3);
  }
}

TEST_CASE("separate-reservoir NOON dynamics do not depend on the squeezing phase") {
  const auto res = run_figure("3a", {{"method", "expm"}, {"points", "4"}, {"samples", "20"}});
  const auto c = res.data.column("concurrence");
  const std::size_t per_point = 21;
  REQUIRE(res.data.rows.size() == 4 * per_point);
  for (std::size_t k = per_point; k < res.data.rows.size(); ++k)
    CHECK(res.data.rows[k][c] ==
          doctest::Approx(res.data.rows[k % per_point][c]).epsilon(1e-10));
}

TEST_CASE("EPR coherence in a common reservoir survives at theta = pi") {
  const auto res = run_figure("7b", {{"method", "expm"}, {"samples", "10"}});
  const auto& last = res.data.rows.back();
  CHECK(last[0] == doctest::Approx(pi));
  CHECK(last[1] == doctest::Approx(5.0));
  CHECK(last[res.data.column("abs_rho14")] > 1e-3);
}

TEST_CASE("configuration") {
  SUBCASE("options") {
    RunConfig c;
    CHECK(apply_option(c, "topology", "common"));
    CHECK(apply_option(c, "N", "0.2"));
    CHECK(apply_option(c, "M", "max"));
    CHECK(apply_option(c, "observables", "log_negativity,trace"));
    CHECK_FALSE(apply_option(c, "colour", "red"));
    const auto r = resolved(c);
    CHECK(r.reservoir.n_mean_b == 0.2);
    CHECK(r.reservoir.m_mag == doctest::Approx(std::sqrt(0.24)));
    CHECK(r.observables == std::vector<std::string>{"log_negativity", "trace"});
    CHECK_THROWS_AS(apply_option(c, "alpha", "abc"), InvalidArgument);
  }
  SUBCASE("resolution errors") {
    RunConfig c;
    c.observables = {"concurrence", "concurrence"};
    CHECK_THROWS_AS(resolved(c), InvalidArgument);
    c.observables = {"rho37"};
    c.n_max = 1;
    CHECK_THROWS_AS(resolved(c), InvalidArgument);
    c = RunConfig{};
    c.reservoir.m_mag = 0.5;
    CHECK_THROWS_AS(resolved(c), InvalidArgument);
  }
  SUBCASE("JSON file") {
    const auto path = temp_file("config.json");
    {
      std::ofstream f(path);
      f << R"({"init": "epr", "alpha": 1.2, "N": 0.1, "M": "max",)"
        << R"( "observables": ["concurrence", "trace"]})";
    }
    const auto kv = load_config_file(path.string());
    RunConfig c;
    for (const auto& [k, v] : kv) CHECK(apply_option(c, k, v));
    const auto r = resolved(c);
    CHECK(r.initial.family == StateFamily::EPR);
    CHECK(r.initial.alpha == 1.2);
    CHECK(r.observables.size() == 2);

    {
      std::ofstream f(path);
      f << R"({"N": {"a": 1}})";
    }
    CHECK_THROWS_AS(load_config_file(path.string()), InvalidArgument);
    {
      std::ofstream f(path);
      f << "not json";
    }
    CHECK_THROWS_AS(load_config_file(path.string()), InvalidArgument);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config_file(path.string()), IoError);
  }
  SUBCASE("unwritable output") {
    Dataset d;
    d.columns = {"x"};
    CHECK_THROWS_AS(write_csv(d, "/nonexistent-dir/out.csv"), IoError);
  }
}

TEST_CASE("steady-state report") {
  ReservoirSpec spec;
  spec.n_mean_a = 0.1;
  spec.m_mag = std::sqrt(0.11);
  const auto r = run_steady(spec, 12);
  CHECK(r.regime == RegimeClass::QuantumSqueezing);
  CHECK(r.trace == doctest::Approx(1.0));
  CHECK(r.ratios[1] == doctest::Approx(1.0 / 22.0).epsilon(1e-8));
  REQUIRE(r.residual_corrected.size() == 10);
  for (double v : r.residual_corrected) CHECK(v < 1e-12);
  const auto d = to_dataset(r);
  CHECK(d.rows.size() == 13);
  CHECK(d.columns[2] == "R_n");

  spec.topology = Topology::CommonReservoir;
  CHECK_THROWS_AS(run_steady(spec, 12), InvalidArgument);
}

TEST_CASE("common EPR sudden death depends on the relative phase") {
  const auto res = run_figure("6", {{"method", "expm"}, {"points", "3"}, {"samples", "50"}});
  const auto& s = res.summary;
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[1][0] == pi);
  const auto esd = s.column("esd_time_concurrence");
  CHECK(std::isnan(s.rows[0][esd]));
  CHECK(std::isfinite(s.rows[1][esd]));
  CHECK(std::isnan(s.rows[2][esd]));
}

TEST_CASE("classically squeezed separate baths barely move the sudden-death time") {
  const auto res = run_figure("2a", {{"method", "expm"}, {"points", "8"}, {"samples", "100"}});
  const auto& s = res.summary;
  const auto esd = s.column("esd_time_concurrence");
  const double t0 = s.rows.front()[esd];
  double classical = 0.0;
  for (const auto& row : s.rows)
    if (row[0] <= 0.1) classical = std::max(classical, row[esd] - t0);
  CHECK(classical < 0.05 * t0);
  CHECK(s.rows.back()[esd] - t0 > 10.0 * classical);
}

TEST_CASE("two-photon coherence preset columns") {
  const auto res = run_figure("9", {{"method", "expm"}, {"samples", "5"}});
  for (const char* name : {"abs_rho15", "abs_rho19", "abs_rho37"})
    CHECK_NOTHROW(res.data.column(name));
  CHECK(res.data.rows.front()[res.data.column("abs_rho37")] == doctest::Approx(0.5));
}

TEST_CASE("vacuum steady report") {
  const auto r = run_steady(ReservoirSpec{}, 6);
  CHECK(r.regime == RegimeClass::Vacuum);
  for (double v : r.ratios) CHECK(v == 0.0);
}
