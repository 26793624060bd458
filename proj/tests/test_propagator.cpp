#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqzent/error.hpp"
#include "sqzent/propagator.hpp"
#include "support.hpp"

using namespace sqzent;
using std::numbers::pi;

namespace {

ReservoirSpec separate(double n, double m, double theta) {
  ReservoirSpec s;
  s.n_mean_a = s.n_mean_b = n;
  s.m_mag = m;
  s.theta = theta;
  return s;
}

ReservoirSpec single_mode_bath(double n, double m, double theta) {
  ReservoirSpec s;
  s.n_mean_a = n;
  s.m_mag = m;
  s.theta = theta;
  return s;
}

}  // namespace

TEST_CASE("step count") {
  CHECK(step_count(5.0, 1e-3) == 5000);
  CHECK(step_count(1.0, 0.3) == 4);
  CHECK(step_count(0.0, 0.1) == 0);
}

TEST_CASE("vacuum decay of single-photon states") {
  const ModeBasis basis(1, 1);
  const auto l = liouvillian_separate(ReservoirSpec{}, basis);

  SUBCASE("zero duration returns the initial state") {
    const auto rho0 = build_initial_state({StateFamily::NOON, 1, 0.4, 1.0}, basis);
    const auto traj = evolve_rk4(l, rho0, 0.0, 1e-3);
    REQUIRE(traj.size() == 1);
    CHECK(max_abs_diff(traj.states[0].matrix(), rho0.matrix()) == 0.0);
  }
  SUBCASE("population of |0,1> follows e^{-kt}/2") {
    const auto rho0 = build_initial_state({StateFamily::NOON, 1, pi / 4, 0.0}, basis);
    const auto traj = evolve_rk4(l, rho0, 1.0, 1e-3, 100);
    REQUIRE(traj.size() == 11);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    CHECK(traj.states.back().element(2, 2, 1).real() ==
          doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(evolve_expm(l, rho0, 1.0).element(2, 2, 1).real() ==
          doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-13));
  }
  SUBCASE("doubly excited population decays at 2 kappa") {
    const auto rho0 = build_initial_state({StateFamily::EPR, 1, pi / 4, 0.0}, basis);
    const auto rho = evolve_expm(l, rho0, std::log(2.0));
    CHECK(rho.element(4, 4, 1).real() == doctest::Approx(0.125).epsilon(1e-13));
  }
}

TEST_CASE("RK4 converges at fourth order to the exponential") {
  const ModeBasis basis(2, 2);
  const auto spec = separate(0.1, std::sqrt(0.11), 0.3);
  const auto l = liouvillian_separate(spec, basis);
  const auto rho0 = build_initial_state({StateFamily::EPR, 1, pi / 3, 0.5}, basis);
  const auto exact = evolve_expm(l, rho0, 1.0);

  auto err = [&](double h) {
    return max_abs_diff(evolve_rk4(l, rho0, 1.0, h, 1000000).states.back().matrix(),
                        exact.matrix());
  };
  const double e1 = err(0.05), e2 = err(0.025);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
  CHECK(err(1e-4) < 1e-13);
}

TEST_CASE("exponential propagation is a semigroup") {
  const ModeBasis basis(2, 2);
  ReservoirSpec spec = separate(0.3, 0.4, 1.0);
  spec.topology = Topology::CommonReservoir;
  const auto l = build_liouvillian(spec, basis);
  const auto rho0 = build_initial_state({StateFamily::NOON, 2, 0.9, 2.0}, basis);
  const auto two_step = evolve_expm(l, evolve_expm(l, rho0, 0.35), 0.8);
  CHECK(max_abs_diff(two_step.matrix(), evolve_expm(l, rho0, 1.15).matrix()) < 1e-13);

  const auto grid = evolve_expm_grid(l, rho0, 1.15, 23);
  REQUIRE(grid.size() == 24);
  CHECK(grid.times[7] == doctest::Approx(0.35));
  CHECK(max_abs_diff(grid.states[7].matrix(), evolve_expm(l, rho0, 0.35).matrix()) < 1e-13);
  CHECK(max_abs_diff(grid.states.back().matrix(), two_step.matrix()) < 1e-12);
}

TEST_CASE("steady states") {
  SUBCASE("vacuum bath") {
    const auto basis = ModeBasis::single_mode(4);
    const auto rho = steady_state(liouvillian_separate(ReservoirSpec{}, basis));
    CHECK(rho(0, 0).real() == doctest::Approx(1.0));
  }
  SUBCASE("thermal bath is geometric") {
    const auto basis = ModeBasis::single_mode(12);
    const auto rho = steady_state(liouvillian_separate(single_mode_bath(0.1, 0.0, 0.0), basis));
    const auto r = photon_ratios(rho, Mode::A, 4);
    REQUIRE(r.size() == 4);
    for (int k = 1; k <= 4; ++k) CHECK(r[k - 1] == doctest::Approx(std::pow(1.0 / 11.0, k)));
  }
  SUBCASE("maximally squeezed bath populates even photon numbers only") {
    const auto basis = ModeBasis::single_mode(12);
    const auto spec = single_mode_bath(0.1, std::sqrt(0.11), 0.7);
    const auto rho = steady_state(liouvillian_separate(spec, basis));
    const auto r = photon_ratios(rho, Mode::A, 3);
    CHECK(std::abs(r[0]) < 1e-10);
    CHECK(r[1] == doctest::Approx(1.0 / 22.0).epsilon(1e-8));
    CHECK(std::abs(r[2]) < 1e-10);
  }
  SUBCASE("long-time limit of the evolution") {
    const ModeBasis basis(2, 2);
    const auto l = liouvillian_separate(separate(0.2, 0.3, 1.3), basis);
    const auto rho0 = build_initial_state({StateFamily::EPR, 2, 0.6, 0.0}, basis);
    CHECK(max_abs_diff(evolve_expm(l, rho0, 50.0).matrix(), steady_state(l).matrix()) < 1e-10);
  }
}

TEST_CASE("reduced states") {
  const ModeBasis basis(2, 2);
  const auto rho = build_initial_state({StateFamily::NOON, 2, pi / 6, 0.0}, basis);
  const auto pa = reduced_populations(rho, Mode::A);
  const auto pb = reduced_populations(rho, Mode::B);
  CHECK(pa[0] == doctest::Approx(0.75));
  CHECK(pa[2] == doctest::Approx(0.25));
  CHECK(pb[2] == doctest::Approx(0.75));
  const auto red = reduced_state(rho, Mode::A);
  CHECK(red.trace().real() == doctest::Approx(1.0));
  CHECK(std::abs(red(0, 2)) < 1e-15);  // the other mode carries the which-path record

  const auto vac = build_initial_state({StateFamily::NOON, 1, pi / 2, 0.0}, basis);
  CHECK_THROWS_AS(photon_ratios(vac, Mode::A, 2), NumericalError);
}

TEST_CASE("steady-state population recurrence") {
  const auto basis = ModeBasis::single_mode(14);
  SUBCASE("thermal bath satisfies both forms") {
    const auto spec = single_mode_bath(0.4, 0.0, 0.0);
    const auto rho = steady_state(liouvillian_separate(spec, basis));
    for (int n = 1; n <= 8; ++n) {
      CHECK(recurrence_residual(rho, spec, n, RecurrenceForm::AsPrinted) < 1e-12);
      CHECK(recurrence_residual(rho, spec, n, RecurrenceForm::Corrected) < 1e-12);
    }
  }
  SUBCASE("squeezed bath separates the forms") {
    for (double theta : {0.0, 0.7}) {
      const auto spec = single_mode_bath(0.1, std::sqrt(0.11), theta);
      const auto rho = steady_state(liouvillian_separate(spec, basis));
      for (int n = 1; n <= 8; ++n)
        CHECK(recurrence_residual(rho, spec, n, RecurrenceForm::Corrected) < 1e-12);
      CHECK(recurrence_residual(rho, spec, 2, RecurrenceForm::AsPrinted) > 1e-2);
    }
    CHECK_THROWS_AS(recurrence_residual(steady_state(liouvillian_separate(
                                            single_mode_bath(0.1, 0.0, 0.0), basis)),
                                        single_mode_bath(0.1, 0.0, 0.0), 13),
                    InvalidArgument);
  }
}

TEST_CASE("unstable step is reported") {
  const ModeBasis basis(2, 2);
  const auto l = liouvillian_separate(separate(0.5, 0.5, 0.0), basis);
  const auto rho0 = build_initial_state({StateFamily::NOON, 1, pi / 4, 0.0}, basis);
  CHECK_THROWS_AS(evolve_rk4(l, rho0, 1000.0, 5.0), NumericalError);
}

TEST_CASE("RK4 step halving on the separate-bath NOON configuration") {
  const ModeBasis basis(2, 2);
  const auto l = liouvillian_separate(separate(0.1, std::sqrt(0.11), 0.0), basis);
  const auto rho0 = build_initial_state({StateFamily::NOON, 1, pi / 4, 0.0}, basis);
  const auto exact = evolve_expm_grid(l, rho0, 5.0, 50);
  auto max_err = [&](double h) {
    const auto traj = evolve_rk4(l, rho0, 5.0, h, static_cast<std::size_t>(std::lround(0.1 / h)));
    REQUIRE(traj.size() == exact.size());
    double e = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k)
      e = std::max(e, max_abs_diff(traj.states[k].matrix(), exact.states[k].matrix()));
    return e;
  };
  CHECK(max_err(1e-2) / max_err(5e-3) >= 12.0);
}

TEST_CASE("ratios and residuals of trivial states") {
  const auto basis = ModeBasis::single_mode(6);
  const auto vac = steady_state(liouvillian_separate(ReservoirSpec{}, basis));
  for (double r : photon_ratios(vac, Mode::A, 5)) CHECK(r == 0.0);
  for (int n = 1; n <= 4; ++n) CHECK(recurrence_residual(vac, ReservoirSpec{}, n) == 0.0);

  const auto thermal_spec = single_mode_bath(0.1, 0.0, 0.0);
  const auto thermal = steady_state(liouvillian_separate(thermal_spec, ModeBasis::single_mode(12)));
  CHECK(photon_ratios(thermal, Mode::A, 1)[0] == doctest::Approx(0.090909).epsilon(1e-5));
}
