#pragma once

#include <cstddef>
#include <vector>

#include "sqzent/fock.hpp"
#include "sqzent/lindblad.hpp"

namespace sqzent {

/// Snapshots of an evolution. times[0] = 0 and times are strictly increasing
/// (units of 1/kappa).
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;

  std::size_t size() const { return times.size(); }
};

/// Number of fixed steps used to reach t_end with a step no larger than
/// `step`. The step is shortened slightly when it does not divide t_end.
std::size_t step_count(double t_end, double step);

/// Classical fourth-order Runge-Kutta on the matrix ODE with the
/// matrix-free Liouvillian. No trace renormalisation. A snapshot is stored
/// every `stride` steps and at t_end. Throws NumericalError on non-finite
/// or invalid states.
Trajectory evolve_rk4(const Superoperator& l, const DensityMatrix& rho0, double t_end,
                      double step, std::size_t stride = 1);

/// exp(t L) applied to vec(rho0).
DensityMatrix evolve_expm(const Superoperator& l, const DensityMatrix& rho0, double t);

/// Exact propagation sampled on the uniform grid k * t_end / samples,
/// k = 0..samples, by repeated application of one exponential.
Trajectory evolve_expm_grid(const Superoperator& l, const DensityMatrix& rho0, double t_end,
                            std::size_t samples);

/// Unique steady state of L, Hermitised and validated.
DensityMatrix steady_state(const Superoperator& l);

/// Photon-number distribution of one mode (diagonal of the reduced state).
std::vector<double> reduced_populations(const DensityMatrix& rho, Mode mode);

/// Reduced single-mode density matrix (partial trace over the other mode).
Matrix reduced_state(const DensityMatrix& rho, Mode mode);

/// R_k = P_k / P_0 for k = 1..up_to. Throws NumericalError when P_0 <= 1e-14.
std::vector<double> photon_ratios(const DensityMatrix& rho, Mode mode, int up_to);

/// Which sign to use for the sqrt(n(n-1)) coherences in the steady-state
/// population recurrence. AsPrinted takes (rho_{n-2,n} - rho_{n,n-2});
/// Corrected is the form that follows from the master equation.
enum class RecurrenceForm { AsPrinted, Corrected };

/// |n N P_{n-1} - (2nN + N + n) P_n + (N+1)(n+1) P_{n+1} + squeezing terms|
/// for the mode-A reduced state. Requires 1 <= n <= n_max_a - 2.
double recurrence_residual(const DensityMatrix& rho_ss, const ReservoirSpec& spec, int n,
                           RecurrenceForm form = RecurrenceForm::AsPrinted);

}  // namespace sqzent
