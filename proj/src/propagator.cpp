#include "sqzent/propagator.hpp"

#include <cmath>

#include "sqzent/error.hpp"
#include "sqzent/linalg.hpp"

namespace sqzent {
namespace {

DensityMatrix checked_state(const ModeBasis& basis, Matrix m, double t) {
  if (!m.all_finite())
    throw NumericalError("non-finite state at kappa*t = " + std::to_string(t));
  if (auto why = density_matrix_violation(basis, m))
    throw NumericalError("invalid state at kappa*t = " + std::to_string(t) + ": " + *why);
  return DensityMatrix(basis, std::move(m));
}

void check_basis(const Superoperator& l, const DensityMatrix& rho) {
  if (!(l.basis() == rho.basis()))
    throw InvalidArgument("initial state basis does not match the Liouvillian");
}

}  // namespace

std::size_t step_count(double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be >= 0");
  // The relative slack keeps t_end = k * step from rounding up to k + 1.
  return static_cast<std::size_t>(std::ceil(t_end / step * (1.0 - 1e-12)));
}

Trajectory evolve_rk4(const Superoperator& l, const DensityMatrix& rho0, double t_end,
                      double step, std::size_t stride) {
  check_basis(l, rho0);
  if (stride == 0) throw InvalidArgument("evolve_rk4: stride must be >= 1");
  const std::size_t steps = step_count(t_end, step);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  if (steps == 0) return traj;

  const double h = t_end / static_cast<double>(steps);
  Matrix rho = rho0.matrix();
  for (std::size_t k = 1; k <= steps; ++k) {
    const Matrix k1 = l.apply(rho);
    Matrix y = rho;
    y.add_scaled(k1, 0.5 * h);
    const Matrix k2 = l.apply(y);
    y = rho;
    y.add_scaled(k2, 0.5 * h);
    const Matrix k3 = l.apply(y);
    y = rho;
    y.add_scaled(k3, h);
    const Matrix k4 = l.apply(y);
    rho.add_scaled(k1, h / 6.0);
    rho.add_scaled(k2, h / 3.0);
    rho.add_scaled(k3, h / 3.0);
    rho.add_scaled(k4, h / 6.0);
    const double t = static_cast<double>(k) * h;
    if (!rho.all_finite()) throw NumericalError("evolve_rk4: non-finite state at kappa*t = " +
                                                std::to_string(t));
    if (k % stride == 0 || k == steps) {
      traj.times.push_back(k == steps ? t_end : t);
      traj.states.push_back(checked_state(l.basis(), rho, t));
    }
  }
  return traj;
}

DensityMatrix evolve_expm(const Superoperator& l, const DensityMatrix& rho0, double t) {
  check_basis(l, rho0);
  if (!(t >= 0.0)) throw InvalidArgument("evolve_expm: t must be >= 0");
  const auto out = expm_apply(l.dense(), t, vec(rho0.matrix()));
  return checked_state(l.basis(), unvec(out, rho0.dim()), t);
}

Trajectory evolve_expm_grid(const Superoperator& l, const DensityMatrix& rho0, double t_end,
                            std::size_t samples) {
  check_basis(l, rho0);
  if (!(t_end >= 0.0)) throw InvalidArgument("evolve_expm_grid: t_end must be >= 0");
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  if (samples == 0 || t_end == 0.0) return traj;
  const double dt = t_end / static_cast<double>(samples);
  const Matrix prop = expm(l.dense(), dt);
  CVector x = vec(rho0.matrix());
  for (std::size_t k = 1; k <= samples; ++k) {
    x = prop * std::span<const cplx>(x);
    const double t = k == samples ? t_end : static_cast<double>(k) * dt;
    traj.times.push_back(t);
    traj.states.push_back(checked_state(l.basis(), unvec(x, rho0.dim()), t));
  }
  return traj;
}

DensityMatrix steady_state(const Superoperator& l) {
  const std::size_t d = l.basis().dim();
  const auto x = nullspace_unit_trace(l.dense(), trace_functional(d));
  Matrix m = unvec(x, d);
  Matrix h = m + m.adjoint();
  h *= 0.5;
  if (auto why = density_matrix_violation(l.basis(), h))
    throw NumericalError("steady state is not a valid density matrix: " + *why);
  return DensityMatrix(l.basis(), std::move(h));
}

Matrix reduced_state(const DensityMatrix& rho, Mode mode) {
  const auto& basis = rho.basis();
  const int keep = basis.n_max(mode);
  const int other = mode == Mode::A ? basis.n_max_b() : basis.n_max_a();
  const auto d = static_cast<std::size_t>(keep + 1);
  Matrix r(d, d);
  for (int i = 0; i <= keep; ++i)
    for (int j = 0; j <= keep; ++j) {
      cplx s = 0.0;
      for (int k = 0; k <= other; ++k) {
        const std::size_t row = mode == Mode::A ? basis.index(i, k) : basis.index(k, i);
        const std::size_t col = mode == Mode::A ? basis.index(j, k) : basis.index(k, j);
        s += rho(row, col);
      }
      r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
    }
  return r;
}

std::vector<double> reduced_populations(const DensityMatrix& rho, Mode mode) {
  const Matrix r = reduced_state(rho, mode);
  std::vector<double> p(r.rows());
  for (std::size_t k = 0; k < r.rows(); ++k) p[k] = r(k, k).real();
  return p;
}

std::vector<double> photon_ratios(const DensityMatrix& rho, Mode mode, int up_to) {
  const auto p = reduced_populations(rho, mode);
  if (up_to < 1 || static_cast<std::size_t>(up_to) >= p.size())
    throw InvalidArgument("photon_ratios: up_to must lie in [1, n_max]");
  if (!(p[0] > 1e-14)) throw NumericalError("photon_ratios: vacuum population vanishes");
  std::vector<double> r;
  for (int k = 1; k <= up_to; ++k) r.push_back(p[static_cast<std::size_t>(k)] / p[0]);
  return r;
}

double recurrence_residual(const DensityMatrix& rho_ss, const ReservoirSpec& spec, int n,
                           RecurrenceForm form) {
  const int n_max = rho_ss.basis().n_max_a();
  if (n < 1 || n > n_max - 2)
    throw InvalidArgument("recurrence_residual: n must lie in [1, n_max - 2]");
  const Matrix r = reduced_state(rho_ss, Mode::A);
  auto el = [&](int i, int j) -> cplx {
    if (i < 0 || j < 0) return 0.0;
    return r(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  const double nn = n;
  const double big_n = spec.n_mean_a;
  const cplx m = spec.m_complex();
  cplx res = nn * big_n * el(n - 1, n - 1) - (2.0 * nn * big_n + big_n + nn) * el(n, n) +
             (big_n + 1.0) * (nn + 1.0) * el(n + 1, n + 1);
  const double up = std::sqrt((nn + 1.0) * (nn + 2.0));
  const double mid = 2.0 * std::sqrt(nn * (nn + 1.0));
  const double down = std::sqrt(nn * (nn - 1.0));
  if (form == RecurrenceForm::AsPrinted) {
    const cplx c = 0.5 * (up * (el(n + 2, n) + el(n, n + 2)) -
                          mid * (el(n + 1, n - 1) + el(n - 1, n + 1)) +
                          down * (el(n - 2, n) - el(n, n - 2)));
    res += m * c;
  } else {
    res += 0.5 * m * (up * el(n + 2, n) + down * el(n, n - 2) - mid * el(n + 1, n - 1));
    res += 0.5 * std::conj(m) * (up * el(n, n + 2) + down * el(n - 2, n) - mid * el(n - 1, n + 1));
  }
  return std::abs(res);
}

}  // namespace sqzent
