#pragma once

#include <map>
#include <optional>
#include <string>

#include "sqzent/matrix.hpp"
#include "sqzent/measures.hpp"

namespace sqzent {

/// Closed-form values at one time. Element keys are "rhoIJ" with sector
/// labels (n = 1: 1..4, n = 2: 1..9); scalars hold derived quantities such as
/// partial-transpose eigenvalues.
struct AnalyticSnapshot {
  double time = 0.0;
  std::map<std::string, cplx> elements;
  std::map<std::string, double> scalars;
  std::optional<MeasureValue> measure;
};

/// Vacuum reservoir, n = 1 NOON. Elements rho11, rho22, rho33, rho23 and the
/// concurrence |sin 2a| e^{-kt}.
AnalyticSnapshot vacuum_noon_n1(double alpha, double psi, double kt);

/// Vacuum reservoir, n = 1 EPR. Elements rho11, rho22, rho33, rho44, rho14,
/// scalar "population_gap" = rho11 - rho44 and the concurrence
/// max(0, [|sin 2a| - 2(1 - e^{-kt}) sin^2 a] e^{-kt}).
AnalyticSnapshot vacuum_epr_n1(double alpha, double psi, double kt);

/// Vacuum reservoir, n = 2 NOON. Elements rho11, rho37; scalar "mu1" is the
/// negative partial-transpose eigenvalue [rho11 - sqrt(rho11^2 + 4|rho37|^2)]/2
/// and "mu1_printed" the variant with |rho37|^2 in place of 4|rho37|^2.
/// The measure is the log-negativity log2(1 + 2|mu1|).
AnalyticSnapshot vacuum_noon_n2_eigen(double alpha, double psi, double kt);

/// Vacuum reservoir, n = 2 EPR. Elements rho33, rho77, rho19 (psi = 0);
/// scalar "mu2" = [(1 - e^{-kt})^2 sin^2 a - |sin 2a|/2] e^{-2kt}.
/// The measure is log2(1 + 2 max(0, -mu2)).
AnalyticSnapshot vacuum_epr_n2_eigen(double alpha, double kt);

/// Separate squeezed reservoirs, NOON n = 1:
/// 1/2 e^{i psi} sin 2a cosh(2|M| kt) e^{-(4N+1) kt}.
cplx separate_squeezed_rho23(double alpha, double psi, double n_mean, double m_mag, double kt);

/// Separate squeezed reservoirs, EPR n = 1:
/// 1/2 sin 2a e^{-(4N+1) kt} e^{i psi} [cosh^2(|M| kt) + e^{-2i(theta+psi)} sinh^2(|M| kt)].
cplx separate_squeezed_rho14(double alpha, double psi, double theta, double n_mean,
                             double m_mag, double kt);

/// Sudden-death time of the vacuum EPR n = 1 concurrence, -ln(1 - cot a),
/// for a > pi/4; empty otherwise.
std::optional<double> esd_time_vacuum_epr_n1(double alpha);

}  // namespace sqzent
