#include "sqzent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqzent/error.hpp"

namespace sqzent {
namespace {

// (p - sqrt(p^2 + q)) / 2 for p, q >= 0, written without the cancellation
// that flushes it to zero once q << p^2.
double lower_root(double p, double q) {
  if (q == 0.0) return 0.0;
  return -0.5 * q / (p + std::sqrt(p * p + q));
}

void require_time(double kt) {
  if (!(kt >= 0.0)) throw InvalidArgument("analytic oracle: kt must be >= 0");
}

MeasureValue concurrence_value(double raw) {
  return {MeasureKind::Concurrence, std::max(0.0, raw), raw};
}

MeasureValue negativity_from_eigenvalue(double mu) {
  const double neg = std::min(0.0, mu);
  return {MeasureKind::LogNegativity, std::log2(1.0 + 2.0 * std::abs(neg)), neg};
}

}  // namespace

AnalyticSnapshot vacuum_noon_n1(double alpha, double psi, double kt) {
  require_time(kt);
  const double e = std::exp(-kt);
  const double c = std::cos(alpha), s = std::sin(alpha);
  AnalyticSnapshot snap;
  snap.time = kt;
  snap.elements["rho11"] = 1.0 - e;
  snap.elements["rho22"] = e * c * c;
  snap.elements["rho33"] = e * s * s;
  snap.elements["rho23"] = e * std::polar(1.0, psi) * c * s;
  snap.measure = concurrence_value(std::abs(std::sin(2.0 * alpha)) * e);
  return snap;
}

AnalyticSnapshot vacuum_epr_n1(double alpha, double psi, double kt) {
  require_time(kt);
  const double e = std::exp(-kt);
  const double c = std::cos(alpha), s = std::sin(alpha);
  AnalyticSnapshot snap;
  snap.time = kt;
  snap.elements["rho11"] = 1.0 - (2.0 - e) * e * s * s;
  snap.elements["rho22"] = (1.0 - e) * e * s * s;
  snap.elements["rho33"] = (1.0 - e) * e * s * s;
  snap.elements["rho44"] = e * e * s * s;
  snap.elements["rho14"] = e * std::polar(1.0, psi) * c * s;
  snap.scalars["population_gap"] = 1.0 - 2.0 * e * s * s;
  snap.measure =
      concurrence_value((std::abs(std::sin(2.0 * alpha)) - 2.0 * (1.0 - e) * s * s) * e);
  return snap;
}

AnalyticSnapshot vacuum_noon_n2_eigen(double alpha, double psi, double kt) {
  require_time(kt);
  const double e = std::exp(-kt);
  const double rho11 = (1.0 - e) * (1.0 - e);
  const cplx rho37 = e * e * std::polar(1.0, psi) * std::cos(alpha) * std::sin(alpha);
  const double c2 = std::norm(rho37);
  const double mu1 = lower_root(rho11, 4.0 * c2);
  AnalyticSnapshot snap;
  snap.time = kt;
  snap.elements["rho11"] = rho11;
  snap.elements["rho37"] = rho37;
  snap.scalars["mu1"] = mu1;
  snap.scalars["mu1_printed"] = lower_root(rho11, c2);
  snap.measure = negativity_from_eigenvalue(mu1);
  return snap;
}

AnalyticSnapshot vacuum_epr_n2_eigen(double alpha, double kt) {
  require_time(kt);
  const double e = std::exp(-kt);
  const double s = std::sin(alpha);
  const double decayed = (1.0 - e) * (1.0 - e);
  const double mu2 = (decayed * s * s - 0.5 * std::abs(std::sin(2.0 * alpha))) * e * e;
  AnalyticSnapshot snap;
  snap.time = kt;
  snap.elements["rho33"] = e * e * decayed * s * s;
  snap.elements["rho77"] = e * e * decayed * s * s;
  snap.elements["rho19"] = e * e * std::cos(alpha) * s;
  snap.scalars["mu2"] = mu2;
  snap.measure = negativity_from_eigenvalue(mu2);
  return snap;
}

cplx separate_squeezed_rho23(double alpha, double psi, double n_mean, double m_mag, double kt) {
  require_time(kt);
  return 0.5 * std::polar(1.0, psi) * std::sin(2.0 * alpha) * std::cosh(2.0 * m_mag * kt) *
         std::exp(-(4.0 * n_mean + 1.0) * kt);
}

cplx separate_squeezed_rho14(double alpha, double psi, double theta, double n_mean,
                             double m_mag, double kt) {
  require_time(kt);
  const double ch = std::cosh(m_mag * kt), sh = std::sinh(m_mag * kt);
  const cplx bracket = ch * ch + std::polar(1.0, -2.0 * (theta + psi)) * sh * sh;
  return 0.5 * std::sin(2.0 * alpha) * std::exp(-(4.0 * n_mean + 1.0) * kt) *
         std::polar(1.0, psi) * bracket;
}

std::optional<double> esd_time_vacuum_epr_n1(double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2))
    throw InvalidArgument("esd_time_vacuum_epr_n1: alpha must lie in (0, pi/2)");
  if (alpha <= std::numbers::pi / 4) return std::nullopt;
  return -std::log(1.0 - 1.0 / std::tan(alpha));
}

}  // namespace sqzent
