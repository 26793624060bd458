#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sqzent/fock.hpp"
#include "sqzent/matrix.hpp"

namespace sqzent {

enum class Topology { SeparateReservoirs, CommonReservoir };

/// Squeezed-vacuum reservoir. Time is measured in units of 1/kappa
/// throughout; the squeezing correlation is M = m_mag * exp(-i theta).
struct ReservoirSpec {
  Topology topology = Topology::SeparateReservoirs;
  double kappa = 1.0;
  double n_mean_a = 0.0;
  double n_mean_b = 0.0;
  double m_mag = 0.0;
  double theta = 0.0;

  cplx m_complex() const;
};

/// Largest |M| compatible with a positive dissipator for the given topology.
double max_squeezing(const ReservoirSpec& spec);
/// sqrt(N_i (N_j + 1)), the two-mode correlation of an ideal two-mode squeezed bath.
double default_two_mode_correlation(double n_i, double n_j);

/// Throws InvalidArgument for kappa <= 0, negative N, negative |M|, or
/// |M| above max_squeezing.
void validate(const ReservoirSpec& spec);

enum class RegimeClass { Vacuum, Thermal, ClassicalSqueezing, QuantumSqueezing };

/// Vacuum (N = M = 0), Thermal (N > 0, M = 0), ClassicalSqueezing
/// (0 < |M| <= N), QuantumSqueezing (N < |M| <= sqrt(N(N+1))). Throws
/// InvalidArgument for |M| beyond the physical bound.
RegimeClass classify_regime(double n_mean, double m_mag);
std::string to_string(RegimeClass r);

/// N = sinh^2 r, |M| = sinh r cosh r.
std::pair<double, double> squeezing_from_r(double r);

std::string to_string(Topology t);
Topology parse_topology(const std::string& s);

/// One dissipator term: coeff * (2 A rho B - B A rho - rho B A).
struct LindbladTerm {
  cplx coeff;
  OperatorMatrix left;   // A
  OperatorMatrix right;  // B
  OperatorMatrix right_left;  // B A, cached
};

/// Liouvillian of a reservoir master equation on a truncated space.
/// Immutable after construction; apply() is reentrant.
class Superoperator {
 public:
  Superoperator(ModeBasis basis, ReservoirSpec spec, std::vector<LindbladTerm> terms);

  const ModeBasis& basis() const { return basis_; }
  const ReservoirSpec& spec() const { return spec_; }
  const std::vector<LindbladTerm>& terms() const { return terms_; }

  /// dim^2 x dim^2 matrix acting on column-stacked density matrices.
  const Matrix& dense() const { return dense_; }

  /// Matrix-free evaluation of L(rho) by operator products.
  Matrix apply(const Matrix& rho) const;

 private:
  ModeBasis basis_;
  ReservoirSpec spec_;
  std::vector<LindbladTerm> terms_;
  std::vector<std::pair<Matrix, Matrix>> transposed_;  // B^T, (BA)^T per term
  Matrix dense_;
};

Superoperator liouvillian_separate(const ReservoirSpec& spec, const ModeBasis& basis);
Superoperator liouvillian_common(const ReservoirSpec& spec, const ModeBasis& basis);
/// Dispatches on spec.topology.
Superoperator build_liouvillian(const ReservoirSpec& spec, const ModeBasis& basis);

/// dρ/dt for a density matrix on the superoperator's basis.
Matrix apply(const Superoperator& l, const DensityMatrix& rho);

/// Column-stacked identity: the left null vector tr(.) of every Liouvillian.
CVector trace_functional(std::size_t dim);

}  // namespace sqzent
