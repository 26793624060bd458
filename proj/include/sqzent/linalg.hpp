#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqzent/matrix.hpp"

namespace sqzent {

/// Eigenvalues sorted descending by real part; ties keep the order in which
/// the solver produced them (original diagonal index for Jacobi).
struct Spectrum {
  std::vector<cplx> values;

  std::size_t count() const { return values.size(); }
  std::vector<double> real_parts() const;
};

struct HermitianEigensystem {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Throws InvalidArgument when the input departs from
/// Hermitian by more than 1e-10 (relative to its largest entry when that
/// exceeds one).
Spectrum hermitian_eigenvalues(const Matrix& h);
HermitianEigensystem hermitian_eigensystem(const Matrix& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const Matrix& h);

/// All eigenvalues of a general complex matrix of dimension at most 4.
/// Closed form for dim <= 2, Hessenberg + shifted QR otherwise.
Spectrum general_eigenvalues_small(const Matrix& m);

/// LU factorisation with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);

  CVector solve(std::span<const cplx> b) const;
  Matrix solve(const Matrix& b) const;

  /// min |pivot| / max |pivot|; zero for an exactly singular matrix.
  double pivot_ratio() const { return pivot_ratio_; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double pivot_ratio_ = 0.0;
};

/// exp(t*l) by scaling and squaring with the degree-13 Pade approximant.
Matrix expm(const Matrix& l, double t);
CVector expm_apply(const Matrix& l, double t, std::span<const cplx> v);

/// Solves l x = 0 subject to trace_functional . x = 1 by overwriting the
/// first row of l with the constraint. Throws NumericalError when the kernel
/// is not one-dimensional or the residual exceeds 1e-10.
CVector nullspace_unit_trace(const Matrix& l, std::span<const cplx> trace_functional);

}  // namespace sqzent
