#pragma once

#include <string>

#include "sqzent/fock.hpp"
#include "sqzent/matrix.hpp"

namespace sqzent {

enum class MeasureKind { Concurrence, LogNegativity };

struct MeasureValue {
  MeasureKind kind;
  double value = 0.0;
  /// Concurrence: the larger of the two X-state candidates (or the Wootters
  /// combination sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) before clamping.
  /// Log-negativity: the sum of negative partial-transpose eigenvalues.
  double raw = 0.0;
};

/// Tolerance on entries outside the diagonal and anti-diagonal of an X state.
inline constexpr double kXFormTol = 1e-10;
/// Negative eigenvalues of the partial transpose above -kNegativityClamp
/// count as zero.
inline constexpr double kNegativityClamp = 1e-12;

/// The 4x4 block of rho on the states with at most one photon per mode,
/// ordered |00>, |01>, |10>, |11>. Not renormalised.
Matrix single_excitation_block(const DensityMatrix& rho);

/// C = max(0, 2(|r23| - sqrt(r11 r44)), 2(|r14| - sqrt(r22 r33))) on the
/// single-excitation block. Throws InvalidArgument when the block is not
/// X-shaped within kXFormTol.
MeasureValue concurrence_x_state(const DensityMatrix& rho);
MeasureValue concurrence_x_state(const Matrix& block4);

/// Wootters concurrence of the single-excitation block. Throws
/// NumericalError when rho * rho~ has an eigenvalue with imaginary part
/// above 1e-9.
MeasureValue concurrence_wootters(const DensityMatrix& rho);
MeasureValue concurrence_wootters(const Matrix& block4);

/// <nA mB| rho^TB |nA' mB'> = <nA mB'| rho |nA' mB>.
Matrix partial_transpose_b(const DensityMatrix& rho);
Matrix partial_transpose_b(const Matrix& rho, const ModeBasis& basis);

/// log2(1 + 2 |sum of negative eigenvalues of rho^TB|), from the full
/// partial-transpose spectrum.
MeasureValue log_negativity(const DensityMatrix& rho);
MeasureValue log_negativity(const Matrix& rho, const ModeBasis& basis);

std::string to_string(MeasureKind k);

}  // namespace sqzent
