#include "sqzent/measures.hpp"

#include <algorithm>
#include <cmath>

#include "sqzent/error.hpp"
#include "sqzent/linalg.hpp"

namespace sqzent {
namespace {

void require_block4(const Matrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw InvalidArgument("concurrence: expected a 4x4 single-excitation block");
}

// sigma_y (x) sigma_y in the |00>, |01>, |10>, |11> ordering.
Matrix spin_flip() {
  Matrix s(4, 4);
  s(0, 3) = -1.0;
  s(3, 0) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  return s;
}

}  // namespace

std::string to_string(MeasureKind k) {
  return k == MeasureKind::Concurrence ? "concurrence" : "log_negativity";
}

Matrix single_excitation_block(const DensityMatrix& rho) {
  const auto& basis = rho.basis();
  if (basis.is_single_mode())
    throw InvalidArgument("single_excitation_block: a two-mode state is required");
  std::size_t idx[4];
  for (int label = 1; label <= 4; ++label)
    idx[label - 1] = sector_label_index(label, 1, basis);
  Matrix b(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) b(i, j) = rho(idx[i], idx[j]);
  return b;
}

MeasureValue concurrence_x_state(const Matrix& b) {
  require_block4(b);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(b(i, j)) > kXFormTol)
        throw InvalidArgument("concurrence_x_state: state is not X-shaped (|rho_" +
                              std::to_string(i + 1) + std::to_string(j + 1) +
                              "| = " + std::to_string(std::abs(b(i, j))) + ")");
    }
  auto pop = [&](std::size_t k) { return std::max(0.0, b(k, k).real()); };
  const double c1 = 2.0 * (std::abs(b(1, 2)) - std::sqrt(pop(0) * pop(3)));
  const double c2 = 2.0 * (std::abs(b(0, 3)) - std::sqrt(pop(1) * pop(2)));
  const double raw = std::max(c1, c2);
  return {MeasureKind::Concurrence, std::max(0.0, raw), raw};
}

MeasureValue concurrence_x_state(const DensityMatrix& rho) {
  return concurrence_x_state(single_excitation_block(rho));
}

MeasureValue concurrence_wootters(const Matrix& b) {
  require_block4(b);
  const Matrix s = spin_flip();
  const Matrix rho_tilde = s * b.conjugate() * s;

  // The eigenvalues of rho * rho~ are provably real and non-negative; an
  // imaginary part signals a broken input or solver.
  const auto lambda = general_eigenvalues_small(b * rho_tilde);
  for (const auto& l : lambda.values)
    if (std::abs(l.imag()) > 1e-9)
      throw NumericalError("concurrence_wootters: complex eigenvalue of rho*rho~ (imag = " +
                           std::to_string(l.imag()) + ")");

  // sqrt(lambda_i) are the singular values of tau = W^T S W for rho = W W^dagger.
  // Computing them this way avoids the square-root amplification of rounding
  // in the tiny eigenvalues of rho * rho~.
  const auto eig = hermitian_eigensystem(b);
  Matrix w(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double root = std::sqrt(std::max(0.0, eig.values[k]));
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = eig.vectors(i, k) * root;
  }
  const Matrix tau = w.transpose() * s * w;
  Matrix dilation(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = tau(i, j);
      dilation(4 + j, i) = std::conj(tau(i, j));
    }
  const auto sv = hermitian_eigenvalues(dilation).real_parts();  // descending; top 4 are +sigma
  const double raw = sv[0] - sv[1] - sv[2] - sv[3];
  return {MeasureKind::Concurrence, std::max(0.0, raw), raw};
}

MeasureValue concurrence_wootters(const DensityMatrix& rho) {
  return concurrence_wootters(single_excitation_block(rho));
}

Matrix partial_transpose_b(const Matrix& rho, const ModeBasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw InvalidArgument("partial_transpose_b: matrix does not match the basis");
  Matrix pt(rho.rows(), rho.cols());
  for (int na = 0; na <= basis.n_max_a(); ++na)
    for (int mb = 0; mb <= basis.n_max_b(); ++mb)
      for (int na2 = 0; na2 <= basis.n_max_a(); ++na2)
        for (int mb2 = 0; mb2 <= basis.n_max_b(); ++mb2)
          pt(basis.index(na, mb), basis.index(na2, mb2)) =
              rho(basis.index(na, mb2), basis.index(na2, mb));
  return pt;
}

Matrix partial_transpose_b(const DensityMatrix& rho) {
  return partial_transpose_b(rho.matrix(), rho.basis());
}

MeasureValue log_negativity(const Matrix& rho, const ModeBasis& basis) {
  const auto spectrum = hermitian_eigenvalues(partial_transpose_b(rho, basis)).real_parts();
  double negative = 0.0;
  for (double mu : spectrum)
    if (mu <= -kNegativityClamp) negative += mu;
  return {MeasureKind::LogNegativity, std::log2(1.0 + 2.0 * std::abs(negative)), negative};
}

MeasureValue log_negativity(const DensityMatrix& rho) {
  return log_negativity(rho.matrix(), rho.basis());
}

}  // namespace sqzent
