#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "sqzent/matrix.hpp"

namespace sqzent {

/// Square matrix acting on a (one- or two-mode) truncated Fock space.
using OperatorMatrix = Matrix;

enum class Mode { A, B };

/// Truncated two-mode Fock space. States are stored row-major in the photon
/// numbers: index(n_a, n_b) = n_a * (n_max_b + 1) + n_b.
///
/// A single-mode space is represented with mode B frozen at n_max_b = 0
/// (dimension n_max_a + 1); only ModeBasis::single_mode builds one.
class ModeBasis {
 public:
  ModeBasis(int n_max_a, int n_max_b);
  static ModeBasis single_mode(int n_max);

  int n_max_a() const { return n_max_a_; }
  int n_max_b() const { return n_max_b_; }
  int n_max(Mode m) const { return m == Mode::A ? n_max_a_ : n_max_b_; }
  std::size_t dim() const { return dim_; }
  bool is_single_mode() const { return n_max_b_ == 0; }

  std::size_t index(int n_a, int n_b) const;
  std::pair<int, int> occupations(std::size_t index) const;

  friend bool operator==(const ModeBasis&, const ModeBasis&) = default;

 private:
  ModeBasis(int n_max_a, int n_max_b, bool allow_frozen_b);

  int n_max_a_;
  int n_max_b_;
  std::size_t dim_;
};

/// Bosonic annihilation operator truncated at n_max: <m|a|m+1> = sqrt(m+1).
OperatorMatrix annihilation(int n_max);

/// Lifts a single-mode operator to the two-mode space (op on `mode`, identity
/// on the other).
OperatorMatrix embed(const OperatorMatrix& op, Mode mode, const ModeBasis& basis);

/// Index of the product state numbered `label` in the single-excitation
/// (n = 1, labels 1..4) or double-excitation (n = 2, labels 1..9) ordering,
/// where label - 1 = n_a * (n + 1) + n_b.
std::size_t sector_label_index(int label, int n, const ModeBasis& basis);

/// Inverse of sector_label_index; empty when the state lies outside the
/// sector (some occupation exceeds n).
std::optional<int> sector_label_of(std::size_t index, int n, const ModeBasis& basis);

/// Hermitian, unit-trace, positive matrix on a ModeBasis. Validated on
/// construction; immutable afterwards.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kPositivityTol = 1e-8;

  /// Throws NumericalError when an invariant fails.
  DensityMatrix(ModeBasis basis, Matrix entries);

  const ModeBasis& basis() const { return basis_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return basis_.dim(); }

  cplx operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  /// Matrix element between product states named by sector labels.
  cplx element(int label_i, int label_j, int n) const;

  double min_eigenvalue() const;
  double purity() const;

 private:
  ModeBasis basis_;
  Matrix entries_;
};

/// Returns a description of the first violated DensityMatrix invariant, or
/// an empty optional when the matrix passes.
std::optional<std::string> density_matrix_violation(const ModeBasis& basis, const Matrix& m);

enum class StateFamily { NOON, EPR };

struct InitialStateSpec {
  StateFamily family = StateFamily::NOON;
  int n = 1;
  double alpha = 0.7853981633974483;  // pi/4
  double psi = 0.0;
};

void validate(const InitialStateSpec& spec);

/// NOON: cos(alpha)|0,n> + e^{-i psi} sin(alpha)|n,0>
/// EPR:  cos(alpha)|0,0> + e^{-i psi} sin(alpha)|n,n>
CVector initial_state_vector(const InitialStateSpec& spec, const ModeBasis& basis);
DensityMatrix build_initial_state(const InitialStateSpec& spec, const ModeBasis& basis);

std::string to_string(StateFamily f);
StateFamily parse_state_family(const std::string& s);

}  // namespace sqzent
