#include "sqzent/fock.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "sqzent/error.hpp"
#include "sqzent/linalg.hpp"

namespace sqzent {

ModeBasis::ModeBasis(int n_max_a, int n_max_b) : ModeBasis(n_max_a, n_max_b, false) {}

ModeBasis ModeBasis::single_mode(int n_max) { return ModeBasis(n_max, 0, true); }

ModeBasis::ModeBasis(int n_max_a, int n_max_b, bool allow_frozen_b)
    : n_max_a_(n_max_a), n_max_b_(n_max_b) {
  if (n_max_a < 1) throw InvalidArgument("ModeBasis: n_max_a must be >= 1");
  if (n_max_b < (allow_frozen_b ? 0 : 1))
    throw InvalidArgument("ModeBasis: n_max_b must be >= 1");
  dim_ = static_cast<std::size_t>(n_max_a + 1) * static_cast<std::size_t>(n_max_b + 1);
}

std::size_t ModeBasis::index(int n_a, int n_b) const {
  if (n_a < 0 || n_a > n_max_a_ || n_b < 0 || n_b > n_max_b_)
    throw InvalidArgument("ModeBasis: occupation (" + std::to_string(n_a) + "," +
                          std::to_string(n_b) + ") outside the truncated space");
  return static_cast<std::size_t>(n_a) * static_cast<std::size_t>(n_max_b_ + 1) +
         static_cast<std::size_t>(n_b);
}

std::pair<int, int> ModeBasis::occupations(std::size_t index) const {
  if (index >= dim_) throw InvalidArgument("ModeBasis: index out of range");
  const auto width = static_cast<std::size_t>(n_max_b_ + 1);
  return {static_cast<int>(index / width), static_cast<int>(index % width)};
}

OperatorMatrix annihilation(int n_max) {
  if (n_max < 1) throw InvalidArgument("annihilation: n_max must be >= 1");
  const auto d = static_cast<std::size_t>(n_max + 1);
  OperatorMatrix a(d, d);
  for (std::size_t m = 0; m + 1 < d; ++m) a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
  return a;
}

OperatorMatrix embed(const OperatorMatrix& op, Mode mode, const ModeBasis& basis) {
  const auto da = static_cast<std::size_t>(basis.n_max_a() + 1);
  const auto db = static_cast<std::size_t>(basis.n_max_b() + 1);
  const std::size_t expected = mode == Mode::A ? da : db;
  if (!op.square() || op.rows() != expected)
    throw InvalidArgument("embed: operator dimension " + std::to_string(op.rows()) +
                          " does not match mode cutoff dimension " + std::to_string(expected));
  return mode == Mode::A ? kron(op, Matrix::identity(db)) : kron(Matrix::identity(da), op);
}

std::size_t sector_label_index(int label, int n, const ModeBasis& basis) {
  if (n != 1 && n != 2) throw InvalidArgument("sector_label_index: n must be 1 or 2");
  const int count = (n + 1) * (n + 1);
  if (label < 1 || label > count)
    throw InvalidArgument("sector_label_index: label " + std::to_string(label) +
                          " out of range for n = " + std::to_string(n));
  if (basis.n_max_a() < n || basis.n_max_b() < n)
    throw InvalidArgument("sector_label_index: basis cutoff below the excitation number");
  const int n_a = (label - 1) / (n + 1);
  const int n_b = (label - 1) % (n + 1);
  return basis.index(n_a, n_b);
}

std::optional<int> sector_label_of(std::size_t index, int n, const ModeBasis& basis) {
  if (n != 1 && n != 2) throw InvalidArgument("sector_label_of: n must be 1 or 2");
  const auto [n_a, n_b] = basis.occupations(index);
  if (n_a > n || n_b > n) return std::nullopt;
  return n_a * (n + 1) + n_b + 1;
}

std::optional<std::string> density_matrix_violation(const ModeBasis& basis, const Matrix& m) {
  if (!m.square() || m.rows() != basis.dim()) return "dimension does not match the basis";
  if (!m.all_finite()) return "non-finite entry";
  const double herm = hermiticity_error(m);
  if (herm > DensityMatrix::kHermitianTol)
    return "not Hermitian (max |rho - rho^dagger| = " + std::to_string(herm) + ")";
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > DensityMatrix::kTraceTol)
    return "trace " + std::to_string(tr.real()) + " differs from 1";
  const double lmin = min_hermitian_eigenvalue(m);
  if (lmin < -DensityMatrix::kPositivityTol)
    return "negative eigenvalue " + std::to_string(lmin);
  return std::nullopt;
}

DensityMatrix::DensityMatrix(ModeBasis basis, Matrix entries)
    : basis_(basis), entries_(std::move(entries)) {
  if (auto why = density_matrix_violation(basis_, entries_))
    throw NumericalError("invalid density matrix: " + *why);
}

cplx DensityMatrix::element(int label_i, int label_j, int n) const {
  return entries_(sector_label_index(label_i, n, basis_), sector_label_index(label_j, n, basis_));
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(entries_); }

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

void validate(const InitialStateSpec& spec) {
  if (spec.n != 1 && spec.n != 2)
    throw InvalidArgument("initial state: excitation number n must be 1 or 2");
  constexpr double kSlack = 1e-12;
  if (!(spec.alpha >= -kSlack && spec.alpha <= std::numbers::pi / 2 + kSlack))
    throw InvalidArgument("initial state: alpha must lie in [0, pi/2]");
  if (!(spec.psi >= -kSlack && spec.psi < 2 * std::numbers::pi))
    throw InvalidArgument("initial state: psi must lie in [0, 2pi)");
}

CVector initial_state_vector(const InitialStateSpec& spec, const ModeBasis& basis) {
  validate(spec);
  if (basis.n_max_a() < spec.n || basis.n_max_b() < spec.n)
    throw InvalidArgument("initial state: basis cutoff " + std::to_string(basis.n_max_a()) +
                          "x" + std::to_string(basis.n_max_b()) +
                          " is smaller than the excitation number " + std::to_string(spec.n));
  CVector psi(basis.dim(), 0.0);
  const cplx second = std::polar(1.0, -spec.psi) * std::sin(spec.alpha);
  const int n = spec.n;
  if (spec.family == StateFamily::NOON) {
    psi[basis.index(0, n)] += std::cos(spec.alpha);
    psi[basis.index(n, 0)] += second;
  } else {
    psi[basis.index(0, 0)] += std::cos(spec.alpha);
    psi[basis.index(n, n)] += second;
  }
  return psi;
}

DensityMatrix build_initial_state(const InitialStateSpec& spec, const ModeBasis& basis) {
  const auto psi = initial_state_vector(spec, basis);
  Matrix rho(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(basis, std::move(rho));
}

std::string to_string(StateFamily f) { return f == StateFamily::NOON ? "noon" : "epr"; }

StateFamily parse_state_family(const std::string& s) {
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "noon") return StateFamily::NOON;
  if (lower == "epr") return StateFamily::EPR;
  throw InvalidArgument("unknown initial state family '" + s + "' (expected noon|epr)");
}

}  // namespace sqzent
