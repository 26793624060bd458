#include "sqzent/lindblad.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sqzent/error.hpp"

namespace sqzent {
namespace {

// Slack on the upper squeezing bound so that |M| = sqrt(N(N+1)) computed in
// floating point is accepted.
constexpr double kBoundSlack = 1e-12;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void add_term(std::vector<LindbladTerm>& terms, cplx coeff, const OperatorMatrix& left,
              const OperatorMatrix& right) {
  if (coeff == cplx{0.0, 0.0}) return;
  terms.push_back({coeff, left, right, right * left});
}

struct ModeOps {
  OperatorMatrix a;
  OperatorMatrix ad;
};

std::vector<ModeOps> mode_operators(const ModeBasis& basis) {
  std::vector<ModeOps> ops;
  const auto a = embed(annihilation(basis.n_max_a()), Mode::A, basis);
  ops.push_back({a, a.adjoint()});
  if (!basis.is_single_mode()) {
    const auto b = embed(annihilation(basis.n_max_b()), Mode::B, basis);
    ops.push_back({b, b.adjoint()});
  }
  return ops;
}

void add_thermal_terms(std::vector<LindbladTerm>& terms, const ReservoirSpec& spec,
                       const std::vector<ModeOps>& ops) {
  const double half_kappa = 0.5 * spec.kappa;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const double n = j == 0 ? spec.n_mean_a : spec.n_mean_b;
    add_term(terms, half_kappa * (n + 1.0), ops[j].a, ops[j].ad);  // decay
    add_term(terms, half_kappa * n, ops[j].ad, ops[j].a);          // pumping
  }
}

void dense_add(Matrix& dense, const LindbladTerm& term) {
  // vec(A X B) = (B^T (x) A) vec X, vec(C X) = (I (x) C) vec X,
  // vec(X C) = (C^T (x) I) vec X.
  const std::size_t d = term.left.rows();
  const Matrix id = Matrix::identity(d);
  dense.add_scaled(kron(term.right.transpose(), term.left), 2.0 * term.coeff);
  dense.add_scaled(kron(id, term.right_left), -term.coeff);
  dense.add_scaled(kron(term.right_left.transpose(), id), -term.coeff);
}

}  // namespace

cplx ReservoirSpec::m_complex() const { return std::polar(m_mag, -theta); }

double default_two_mode_correlation(double n_i, double n_j) { return std::sqrt(n_i * (n_j + 1.0)); }

double max_squeezing(const ReservoirSpec& spec) {
  const double na = spec.n_mean_a, nb = spec.n_mean_b;
  if (spec.topology == Topology::SeparateReservoirs)
    return std::min(std::sqrt(na * (na + 1.0)), std::sqrt(nb * (nb + 1.0)));
  return std::min(default_two_mode_correlation(na, nb), default_two_mode_correlation(nb, na));
}

void validate(const ReservoirSpec& spec) {
  if (!(spec.kappa > 0.0) || !std::isfinite(spec.kappa))
    throw InvalidArgument("reservoir: kappa must be positive");
  if (!(spec.n_mean_a >= 0.0) || !(spec.n_mean_b >= 0.0) || !std::isfinite(spec.n_mean_a) ||
      !std::isfinite(spec.n_mean_b))
    throw InvalidArgument("reservoir: mean photon numbers must be non-negative");
  if (!(spec.m_mag >= 0.0) || !std::isfinite(spec.m_mag))
    throw InvalidArgument("reservoir: |M| must be non-negative");
  if (!std::isfinite(spec.theta)) throw InvalidArgument("reservoir: theta must be finite");
  const double bound = max_squeezing(spec);
  if (spec.m_mag > bound + kBoundSlack)
    throw InvalidArgument("reservoir: unphysical squeezing |M| = " + std::to_string(spec.m_mag) +
                          " exceeds sqrt(N(N+1)) = " + std::to_string(bound));
}

RegimeClass classify_regime(double n_mean, double m_mag) {
  if (!(n_mean >= 0.0) || !(m_mag >= 0.0))
    throw InvalidArgument("classify_regime: N and |M| must be non-negative");
  if (m_mag > std::sqrt(n_mean * (n_mean + 1.0)) + kBoundSlack)
    throw InvalidArgument("classify_regime: unphysical |M| > sqrt(N(N+1))");
  if (m_mag == 0.0) return n_mean == 0.0 ? RegimeClass::Vacuum : RegimeClass::Thermal;
  if (m_mag <= n_mean) return RegimeClass::ClassicalSqueezing;
  return RegimeClass::QuantumSqueezing;
}

std::string to_string(RegimeClass r) {
  switch (r) {
    case RegimeClass::Vacuum: return "vacuum";
    case RegimeClass::Thermal: return "thermal";
    case RegimeClass::ClassicalSqueezing: return "classical-squeezing";
    case RegimeClass::QuantumSqueezing: return "quantum-squeezing";
  }
  return "unknown";
}

std::pair<double, double> squeezing_from_r(double r) {
  if (!(r >= 0.0)) throw InvalidArgument("squeezing_from_r: r must be non-negative");
  const double s = std::sinh(r);
  return {s * s, s * std::cosh(r)};
}

std::string to_string(Topology t) {
  return t == Topology::SeparateReservoirs ? "separate" : "common";
}

Topology parse_topology(const std::string& s) {
  const auto l = lower(s);
  if (l == "separate") return Topology::SeparateReservoirs;
  if (l == "common") return Topology::CommonReservoir;
  throw InvalidArgument("unknown topology '" + s + "' (expected separate|common)");
}

Superoperator::Superoperator(ModeBasis basis, ReservoirSpec spec, std::vector<LindbladTerm> terms)
    : basis_(basis), spec_(spec), terms_(std::move(terms)) {
  const std::size_t d = basis_.dim();
  for (const auto& t : terms_)
    if (t.left.rows() != d || t.right.rows() != d)
      throw InvalidArgument("Superoperator: term dimension does not match the basis");
  dense_ = Matrix(d * d, d * d);
  for (const auto& t : terms_) {
    dense_add(dense_, t);
    transposed_.push_back({t.right.transpose(), t.right_left.transpose()});
  }
}

Matrix Superoperator::apply(const Matrix& rho) const {
  const std::size_t d = basis_.dim();
  if (rho.rows() != d || rho.cols() != d)
    throw InvalidArgument("Superoperator::apply: input dimension does not match the basis");
  // Products are arranged so the sparse ladder factor is always on the left,
  // where Matrix multiplication skips zeros: X B = (B^T X^T)^T.
  const Matrix rho_t = rho.transpose();
  Matrix out(d, d);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    const auto& [right_t, right_left_t] = transposed_[k];
    Matrix sandwich = (right_t * (t.left * rho).transpose()).transpose();
    sandwich *= 2.0;
    sandwich -= t.right_left * rho;
    sandwich -= (right_left_t * rho_t).transpose();
    out.add_scaled(sandwich, t.coeff);
  }
  return out;
}

Superoperator liouvillian_separate(const ReservoirSpec& spec, const ModeBasis& basis) {
  if (spec.topology != Topology::SeparateReservoirs)
    throw InvalidArgument("liouvillian_separate: reservoir topology is not separate");
  if (basis.is_single_mode()) {
    // Mode B is frozen; only the mode-A bound applies.
    auto single = spec;
    single.n_mean_b = spec.n_mean_a;
    validate(single);
  } else {
    validate(spec);
  }
  const auto ops = mode_operators(basis);
  std::vector<LindbladTerm> terms;
  add_thermal_terms(terms, spec, ops);
  const double half_kappa = 0.5 * spec.kappa;
  const cplx m = spec.m_complex();
  for (const auto& op : ops) {
    add_term(terms, -half_kappa * m, op.a, op.a);
    add_term(terms, -half_kappa * std::conj(m), op.ad, op.ad);
  }
  return Superoperator(basis, spec, std::move(terms));
}

Superoperator liouvillian_common(const ReservoirSpec& spec, const ModeBasis& basis) {
  if (spec.topology != Topology::CommonReservoir)
    throw InvalidArgument("liouvillian_common: reservoir topology is not common");
  if (basis.is_single_mode())
    throw InvalidArgument("liouvillian_common: a common reservoir needs two modes");
  validate(spec);
  const auto ops = mode_operators(basis);
  std::vector<LindbladTerm> terms;
  add_thermal_terms(terms, spec, ops);
  const double half_kappa = 0.5 * spec.kappa;
  const cplx m = spec.m_complex();
  // Sum over ordered pairs i != j: M (2 a_j rho a_i - a_i a_j rho - rho a_i a_j)
  // and its conjugate with creation operators.
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    add_term(terms, -half_kappa * m, ops[j].a, ops[i].a);
    add_term(terms, -half_kappa * std::conj(m), ops[j].ad, ops[i].ad);
  }
  return Superoperator(basis, spec, std::move(terms));
}

Superoperator build_liouvillian(const ReservoirSpec& spec, const ModeBasis& basis) {
  return spec.topology == Topology::SeparateReservoirs ? liouvillian_separate(spec, basis)
                                                       : liouvillian_common(spec, basis);
}

Matrix apply(const Superoperator& l, const DensityMatrix& rho) {
  if (!(rho.basis() == l.basis()))
    throw InvalidArgument("apply: density matrix basis does not match the Liouvillian");
  return l.apply(rho.matrix());
}

CVector trace_functional(std::size_t dim) {
  CVector t(dim * dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) t[k * dim + k] = 1.0;
  return t;
}

}  // namespace sqzent
