#include "sqzent/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sqzent/error.hpp"

namespace sqzent {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<std::size_t> descending_order(const std::vector<double>& keys) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return idx;
}

void require_hermitian(const Matrix& h, const char* who) {
  if (!h.square()) throw InvalidArgument(std::string(who) + ": matrix is not square");
  if (!h.all_finite()) throw NumericalError(std::string(who) + ": non-finite entry");
  const double scale = std::max(1.0, h.max_abs());
  const double err = hermiticity_error(h);
  if (err > 1e-10 * scale)
    throw InvalidArgument(std::string(who) + ": input is not Hermitian (|H - H^dagger| = " +
                          std::to_string(err) + ")");
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Diagonalises a copy of h in place. Returns the unsorted diagonal; when
// vectors is non-null it accumulates the rotations.
std::vector<double> jacobi(const Matrix& h, Matrix* vectors) {
  const std::size_t n = h.rows();
  Matrix a = h;
  // Symmetrise so round-off in the input does not leak into the rotations.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  if (vectors) *vectors = Matrix::identity(n);

  const double target = 1e-14 * std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase that makes the pivot real, then a real symmetric rotation.
        const cplx phase = apq / r;
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx u00 = c, u01 = s;
        const cplx u10 = -s * std::conj(phase), u11 = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (vectors) {
          Matrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * u00 + vkq * u10;
            v(k, q) = vkp * u01 + vkq * u11;
          }
        }
      }
    }
  }
  if (sweep == kMaxSweeps) throw NumericalError("Jacobi eigensolver did not converge");

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  return diag;
}

// Householder reduction to upper Hessenberg form.
Matrix hessenberg(Matrix h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0, 0.0} : x0 / std::abs(x0);
    CVector v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * xnorm;
    double vnorm = 0.0;
    for (const auto& x : v) vnorm += std::norm(x);
    if (vnorm == 0.0) continue;
    // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      cplx dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= 2.0 / vnorm;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      cplx dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= 2.0 / vnorm;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
  return h;
}

std::array<cplx, 2> eig2(cplx a, cplx b, cplx c, cplx d) {
  const cplx mean = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cplx big = std::abs(mean + disc) >= std::abs(mean - disc) ? mean + disc : mean - disc;
  const cplx det = a * d - b * c;
  // Small root through the determinant avoids cancellation.
  const cplx small = big == cplx{0.0, 0.0} ? cplx{0.0, 0.0} : det / big;
  return {big, small};
}

std::vector<cplx> hessenberg_qr_eigenvalues(Matrix h) {
  const std::size_t n = h.rows();
  std::vector<cplx> eig(n);
  const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    std::size_t l = hi;
    while (l > 0) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * s || std::abs(h(l, l - 1)) <= kEps * kEps * hnorm) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 200 * static_cast<int>(n))
      throw NumericalError("QR eigenvalue iteration did not converge");
    ++iter;

    cplx mu;
    if (iter % 11 == 0) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1));  // exceptional shift
    } else {
      const auto roots = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      mu = std::abs(roots[0] - h(hi, hi)) < std::abs(roots[1] - h(hi, hi)) ? roots[0] : roots[1];
    }

    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    std::vector<std::array<cplx, 2>> rot;
    for (std::size_t k = l; k < hi; ++k) {
      const cplx x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cplx c = 1.0, s = 0.0;
      if (r != 0.0) {
        c = x / r;
        s = y / r;
      }
      rot.push_back({c, s});
      for (std::size_t j = k; j <= hi; ++j) {  // rows k, k+1 <- G [.]
        const cplx a = h(k, j), b = h(k + 1, j);
        h(k, j) = std::conj(c) * a + std::conj(s) * b;
        h(k + 1, j) = -s * a + c * b;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {  // columns k, k+1 <- [.] G^H
      const auto [c, s] = rot[k - l];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = l; i <= last; ++i) {
        const cplx a = h(i, k), b = h(i, k + 1);
        h(i, k) = a * c + b * s;
        h(i, k + 1) = -a * std::conj(s) + b * std::conj(c);
      }
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

}  // namespace

std::vector<double> Spectrum::real_parts() const {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.real());
  return out;
}

Spectrum hermitian_eigenvalues(const Matrix& h) {
  require_hermitian(h, "hermitian_eigenvalues");
  const auto diag = jacobi(h, nullptr);
  Spectrum s;
  for (std::size_t k : descending_order(diag)) s.values.emplace_back(diag[k], 0.0);
  return s;
}

HermitianEigensystem hermitian_eigensystem(const Matrix& h) {
  require_hermitian(h, "hermitian_eigensystem");
  Matrix vecs;
  const auto diag = jacobi(h, &vecs);
  HermitianEigensystem out;
  out.vectors = Matrix(h.rows(), h.cols());
  std::size_t col = 0;
  for (std::size_t k : descending_order(diag)) {
    out.values.push_back(diag[k]);
    for (std::size_t i = 0; i < h.rows(); ++i) out.vectors(i, col) = vecs(i, k);
    ++col;
  }
  return out;
}

double min_hermitian_eigenvalue(const Matrix& h) {
  const auto s = hermitian_eigenvalues(h);
  return s.values.back().real();
}

Spectrum general_eigenvalues_small(const Matrix& m) {
  if (!m.square()) throw InvalidArgument("general_eigenvalues_small: matrix is not square");
  if (m.rows() > 4)
    throw InvalidArgument("general_eigenvalues_small: dimension " + std::to_string(m.rows()) +
                          " exceeds 4");
  if (!m.all_finite()) throw NumericalError("general_eigenvalues_small: non-finite entry");
  std::vector<cplx> eig;
  switch (m.rows()) {
    case 0:
      break;
    case 1:
      eig = {m(0, 0)};
      break;
    case 2: {
      const auto r = eig2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
      eig = {r[0], r[1]};
      break;
    }
    default:
      eig = hessenberg_qr_eigenvalues(hessenberg(m));
  }
  std::vector<double> keys;
  for (const auto& e : eig) keys.push_back(e.real());
  Spectrum s;
  for (std::size_t k : descending_order(keys)) s.values.push_back(eig[k]);
  return s;
}

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)) {
  if (!lu_.square()) throw InvalidArgument("LU: matrix is not square");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    pmin = std::min(pmin, best);
    pmax = std::max(pmax, best);
    if (best == 0.0) continue;
    const cplx inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu_(i, k) * inv;
      lu_(i, k) = f;
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  pivot_ratio_ = (n == 0 || pmax == 0.0) ? 0.0 : pmin / pmax;
}

CVector LuDecomposition::solve(std::span<const cplx> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw InvalidArgument("LU solve: right-hand side has wrong length");
  if (pivot_ratio_ == 0.0) throw NumericalError("LU solve: matrix is singular");
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  Matrix out(b.rows(), b.cols());
  CVector col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    const auto x = solve(col);
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, j) = x[i];
  }
  return out;
}

Matrix expm(const Matrix& l, double t) {
  if (!l.square()) throw InvalidArgument("expm: matrix is not square");
  if (!std::isfinite(t)) throw InvalidArgument("expm: non-finite time");
  if (!l.all_finite()) throw NumericalError("expm: non-finite generator entry");
  const std::size_t n = l.rows();
  Matrix a = l * cplx{t, 0.0};

  // Higham (2005), degree 13.
  constexpr double kTheta13 = 5.371920351148152;
  constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const double norm = a.norm1();
  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  if (squarings > 0) a *= cplx{std::ldexp(1.0, -squarings), 0.0};

  const Matrix id = Matrix::identity(n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;

  Matrix u_inner = a6 * b[13];
  u_inner.add_scaled(a4, b[11]);
  u_inner.add_scaled(a2, b[9]);
  Matrix u_outer = a6 * u_inner;
  u_outer.add_scaled(a6, b[7]);
  u_outer.add_scaled(a4, b[5]);
  u_outer.add_scaled(a2, b[3]);
  u_outer.add_scaled(id, b[1]);
  const Matrix u = a * u_outer;

  Matrix v_inner = a6 * b[12];
  v_inner.add_scaled(a4, b[10]);
  v_inner.add_scaled(a2, b[8]);
  Matrix v = a6 * v_inner;
  v.add_scaled(a6, b[6]);
  v.add_scaled(a4, b[4]);
  v.add_scaled(a2, b[2]);
  v.add_scaled(id, b[0]);

  const LuDecomposition lu(v - u);
  Matrix r = lu.solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!r.all_finite()) throw NumericalError("expm: overflow or non-finite result");
  return r;
}

CVector expm_apply(const Matrix& l, double t, std::span<const cplx> v) {
  if (t < 0.0) throw InvalidArgument("expm_apply: negative time");
  if (l.cols() != v.size()) throw InvalidArgument("expm_apply: vector length mismatch");
  if (t == 0.0) return CVector(v.begin(), v.end());
  auto out = expm(l, t) * v;
  for (const auto& x : out)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw NumericalError("expm_apply: non-finite result");
  return out;
}

CVector nullspace_unit_trace(const Matrix& l, std::span<const cplx> trace_functional) {
  if (!l.square()) throw InvalidArgument("nullspace_unit_trace: matrix is not square");
  const std::size_t n = l.rows();
  if (trace_functional.size() != n)
    throw InvalidArgument("nullspace_unit_trace: trace functional has wrong length");
  Matrix a = l;
  for (std::size_t j = 0; j < n; ++j) a(0, j) = trace_functional[j];
  const LuDecomposition lu(std::move(a));
  if (lu.pivot_ratio() < 1e-12)
    throw NumericalError(
        "nullspace_unit_trace: kernel is not one-dimensional (multiple steady states)");
  CVector rhs(n, 0.0);
  rhs[0] = 1.0;
  auto x = lu.solve(rhs);
  const double residual = max_abs(l * std::span<const cplx>(x));
  if (!(residual < 1e-10 * std::max(1.0, l.max_abs())))
    throw NumericalError("nullspace_unit_trace: residual " + std::to_string(residual) +
                         " exceeds 1e-10");
  return x;
}

}  // namespace sqzent
