#pragma once

#include <cmath>
#include <random>

#include "sqzent/fock.hpp"
#include "sqzent/matrix.hpp"

namespace testing {

using sqzent::cplx;
using sqzent::Matrix;

inline Matrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::size_t n, std::mt19937& rng) {
  Matrix m = random_matrix(n, rng);
  Matrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

/// G G^dagger / tr, full rank with probability one.
inline Matrix random_density(std::size_t n, std::mt19937& rng) {
  Matrix g = random_matrix(n, rng);
  Matrix r = g * g.adjoint();
  r *= 1.0 / r.trace().real();
  return r;
}

inline Matrix projector(const sqzent::CVector& psi) {
  Matrix p(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
  return p;
}

}  // namespace testing
