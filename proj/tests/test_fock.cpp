#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqzent/error.hpp"
#include "sqzent/fock.hpp"
#include "support.hpp"

using namespace sqzent;
using std::numbers::pi;

TEST_CASE("annihilation operator entries") {
  const auto a1 = annihilation(1);
  CHECK(max_abs_diff(a1, Matrix{{0.0, 1.0}, {0.0, 0.0}}) == 0.0);

  const auto a2 = annihilation(2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const double want = (i == 0 && j == 1) ? 1.0 : (i == 1 && j == 2) ? std::sqrt(2.0) : 0.0;
      CHECK(std::abs(a2(i, j) - want) == doctest::Approx(0.0));
    }

  const auto a4 = annihilation(4);
  const auto number = a4.adjoint() * a4;
  CVector three(5, 0.0);
  three[3] = 1.0;
  const auto out = number * std::span<const cplx>(three);
  for (std::size_t k = 0; k < 5; ++k)
    CHECK(std::abs(out[k] - (k == 3 ? 3.0 : 0.0)) < 1e-15);

  CHECK_THROWS_AS(annihilation(0), InvalidArgument);
}

TEST_CASE("commutator [a, a^dagger] is the identity below the cutoff row") {
  for (int n_max : {1, 2, 5}) {
    const auto a = annihilation(n_max);
    const auto c = a * a.adjoint() - a.adjoint() * a;
    const auto d = static_cast<std::size_t>(n_max);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= d; ++j) CHECK(std::abs(c(i, j) - (i == j ? 1.0 : 0.0)) < 1e-14);
    // Truncation boundary: <n_max|[a, a^dagger]|n_max> = -n_max.
    CHECK(c(d, d).real() == doctest::Approx(-n_max));
  }
}

TEST_CASE("embedding on two modes") {
  const ModeBasis basis(2, 2);
  const auto id3 = Matrix::identity(3);
  CHECK(max_abs_diff(embed(id3, Mode::A, basis), Matrix::identity(9)) == 0.0);
  CHECK(max_abs_diff(embed(id3, Mode::B, basis), Matrix::identity(9)) == 0.0);

  const auto a = embed(annihilation(2), Mode::A, basis);
  const auto b = embed(annihilation(2), Mode::B, basis);
  const auto left = a * b.adjoint();
  const auto right = b.adjoint() * a;
  CHECK(max_abs_diff(left, right) == 0.0);

  CVector ket(9, 0.0);
  ket[basis.index(2, 0)] = 1.0;
  const auto out = a * std::span<const cplx>(ket);
  CHECK(std::abs(out[basis.index(1, 0)] - std::sqrt(2.0)) < 1e-15);

  CHECK_THROWS_AS(embed(annihilation(1), Mode::A, basis), InvalidArgument);
}

TEST_CASE("basis index map is a bijection") {
  const ModeBasis basis(3, 2);
  CHECK(basis.dim() == 12);
  std::vector<bool> hit(basis.dim(), false);
  for (int na = 0; na <= 3; ++na)
    for (int nb = 0; nb <= 2; ++nb) {
      const auto idx = basis.index(na, nb);
      REQUIRE(idx < basis.dim());
      CHECK_FALSE(hit[idx]);
      hit[idx] = true;
      CHECK(basis.occupations(idx) == std::pair{na, nb});
    }
  CHECK_THROWS_AS(ModeBasis(0, 2), InvalidArgument);
  CHECK_THROWS_AS(ModeBasis(2, 0), InvalidArgument);
  CHECK_THROWS_AS(basis.index(4, 0), InvalidArgument);
}

TEST_CASE("sector labels") {
  const ModeBasis basis(2, 2);
  CHECK(sector_label_index(3, 1, basis) == basis.index(1, 0));
  CHECK(sector_label_index(7, 2, basis) == basis.index(2, 0));
  CHECK(sector_label_index(1, 1, basis) == basis.index(0, 0));
  CHECK(sector_label_index(9, 2, basis) == basis.index(2, 2));
  CHECK_THROWS_AS(sector_label_index(5, 1, basis), InvalidArgument);
  CHECK_THROWS_AS(sector_label_index(0, 2, basis), InvalidArgument);
  CHECK_THROWS_AS(sector_label_index(1, 2, ModeBasis(1, 1)), InvalidArgument);

  for (int n : {1, 2}) {
    const int count = (n + 1) * (n + 1);
    for (int label = 1; label <= count; ++label)
      CHECK(sector_label_of(sector_label_index(label, n, basis), n, basis) == label);
  }
  CHECK_FALSE(sector_label_of(basis.index(2, 0), 1, basis).has_value());
}

TEST_CASE("initial states") {
  const ModeBasis basis(2, 2);

  SUBCASE("NOON n=1 at alpha = pi/4") {
    const auto rho = build_initial_state({StateFamily::NOON, 1, pi / 4, 0.0}, basis);
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        const bool half = (i == 2 || i == 3) && (j == 2 || j == 3);
        CHECK(std::abs(rho.element(i, j, 1) - (half ? 0.5 : 0.0)) < 1e-15);
      }
  }
  SUBCASE("EPR n=1 at alpha = 0 is the vacuum") {
    const auto rho = build_initial_state({StateFamily::EPR, 1, 0.0, 0.0}, basis);
    CHECK(rho(0, 0).real() == doctest::Approx(1.0));
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
    CHECK(rho.purity() == doctest::Approx(1.0));
    CHECK(std::abs(rho(0, 0)) - 1.0 == doctest::Approx(0.0));
  }
  SUBCASE("EPR n=2 coherence rho19") {
    const auto rho = build_initial_state({StateFamily::EPR, 2, pi / 3, pi / 2}, basis);
    // <0,0|rho|2,2> = cos(a) * conj(e^{-i psi} sin(a)) = i cos(a) sin(a)
    const cplx want = cplx(0.0, std::cos(pi / 3) * std::sin(pi / 3));
    CHECK(std::abs(rho.element(1, 9, 2) - want) < 1e-15);
    CHECK(rho.element(1, 9, 2).imag() == doctest::Approx(0.4330127).epsilon(1e-6));
  }
  SUBCASE("projectors are pure") {
    for (auto fam : {StateFamily::NOON, StateFamily::EPR})
      for (int n : {1, 2})
        for (double alpha : {0.0, 0.3, pi / 4, 1.2, pi / 2})
          for (double psi : {0.0, 1.0, 5.5}) {
            const auto rho = build_initial_state({fam, n, alpha, psi}, basis);
            CHECK(max_abs_diff(rho.matrix() * rho.matrix(), rho.matrix()) < 1e-12);
            CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-14);
          }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(build_initial_state({StateFamily::NOON, 2, 0.1, 0.0}, ModeBasis(1, 1)),
                    InvalidArgument);
    CHECK_THROWS_AS(build_initial_state({StateFamily::NOON, 3, 0.1, 0.0}, basis), InvalidArgument);
    CHECK_THROWS_AS(build_initial_state({StateFamily::NOON, 1, 2.0, 0.0}, basis), InvalidArgument);
    CHECK_THROWS_AS(build_initial_state({StateFamily::NOON, 1, 0.5, 2 * pi}, basis),
                    InvalidArgument);
    CHECK(parse_state_family("EPR") == StateFamily::EPR);
    CHECK_THROWS_AS(parse_state_family("ghz"), InvalidArgument);
  }
}

TEST_CASE("density matrix invariants are enforced") {
  const ModeBasis basis(1, 1);
  Matrix m = Matrix::identity(4);
  m *= 0.25;
  CHECK_NOTHROW(DensityMatrix(basis, m));

  Matrix bad_trace = m;
  bad_trace(0, 0) += 1e-6;
  CHECK_THROWS_AS(DensityMatrix(basis, bad_trace), NumericalError);

  Matrix non_hermitian = m;
  non_hermitian(0, 1) = 1e-6;
  CHECK_THROWS_AS(DensityMatrix(basis, non_hermitian), NumericalError);

  Matrix negative(4, 4);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix(basis, negative), NumericalError);

  CHECK_THROWS_AS(DensityMatrix(ModeBasis(2, 2), m), NumericalError);
}
