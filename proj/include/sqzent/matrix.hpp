#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sqzent {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major storage.
///
/// Products skip zero entries of the left factor, which keeps the
/// ladder-operator algebra cheap without a separate sparse format.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t n) { return Matrix(n, n); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  cplx trace() const;

  /// Largest entrywise modulus.
  double max_abs() const;
  double frobenius_norm() const;
  /// Induced 1-norm (max column sum).
  double norm1() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s);

  /// this += s * other
  void add_scaled(const Matrix& other, cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, cplx s);
Matrix operator*(cplx s, Matrix a);
CVector operator*(const Matrix& a, std::span<const cplx> v);

Matrix kron(const Matrix& a, const Matrix& b);

/// Largest entrywise |a - b|.
double max_abs_diff(const Matrix& a, const Matrix& b);
/// Largest entrywise |m - m^dagger|.
double hermiticity_error(const Matrix& m);

/// Column-stacking vectorisation: vec(X)[j*rows + i] = X(i, j).
CVector vec(const Matrix& m);
Matrix unvec(std::span<const cplx> v, std::size_t rows);

double max_abs(std::span<const cplx> v);

}  // namespace sqzent
