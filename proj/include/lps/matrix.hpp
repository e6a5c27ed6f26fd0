#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace lps {

/// Dense square row-major matrix. Used for intermediate products that are not
/// symmetric (eigenvector bases, PQ, ...).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::span<const double> data() const { return a_; }

  Matrix transposed() const;
  double max_abs() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

/// Dense real symmetric matrix. Construction symmetrizes as (M + M^T)/2 and
/// rejects non-finite entries, so entries(i,j) == entries(j,i) always.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n);
  explicit SymMatrix(const Matrix& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);
  explicit SymMatrix(const std::vector<std::vector<double>>& rows);

  static SymMatrix identity(std::size_t n);
  static SymMatrix zeros(std::size_t n) { return SymMatrix(n); }
  static SymMatrix diag(std::span<const double> d);
  static SymMatrix diag(std::initializer_list<double> d);
  static SymMatrix ones(std::size_t n);

  std::size_t dim() const { return m_.dim(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& dense() const { return m_; }

  double trace() const;
  double max_abs() const { return m_.max_abs(); }
  double frobenius() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
SymMatrix operator*(SymMatrix a, double s);

/// X * M * X^T, symmetrized.
SymMatrix congruence(const Matrix& x, const SymMatrix& m);
/// X * M * X for symmetric X (the C^T A C form with C = C^T).
SymMatrix sandwich(const SymMatrix& x, const SymMatrix& m);
/// V diag(d) V^T.
SymMatrix from_spectrum(const Matrix& v, std::span<const double> d);

/// Max-norm distance between two matrices of equal dimension.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const SymMatrix& a, const SymMatrix& b);

/// Embed a 2x2 block into coordinates (i, j) of an n x n zero matrix.
SymMatrix embed_2x2(const SymMatrix& block, std::size_t n, std::size_t i, std::size_t j);

std::ostream& operator<<(std::ostream& os, const Matrix& m);
std::ostream& operator<<(std::ostream& os, const SymMatrix& m);

}  // namespace lps
