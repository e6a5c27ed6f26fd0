#include "lps/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "lps/errors.hpp"

namespace lps {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()), a_(n_ * n_, 0.0) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw InputError("Matrix: rows must have length n");
    std::copy(row.begin(), row.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * n_));
    ++i;
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a.dim(), b.dim(), "matmul");
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dim(a.dim(), b.dim(), "add");
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a.dim(), b.dim(), "subtract");
  Matrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

SymMatrix::SymMatrix(std::size_t n) : m_(n) {}

SymMatrix::SymMatrix(const Matrix& m) : m_(m.dim()) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = i == j ? m(i, i) : 0.5 * (m(i, j) + m(j, i));
      if (!std::isfinite(v)) {
        throw InputError("SymMatrix: non-finite entry at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      m_(i, j) = v;
      m_(j, i) = v;
    }
  }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix::SymMatrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("SymMatrix: row " + std::to_string(i) + " has length " +
                       std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  *this = SymMatrix(m);
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

SymMatrix SymMatrix::diag(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return SymMatrix(m);
}

SymMatrix SymMatrix::diag(std::initializer_list<double> d) {
  return diag(std::span<const double>(d.begin(), d.size()));
}

SymMatrix SymMatrix::ones(std::size_t n) { return SymMatrix(Matrix(n, 1.0)); }

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
  return t;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (double x : m_.data()) s += x * x;
  return std::sqrt(s);
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  require_same_dim(dim(), o.dim(), "add");
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m_(i, j) += o(i, j);
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  require_same_dim(dim(), o.dim(), "subtract");
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m_(i, j) -= o(i, j);
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m_(i, j) *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
SymMatrix operator*(SymMatrix a, double s) { return a *= s; }

SymMatrix congruence(const Matrix& x, const SymMatrix& m) {
  return SymMatrix(x * m.dense() * x.transposed());
}

SymMatrix sandwich(const SymMatrix& x, const SymMatrix& m) {
  return SymMatrix(x.dense() * m.dense() * x.dense());
}

SymMatrix from_spectrum(const Matrix& v, std::span<const double> d) {
  const std::size_t n = v.dim();
  require_same_dim(n, d.size(), "from_spectrum");
  Matrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (d[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = v(i, k) * d[k];
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * v(j, k);
    }
  }
  return SymMatrix(out);
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  return max_abs_diff(a.dense(), b.dense());
}

SymMatrix embed_2x2(const SymMatrix& block, std::size_t n, std::size_t i, std::size_t j) {
  if (block.dim() != 2) throw InputError("embed_2x2: block must be 2x2");
  if (i >= n || j >= n || i == j) throw InputError("embed_2x2: invalid coordinates");
  Matrix m(n);
  m(i, i) = block(0, 0);
  m(i, j) = block(0, 1);
  m(j, i) = block(1, 0);
  m(j, j) = block(1, 1);
  return SymMatrix(m);
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

std::ostream& operator<<(std::ostream& os, const SymMatrix& m) { return os << m.dense(); }

}  // namespace lps
