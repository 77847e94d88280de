#include "gapforge/exactnum/symmatrix.hpp"

#include "gapforge/error.hpp"

namespace gapforge {

SymMatrix::SymMatrix(std::size_t n) : n_(n), upper_(n * (n + 1) / 2) {}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DimensionMismatch("matrix is not square");
    for (std::size_t j = i; j < rows.size(); ++j) {
      if (rows[i][j] != rows[j][i]) throw InvalidArgument("matrix is not symmetric");
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

std::size_t SymMatrix::index(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionMismatch("matrix index out of range");
  if (i > j) std::swap(i, j);
  return i * n_ - i * (i - 1) / 2 + (j - i);
}

const Rational& SymMatrix::operator()(std::size_t i, std::size_t j) const { return upper_[index(i, j)]; }

Rational& SymMatrix::at(std::size_t i, std::size_t j) { return upper_[index(i, j)]; }

Rational SymMatrix::quadratic_form(const std::vector<Rational>& v) const {
  if (v.size() != n_) throw DimensionMismatch("vector length does not match matrix");
  Rational s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (v[i] == 0) continue;
    s += v[i] * v[i] * (*this)(i, i);
    for (std::size_t j = i + 1; j < n_; ++j) s += 2 * v[i] * v[j] * (*this)(i, j);
  }
  return s;
}

std::vector<std::vector<Rational>> SymMatrix::dense() const {
  std::vector<std::vector<Rational>> rows(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

}  // namespace gapforge
