#pragma once

#include <cstddef>
#include <vector>

#include "gapforge/exactnum/rational.hpp"

namespace gapforge {

// Symmetric matrix of rationals; only the upper triangle is stored.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n = 0);

  static SymMatrix identity(std::size_t n);
  static SymMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t size() const { return n_; }

  const Rational& operator()(std::size_t i, std::size_t j) const;
  Rational& at(std::size_t i, std::size_t j);

  Rational quadratic_form(const std::vector<Rational>& v) const;
  std::vector<std::vector<Rational>> dense() const;

  bool operator==(const SymMatrix& other) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::vector<Rational> upper_;
};

}  // namespace gapforge
