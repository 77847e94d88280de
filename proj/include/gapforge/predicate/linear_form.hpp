#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "gapforge/exactnum/rational.hpp"

namespace gapforge {

// l(x) = sum_i weights[i] * x_i + constant. Balanced forms have constant zero.
struct LinearForm {
  std::vector<Rational> weights;
  Rational constant;

  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> w, Rational c = 0) : weights(std::move(w)), constant(std::move(c)) {}
  static LinearForm integral(std::initializer_list<long> w, long c = 0);

  std::size_t arity() const { return weights.size(); }
  bool balanced() const { return constant == 0; }

  Rational evaluate(const std::vector<Rational>& x) const;
  // Evaluates at the +-1 point whose bit i is set iff x_{i+1} = +1.
  Rational evaluate_signs(std::uint64_t bits) const;

  LinearForm scaled(const Rational& factor) const;
  LinearForm operator+(const LinearForm& other) const;

  bool operator==(const LinearForm& other) const = default;
};

// Sign of l(x); throws ZeroValue when l(x) = 0.
int eval_ltf(const LinearForm& form, const std::vector<Rational>& x);
int eval_ltf_signs(const LinearForm& form, std::uint64_t bits);

// Positive multiple of a form with int64 coefficients, for fast enumeration.
struct ScaledForm {
  std::vector<std::int64_t> weights;
  std::int64_t constant = 0;

  static ScaledForm from(const LinearForm& form);
  std::int64_t at_signs(std::uint64_t bits) const {
    std::int64_t s = constant;
    for (std::size_t i = 0; i < weights.size(); ++i) s += ((bits >> i) & 1U) ? weights[i] : -weights[i];
    return s;
  }
};

}  // namespace gapforge
