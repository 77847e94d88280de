#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gapforge/predicate/predicate.hpp"

namespace gapforge {

// Fourier coefficients f_S = E_x[P(x) x_S], stored as integer numerators over 2^k.
class FourierTable {
 public:
  FourierTable(int k, std::vector<std::int64_t> numerators);

  int arity() const { return k_; }
  Rational coefficient(std::uint64_t subset) const;
  std::int64_t numerator(std::uint64_t subset) const { return num_[subset]; }
  std::size_t size() const { return num_.size(); }

 private:
  int k_;
  std::vector<std::int64_t> num_;
};

FourierTable fourier_transform(const Predicate& pred);

// Truth values recovered from the coefficients, in assignment order.
std::vector<int> inverse_transform(const FourierTable& table);

// Probability that a uniformly random assignment satisfies the predicate.
Rational random_sat_prob(const FourierTable& table);

// Coefficient classes of the almost-monarchy predicate: the president and a number of citizens.
struct CoefficientClass {
  bool president = false;
  int citizens = 0;

  static CoefficientClass parse(const std::string& text);  // "P", "C", "3C", "P+2C"
  std::string name() const;
  std::uint64_t subset() const;  // president is bit 0, citizens the next bits
};

Rational fourier_closed_form(int k, const CoefficientClass& cls);

// Every Hamming layer with 1 <= #(+1) <= k-1 has exactly half its points positive.
// Throws ZeroValue if the form vanishes anywhere on the cube.
bool check_perfectly_balanced(const LinearForm& form);

}  // namespace gapforge
