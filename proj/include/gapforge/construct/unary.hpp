#pragma once

#include <string>
#include <vector>

#include "gapforge/construct/moments.hpp"

namespace gapforge {

struct IntegerVarSpec {
  std::string name;
  long low = 0;   // a
  long high = 1;  // b, with a < b
  long digits() const { return high - low; }
};

enum class UnaryFormulas {
  Corrected,  // x - a digits at +1 and b - x at -1
  Printed,    // original uncorrected expressions, kept for comparison
};

// Moments of the +-1 digits y_ik with x_i = (a_i+b_i)/2 x_one + (1/2) sum_k y_ik.
// moments indexes variables in the order of specs.
class UnaryMoments {
 public:
  UnaryMoments(std::vector<IntegerVarSpec> specs, MomentSpec moments, UnaryFormulas formulas = UnaryFormulas::Corrected);

  Rational digit_mean(std::size_t i) const;                 // E[y_ik]
  Rational same_pair(std::size_t i) const;                  // E[y_ik y_ik'], k != k'; needs b-a >= 2
  Rational cross_pair(std::size_t i, std::size_t j) const;  // E[y_ik y_jk'], i != j
  std::size_t digit_count() const;                          // sum of (b_i - a_i)
  const std::vector<IntegerVarSpec>& specs() const { return specs_; }

 private:
  std::vector<IntegerVarSpec> specs_;
  MomentSpec moments_;
  UnaryFormulas formulas_;
};

constexpr std::size_t kMaxUnaryMaterialize = 4096;

// Moment table over x_one and every digit. Throws InvalidArgument on non-realizable output
// (a mean outside [a,b], or a digit moment outside [-1,1]) and CapExceeded above kMaxUnaryMaterialize.
MomentSpec unary_encode(const std::vector<IntegerVarSpec>& specs, const MomentSpec& moments,
                        UnaryFormulas formulas = UnaryFormulas::Corrected);

}  // namespace gapforge
