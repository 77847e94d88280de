#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapforge/gapverify/gapverify.hpp"
#include "gapforge/predicate/linear_form.hpp"

namespace gapforge {

bool is_power_of_two(std::size_t k);

// Form on k = 2^j variables with values in {-1,0,1} that is zero only at the all-zero input and whose
// sign averages to zero over variable permutations unless all inputs are equal.
LinearForm tri_valued_balanced(std::size_t k);

// l'(x, y) = B Q((x+y)/2) + l(x) on variables x_1..x_k, y_1..y_k. Requires l balanced and nonzero on signs.
LinearForm balance_double(const LinearForm& form);

struct MergeTerm {
  std::uint64_t y = 0, a = 0, b = 0;  // term x_ab - x_ab' - x_a'b + x_a'b' with a' = a^y, b' = b^y
  Rational coefficient;
};

struct MergeResult {
  std::size_t k = 0;
  LinearForm form;        // on k^2 variables, x_ab at index a k + b
  LinearForm second;      // l2 rescaled so that both weight sums agree
  Rational second_scale;  // positive factor applied to l2
  std::vector<std::vector<Rational>> grid;  // row sums w_i, column sums w'_j
  std::vector<MergeTerm> terms;             // in rank order, coefficients decreasing
};

// Requires both forms perfectly balanced on the same power-of-two arity and weight sums of the same sign.
MergeResult merge_dual(const LinearForm& first, const LinearForm& second);

struct MergeVerification {
  bool nonzero = true;
  bool row_constant_ok = true;     // l3 equals l1 on row-constant inputs
  bool column_constant_ok = true;  // l3 equals rescaled l2 on column-constant inputs
  bool column_average_ok = true;   // non-row-constant inputs average to 0 over column permutations
  bool row_average_ok = true;      // non-column-constant inputs average to 0 over row permutations
  bool balanced = true;
  std::optional<std::uint64_t> counterexample;
  bool ok() const {
    return nonzero && row_constant_ok && column_constant_ok && column_average_ok && row_average_ok && balanced;
  }
};

// Exhaustive over all 2^(k^2) inputs; k <= 4.
MergeVerification verify_merge(const LinearForm& first, const LinearForm& second, const MergeResult& merged);

// Instance whose constraints use predicate 0 = sign(first) or 1 = sign(second) on k variables, lifted to
// n k variables with the single predicate sign(l3). Constraint on l1 with map phi and signs z becomes, for
// every column permutation s, the map (i,j) -> phi(i) k + s(j) with sign z_i; constraints on l2 use the
// transposed layout (i,j) -> phi(j) k + s(i) with sign z_j.
struct TransformResult {
  GapInstance instance;
  MergeResult merge;
};
TransformResult instance_transform(const GapInstance& inst, const LinearForm& first, const LinearForm& second);

// Two variables, constraints sign(l1(x)) and sign(l2(x)), point distributions at (1,1), all biases 1.
GapInstance toy_pair_instance(const LinearForm& first, const LinearForm& second);

}  // namespace gapforge
