#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapforge/predicate/linear_form.hpp"

namespace gapforge {

using IntVector = std::vector<long>;

// Integer-valued solution vectors, cyclic forms l_a and one distribution per form.
struct Core {
  std::vector<LinearForm> forms;
  std::vector<IntVector> vectors;  // sorted, distinct
  Rational mean;                   // c_i
  Rational square;                 // c_ii
  Rational cross;                  // c_ij, i != j
  // dists[a][v] is the probability of vectors[v] under D_a.
  std::vector<std::vector<Rational>> dists;

  int arity() const { return static_cast<int>(forms.empty() ? 0 : forms.front().arity()); }
};

Core core_instance();

// Forms with the weight layout x_a + 3/2 - (8/1495)(x_{a+1} + x_{a+2}), indices mod 4.
LinearForm core_form(int a);

struct CoreReport {
  bool split_ok = true;  // every vector makes exactly half the forms positive and none zero
  std::optional<IntVector> split_failure;
  int split_failure_count = 0;

  bool support_ok = true;
  std::optional<std::pair<int, IntVector>> support_failure;  // form index, vector

  bool moments_ok = true;
  std::optional<std::string> moment_failure;  // e.g. "D_2 E[v_1 v_3] = 1/5, expected 0"

  bool pass() const { return split_ok && support_ok && moments_ok; }
};

CoreReport verify_core(const Core& core);

// The parametric family with vectors (-a,-a,-b,-b), (-a,-c,-c,d), (e,0,0,0).
struct CoreParameters {
  Rational a, b, c, d, e;
  Rational p1, p2, p3;  // per-vector probabilities of the three families under D_1
  Rational variance;    // common E[x_i^2]
};

// Solves for d from the ratio condition, then e and the probabilities. Throws NoSolution.
CoreParameters solve_core_parameters(const Rational& a, const Rational& c, const Rational& b);

// Residuals of the six moment equations (all zero for a valid solution).
std::vector<Rational> core_parameter_residuals(const CoreParameters& p);

}  // namespace gapforge
