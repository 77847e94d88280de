#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/polytope/polytope.hpp"

namespace gapforge {

// Local assignment bits (bit i is the value of x_{phi(i)}) with probability.
using Distribution = std::vector<std::pair<std::uint64_t, Rational>>;

struct GapInstance {
  int n = 0;
  std::vector<Predicate> predicates;
  std::vector<Constraint> constraints;  // multi-set
  BiasProfile bias;
  std::vector<Distribution> dists;      // one per constraint

  // Structural checks: indices, arities, probabilities nonnegative and summing to 1.
  void validate() const;
  const Predicate& predicate_of(std::size_t a) const { return predicates.at(static_cast<std::size_t>(constraints.at(a).predicate)); }
  bool operator==(const GapInstance&) const = default;
};

// Failure details identify constraints by content so that reports do not depend on constraint order.
struct MomentMismatch {
  Constraint constraint;
  int i = 0;
  int j = -1;  // -1 for a first moment
  Rational expected;
  Rational actual;
  bool operator==(const MomentMismatch&) const = default;
};

struct SupportViolation {
  Constraint constraint;
  std::vector<int> assignment;  // values of x_{phi(1)}, ..., x_{phi(k)}
  bool operator==(const SupportViolation&) const = default;
};

struct GapReport {
  bool moments_ok = true;
  std::optional<MomentMismatch> moment_failure;

  bool support_ok = true;
  std::optional<SupportViolation> support_failure;

  bool psd_ok = true;
  std::vector<Rational> psd_witness;
  Rational psd_value;

  bool constant_ok = true;
  std::optional<GlobalSubset> nonconstant_subset;
  Rational nonconstant_coefficient;
  Rational constant;  // c with sum_a f_a = c m, from the empty-set coefficient

  bool pass() const { return moments_ok && support_ok && psd_ok && constant_ok; }
  bool operator==(const GapReport&) const = default;
};

GapReport verify_perfect_gap(const GapInstance& inst);

// Enumerates all 2^n assignments (n <= 24) and returns the sum of f_a if it is constant.
constexpr int kMaxBruteForceVariables = 24;
std::optional<Rational> brute_force_constant_sum(const GapInstance& inst);

// Bias profile recomputed from the distributions; the first constraint covering a moment wins.
BiasProfile bias_from_distributions(const GapInstance& inst);

// Signed bias point of constraint a: z_i b_{phi(i)} and z_i z_j b_{phi(i) phi(j)}.
PolytopePoint signed_bias_point(const GapInstance& inst, std::size_t a);

// Order of operations inside Lambda_{S,pi,z}.
enum class VanishOrder {
  PermuteThenNegate,  // q_i = z'_i p_{s_pi(i)}
  NegateThenPermute,  // q_i = z'_{pi(i)} p_{s_pi(i)}
};

struct VanishLevel {
  int t = 0;
  bool vanished = true;
  std::vector<Rational> atom;  // first atom (in coordinate order) with nonzero total weight
  Rational residual;
  bool operator==(const VanishLevel&) const = default;
};

struct VanishReport {
  std::vector<VanishLevel> levels;           // permute-then-negate reading
  std::vector<VanishLevel> alternate_levels; // negate-then-permute reading
  bool vanished() const;
};

constexpr int kMaxVanishArity = 6;

// Measure (1/m) sum_a delta_{points[a]}; each point carries the Fourier table of its constraint.
VanishLevel vanish_level(const std::vector<PolytopePoint>& points, const std::vector<const FourierTable*>& tables, int t,
                         VanishOrder order);

VanishLevel ktw_vanish_check(const GapInstance& inst, int t, VanishOrder order = VanishOrder::PermuteThenNegate);
// Levels 1..max_t (capped at the arity) under both orders.
VanishReport ktw_vanish_report(const GapInstance& inst, int max_t);

GapInstance builtin_three_xor();
GapInstance builtin_glst();
std::vector<std::string> builtin_names();
GapInstance builtin_instance(const std::string& name);

}  // namespace gapforge
