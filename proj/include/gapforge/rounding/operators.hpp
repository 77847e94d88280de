#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/exactnum/rational.hpp"
#include "gapforge/polytope/polytope.hpp"

namespace gapforge {

// Sorted 0-based variable indices.
using Monomial = std::vector<int>;

constexpr std::size_t kMaxExpectationEntries = std::size_t{1} << 20;

// E[x_I] after rounding. Exact when every step so far was exact; the real value is always set.
struct Expectation {
  std::optional<Rational> exact;
  double value = 0.0;
  double std_error = 0.0;
};

struct MonteCarloSettings {
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000000;
};

class ExpectationMap {
 public:
  // The trivial scheme x_i = 1 for every i, on all monomials of degree <= max_degree.
  static ExpectationMap all_ones(int arity, int max_degree);

  int arity() const { return arity_; }
  int max_degree() const { return max_degree_; }
  const std::map<Monomial, Expectation>& entries() const { return entries_; }
  const Expectation& at(const Monomial& monomial) const;
  // Operators applied so far, innermost first; stochastic steps carry seed and sample count.
  const std::vector<std::string>& history() const { return history_; }

  // E[x_empty] == 1 and every value within [-1, 1] (with 4 standard errors of slack).
  bool invariants_hold() const;

 private:
  friend ExpectationMap apply_chi_single(const ExpectationMap&, const Rational&, const std::vector<int>&,
                                         const BiasProfile&);
  friend ExpectationMap apply_chi_pair(const ExpectationMap&, const Rational&, const std::vector<int>&,
                                       const std::vector<int>&, const BiasProfile&, const MonteCarloSettings&);
  friend ExpectationMap apply_parity(const ExpectationMap&, const std::vector<std::vector<int>>&);

  int arity_ = 0;
  int max_degree_ = 0;
  std::map<Monomial, Expectation> entries_;
  std::vector<std::string> history_;
};

// Independent flips on V with E[flip_i] = alpha * b_i: multiplies E[x_I] by prod_{i in I cap V} alpha b_i.
ExpectationMap apply_chi_single(const ExpectationMap& in, const Rational& alpha, const std::vector<int>& part,
                                const BiasProfile& bias);

// Hyperplane signs sign(w . u_i) on V u V', with Gram matrix alpha B + (1 - alpha) I.
// Two hits: multiplier (2/pi) asin(alpha b_ij). Three or more: Monte Carlo estimate.
// Throws NotPsd if the Gram matrix is not positive semidefinite.
ExpectationMap apply_chi_pair(const ExpectationMap& in, const Rational& alpha, const std::vector<int>& first,
                              const std::vector<int>& second, const BiasProfile& bias,
                              const MonteCarloSettings& mc = {});

// Signed mixture over y in {-1,1}^m with weight 2^-m prod y: keeps E[x_I] iff I meets every part an odd
// number of times. Throws InvalidArgument on overlapping parts.
ExpectationMap apply_parity(const ExpectationMap& in, const std::vector<std::vector<int>>& parts);

// Monomial in biases over part roles: singles[j] is a factor b_{i_j}, pairs a factor b_{i_j i_j'}.
struct BiasMonomial {
  std::vector<int> singles;
  std::vector<std::pair<int, int>> pairs;
  int degree() const { return static_cast<int>(singles.size() + pairs.size()); }
};

struct SignedScheme {
  Rational coefficient;
  std::string descriptor;
};

struct SignedSchemeMixture {
  std::vector<SignedScheme> terms;
};

struct TargetReport {
  Monomial monomial;
  double achieved = 0.0;
  // alpha^deg (2/pi)^#pairs p(b)
  double leading = 0.0;
  double relative_error = 0.0;
};

struct OffTargetReport {
  Monomial monomial;
  double at_alpha = 0.0;
  double at_half_alpha = 0.0;
  double std_error = 0.0;
  bool decays = false;
};

struct SynthesisReport {
  SignedSchemeMixture mixture;
  Rational alpha;
  std::vector<TargetReport> targets;
  std::vector<OffTargetReport> off_targets;
  bool ratio_test_ok = false;
  MonteCarloSettings mc;
};

SynthesisReport synthesize_monomial(const BiasMonomial& monomial, const std::vector<std::vector<int>>& parts,
                                    const BiasProfile& bias, const Rational& alpha, const MonteCarloSettings& mc = {});

}  // namespace gapforge
