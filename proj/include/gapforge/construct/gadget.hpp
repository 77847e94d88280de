#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gapforge/construct/core.hpp"
#include "gapforge/construct/moments.hpp"
#include "gapforge/predicate/linear_form.hpp"

namespace gapforge {

// One permutation gadget on m input vectors of n coordinates.
// Variable layout: inputs v, outputs w, indicators p_ij, slack pairs d+_ijk, d-_ijk.
struct Gadget {
  int m = 0;
  int n = 0;
  long bound = 0;
  std::vector<IntVector> inputs;
  std::vector<std::string> variables;
  std::vector<std::pair<long, long>> ranges;
  std::vector<LinearForm> equalities;  // each must evaluate to 0

  std::size_t input(int i, int k) const;
  std::size_t output(int i, int k) const;
  std::size_t indicator(int i, int j) const;
  std::size_t slack_plus(int i, int j, int k) const;
  std::size_t slack_minus(int i, int j, int k) const;
  std::size_t variable_count() const { return variables.size(); }
};

Gadget build_gadget(const std::vector<IntVector>& vectors, long bound);

// Values of every gadget variable for outputs w_i = v_{perm(i)} (the consistent completion).
std::vector<long> gadget_assignment(const Gadget& g, const std::vector<int>& perm);

constexpr std::uint64_t kMaxGadgetSearch = std::uint64_t{1} << 24;

struct GadgetVerification {
  std::uint64_t settings = 0;    // (outputs, indicators) pairs searched; slacks are then forced
  std::uint64_t satisfying = 0;
  std::set<std::vector<long>> output_patterns;
  bool permutations_only = true;       // every satisfying setting is a permutation with matching indicators
  bool all_permutations_found = true;  // every permutation appears
  bool ok() const { return permutations_only && all_permutations_found; }
};

GadgetVerification verify_gadget(const Gadget& g);

// A variable of the three-gadget chain. Level 0 holds the specified vectors; outputs of gadget g are level g.
struct ChainVar {
  enum class Kind { Vector, Indicator, SlackPlus, SlackMinus };
  Kind kind = Kind::Vector;
  int level = 0;  // 0..3 for vectors, 1..3 otherwise
  int i = 0, j = 0, k = 0;
  std::string name() const;
  bool operator==(const ChainVar&) const = default;
};

// Exact moments of every chain variable under the lifted distribution: gadget outputs chosen by
// uniform permutation triples whose composition sends row 1 of the last output to the row drawn
// from the base distribution.
class GadgetMoments {
 public:
  // base_mean[k] = c_k and base_second[k][l] = c_kl (diagonal c_kk) for the first row of the last output.
  GadgetMoments(std::vector<IntVector> vectors, long bound, std::vector<Rational> base_mean,
                std::vector<std::vector<Rational>> base_second);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Rational>& vector_mean() const { return a_; }                    // a_k
  const std::vector<std::vector<Rational>>& vector_second() const { return a2_; }    // a_kl

  Rational mean(const ChainVar& v) const;
  Rational pair(const ChainVar& u, const ChainVar& v) const;  // E[uv], including u == v

  std::vector<ChainVar> variables() const;
  std::size_t variable_count() const;
  // Full table; CapExceeded above max_variables.
  MomentSpec materialize(std::size_t max_variables = 4096) const;

 private:
  struct Term {
    Rational coef;
    int kind;  // -1 constant, 0 vector atom, 1 indicator atom
    int level, i, j;
  };
  std::vector<Term> expand(const ChainVar& v) const;
  Rational atom_mean(const Term& t) const;
  Rational atom_pair(const Term& s, const Term& t) const;
  Rational last_row_mean(int row, int k) const;

  int m_, n_;
  long bound_;
  std::vector<IntVector> v_;
  std::vector<Rational> c_;
  std::vector<std::vector<Rational>> c2_;
  std::vector<Rational> a_;
  std::vector<std::vector<Rational>> a2_;
};

}  // namespace gapforge
