#pragma once

#include <cstdint>
#include <vector>

#include "gapforge/predicate/linear_form.hpp"

namespace gapforge {

// Finite box: allowed values for each variable.
struct Domain {
  std::vector<std::vector<Rational>> values;

  static Domain signs(int k);
  static Domain box(const std::vector<std::pair<long, long>>& ranges);  // inclusive integer ranges
  std::size_t arity() const { return values.size(); }
  // Number of points, saturating at UINT64_MAX.
  std::uint64_t size() const;
  // Point with mixed-radix index.
  std::vector<Rational> point(std::uint64_t index) const;
};

constexpr std::uint64_t kMaxDomainEnumeration = std::uint64_t{1} << 22;

struct ZSet {
  LinearForm form;
  Domain domain;
  bool contains(const std::vector<Rational>& x) const { return form.evaluate(x) == 0; }
  // All members, by enumeration (CapExceeded beyond kMaxDomainEnumeration points).
  std::vector<std::vector<Rational>> members() const;
};

ZSet zset(const LinearForm& form, const Domain& domain);

// Exact max of |l| over the box.
Rational max_abs_over(const LinearForm& form, const Domain& domain);

struct MinNonzero {
  Rational value;
  bool exact = true;  // false when only the lattice lower bound 1/denominator was used
};
// Smallest nonzero |l| over the box: enumerated when small, otherwise a lattice lower bound.
// Throws InvalidArgument if l vanishes on the whole domain.
MinNonzero min_nonzero_abs_over(const LinearForm& form, const Domain& domain);

struct EnforceResult {
  LinearForm plus;   // B l_c + l_r
  LinearForm minus;  // -B l_c + l_r
  Integer multiplier;
  Rational min_constraint;  // a
  bool min_exact = true;
  Rational max_remainder;   // b
};

// B = floor(b / a) + 1 so that off Z(l_c) the two forms have opposite signs.
EnforceResult enforce(const LinearForm& constraint, const LinearForm& remainder, const Domain& domain);

// B l_1 + l_2 with B large enough that its zero set is Z(l_1) and Z(l_2) together.
LinearForm conjoin(const LinearForm& first, const LinearForm& second, const Domain& domain);

}  // namespace gapforge
