#include "gapforge/predicate/constraint.hpp"

#include <algorithm>
#include <set>

#include "gapforge/error.hpp"

namespace gapforge {

std::uint64_t Constraint::predicate_input(std::uint64_t local_bits) const {
  std::uint64_t flip = 0;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] < 0) flip |= std::uint64_t{1} << i;
  return local_bits ^ flip;
}

void Constraint::validate(int n, int predicate_arity) const {
  if (static_cast<int>(phi.size()) != predicate_arity || signs.size() != phi.size())
    throw DimensionMismatch("constraint map and signs must match the predicate arity");
  std::set<int> seen;
  for (int v : phi) {
    if (v < 0 || v >= n) throw InvalidArgument("constraint variable " + std::to_string(v + 1) + " out of range");
    if (!seen.insert(v).second) throw InvalidArgument("constraint map is not injective");
  }
  for (int z : signs)
    if (z != 1 && z != -1) throw InvalidArgument("constraint signs must be +1 or -1");
}

std::map<GlobalSubset, Rational> global_fourier(const FourierTable& table, const Constraint& c) {
  if (static_cast<int>(c.phi.size()) != table.arity()) throw DimensionMismatch("constraint arity differs from table");
  std::map<GlobalSubset, Rational> out;
  for (std::uint64_t s = 0; s < table.size(); ++s) {
    if (table.numerator(s) == 0) continue;
    GlobalSubset t;
    int sign = 1;
    for (std::size_t i = 0; i < c.phi.size(); ++i) {
      if ((s >> i) & 1U) {
        t.push_back(c.phi[i]);
        sign *= c.signs[i];
      }
    }
    std::sort(t.begin(), t.end());
    out[t] += sign * table.coefficient(s);
  }
  return out;
}

}  // namespace gapforge
