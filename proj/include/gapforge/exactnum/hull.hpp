#pragma once

#include <vector>

#include "gapforge/exactnum/rational.hpp"

namespace gapforge {

// Outcome of a convex-hull membership query. Exactly one certificate is set:
// convex weights when member, otherwise a separating hyperplane with
// normal . q <= offset for every hull point q and normal . p > offset.
struct HullResult {
  bool member = false;
  std::vector<Rational> weights;
  std::vector<Rational> normal;
  Rational offset;
};

HullResult hull_member(const std::vector<Rational>& p,
                       const std::vector<std::vector<Rational>>& points);

// Re-checks a certificate by direct substitution.
bool certificate_valid(const HullResult& result, const std::vector<Rational>& p,
                       const std::vector<std::vector<Rational>>& points);

}  // namespace gapforge
