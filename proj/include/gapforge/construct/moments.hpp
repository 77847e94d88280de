#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/exactnum/rational.hpp"

namespace gapforge {

// First moments, second moments and pairwise moments of named variables.
struct MomentSpec {
  std::vector<std::string> names;
  std::vector<Rational> mean;
  std::vector<Rational> square;
  std::map<std::pair<std::size_t, std::size_t>, Rational> cross;  // keys (i, j) with i < j

  std::size_t size() const { return names.size(); }
  std::size_t add(std::string name, Rational m, Rational sq);
  void set_cross(std::size_t i, std::size_t j, Rational value);
  // Pairwise moment; unlisted pairs are treated as independent.
  Rational cross_at(std::size_t i, std::size_t j) const;
  std::size_t index_of(const std::string& name) const;

  // Conditions every distribution satisfies: c_ii >= c_i^2 and Cauchy-Schwarz on covariances.
  // With sign_valued, also |c_i| <= 1, c_ii = 1 and |c_ij| <= 1.
  std::vector<std::string> realizability_issues(bool sign_valued = false) const;

  bool operator==(const MomentSpec&) const = default;
};

}  // namespace gapforge
