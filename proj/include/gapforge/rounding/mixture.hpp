#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gapforge/exactnum/rational.hpp"
#include "gapforge/polytope/polytope.hpp"
#include "gapforge/predicate/predicate.hpp"

namespace gapforge {

// Convex combination of satisfying assignments; doubles as its own membership certificate.
struct VertexMixture {
  int k = 0;
  std::vector<std::pair<std::uint64_t, Rational>> vertices;

  static VertexMixture vertex(int k, std::uint64_t bits);
  // Throws InvalidArgument unless weights are positive, sum to 1 and every vertex satisfies pred.
  void validate(const Predicate& pred) const;
  std::vector<Rational> first_moments() const;
  BiasProfile profile() const;
};

// Between 2 and max_terms distinct vertices from pool with random positive weights of small denominator.
VertexMixture random_mixture(int k, const std::vector<std::uint64_t>& pool, std::mt19937_64& rng, int max_terms = 4);

}  // namespace gapforge
