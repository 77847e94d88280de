#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gapforge/predicate/fourier.hpp"

namespace gapforge {

// P(z_1 x_{phi(1)}, ..., z_k x_{phi(k)}); phi is injective into global variables (0-based).
struct Constraint {
  int predicate = 0;
  std::vector<int> phi;
  std::vector<int> signs;

  std::size_t arity() const { return phi.size(); }
  // Local assignment bits give the values of x_{phi(i)}; returns the predicate input.
  std::uint64_t predicate_input(std::uint64_t local_bits) const;
  void validate(int n, int predicate_arity) const;
  bool operator==(const Constraint&) const = default;
};

using GlobalSubset = std::vector<int>;

// Coefficients of the constraint as a function of the global variables:
// f_{phi(S)} = f_S * prod_{i in S} z_i. Zero coefficients are omitted.
std::map<GlobalSubset, Rational> global_fourier(const FourierTable& table, const Constraint& c);

}  // namespace gapforge
