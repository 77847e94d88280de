#pragma once

#include <vector>

#include "gapforge/exactnum/symmatrix.hpp"

namespace gapforge {

struct PsdResult {
  bool psd = true;
  // Set only when psd is false: witness^T M witness == witness_value < 0.
  std::vector<Rational> witness;
  Rational witness_value;
};

// Exact test by symmetric pivoted LDL^T elimination.
PsdResult psd_check(const SymMatrix& m);

}  // namespace gapforge
