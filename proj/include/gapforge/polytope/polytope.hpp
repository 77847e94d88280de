#pragma once

#include <cstdint>
#include <vector>

#include "gapforge/exactnum/hull.hpp"
#include "gapforge/exactnum/symmatrix.hpp"
#include "gapforge/predicate/constraint.hpp"

namespace gapforge {

constexpr int kMaxPolytopeArity = 20;

std::size_t polytope_dimension(int k);
// Slot of pair (i, j), i < j (0-based), inside the pair block; pairs are in lexicographic order.
std::size_t pair_slot(int k, int i, int j);

// k first-moment coordinates followed by C(k, 2) pair coordinates.
struct PolytopePoint {
  int k = 0;
  std::vector<Rational> coords;

  const Rational& single(int i) const { return coords[static_cast<std::size_t>(i)]; }
  const Rational& pair(int i, int j) const;
  bool operator==(const PolytopePoint& other) const = default;
};

PolytopePoint embed(const std::vector<int>& x);
PolytopePoint embed_bits(int k, std::uint64_t bits);

// First moments b_i and pair moments b_ij of an n-variable pseudo-distribution.
class BiasProfile {
 public:
  explicit BiasProfile(int n = 0);

  int n() const { return n_; }
  const Rational& single(int i) const { return b_.at(static_cast<std::size_t>(i)); }
  const Rational& pair(int i, int j) const;
  void set_single(int i, Rational v);
  void set_pair(int i, int j, Rational v);

  // (n+1)x(n+1): 1 in the corner, b on the border, b_ij inside, unit diagonal.
  SymMatrix bordered_matrix() const;

  bool operator==(const BiasProfile& other) const = default;

 private:
  int n_;
  std::vector<Rational> b_;
  SymMatrix pairs_;
};

// Satisfying local assignments u of P(z o u) and their embeddings.
struct VertexSet {
  std::vector<std::uint64_t> assignments;
  std::vector<PolytopePoint> points;
  bool empty() const { return points.empty(); }
  std::vector<std::vector<Rational>> coordinates() const;
};

VertexSet ktw_vertices(const Predicate& pred, const std::vector<int>& signs = {});
VertexSet all_vertices(int k);

// Restriction of a profile to increasing indices.
PolytopePoint bias_projection(const BiasProfile& bias, const std::vector<int>& indices);
// Restriction along an arbitrary injective map (the order of phi is kept).
PolytopePoint bias_point(const BiasProfile& bias, const std::vector<int>& phi);

struct SdpCheck {
  bool feasible = false;
  // Local assignments with positive probability.
  std::vector<std::pair<std::uint64_t, Rational>> distribution;
  HullResult certificate;
};

SdpCheck perfect_sdp_check(const BiasProfile& bias, const Predicate& pred, const Constraint& constraint);

}  // namespace gapforge
