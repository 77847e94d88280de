#pragma once

#include <map>
#include <string>
#include <vector>

#include "gapforge/exactnum/rational.hpp"
#include "gapforge/polytope/polytope.hpp"

namespace gapforge {

constexpr int kAlphaVertex = -1;
constexpr int kNoVertex = -2;
constexpr int kMaxPatternVertices = 7;

// Edge of arity 1 (second == kNoVertex) or 2 between free vertices 0..n-1 or the president kAlphaVertex.
struct PatternEdge {
  int first = kNoVertex;
  int second = kNoVertex;
  bool unary() const { return second == kNoVertex; }
  auto operator<=>(const PatternEdge&) const = default;
};

// Labeled hypergraph: the president vertex maps to variable 1, free vertices injectively to citizens 2..k.
class HypergraphPattern {
 public:
  HypergraphPattern() = default;
  HypergraphPattern(int free_vertices, std::vector<PatternEdge> edges);

  // Components in braces, e.g. "{i1},{(a,i2)},{(i3,i4)}" or "{i1,(i1,i2)}"; "a" is the president.
  static HypergraphPattern parse(const std::string& text);
  std::string to_string() const;

  int free_vertices() const { return free_; }
  const std::vector<PatternEdge>& edges() const { return edges_; }
  bool has_alpha() const;
  std::vector<HypergraphPattern> components() const;
  bool connected() const { return components().size() <= 1; }
  // Relabeling of free vertices with the smallest sorted edge list.
  HypergraphPattern canonical() const;
  // Free-vertex permutations fixing the edge multiset.
  long automorphisms() const;

  bool operator==(const HypergraphPattern& other) const = default;
  bool operator<(const HypergraphPattern& other) const;

 private:
  int free_ = 0;
  std::vector<PatternEdge> edges_;
};

// Sum over distinct edge sets realized by injective labelings. Enumerates labelings directly.
Rational s_direct(const HypergraphPattern& pattern, const BiasProfile& bias);

// coefficient * prod S(factor); factors are canonical connected patterns.
struct ProductTerm {
  Rational coefficient;
  std::vector<HypergraphPattern> factors;
  std::string to_string() const;
};

// Inclusion/exclusion over merges of vertices in different components.
std::vector<ProductTerm> expand_pattern(const HypergraphPattern& pattern);

// Evaluates connected patterns in polynomial time and memoizes them for one bias profile.
class PrimitiveSums {
 public:
  explicit PrimitiveSums(const BiasProfile& bias);
  const Rational& value(const HypergraphPattern& connected);
  Rational evaluate(const std::vector<ProductTerm>& terms);

 private:
  const BiasProfile& bias_;
  std::map<HypergraphPattern, Rational> cache_;
};

// Expansion evaluated on primitive sums.
Rational s_aggregate(const HypergraphPattern& pattern, const BiasProfile& bias);

// One of the nine inclusion/exclusion identities: multiplier * S(lhs) = sum of printed terms.
struct IdentitySpec {
  int index = 0;
  int multiplier = 1;
  HypergraphPattern lhs;
  std::vector<ProductTerm> printed;
};

const std::vector<IdentitySpec>& inclusion_exclusion_identities();

struct IdentityOutcome {
  int index = 0;
  Rational direct;     // multiplier * S(lhs) by enumeration
  Rational aggregate;  // multiplier * S(lhs) through the expansion
  Rational printed;    // printed right-hand side
  bool aggregate_matches = false;
  bool printed_matches = false;
};

IdentityOutcome check_identity(const IdentitySpec& spec, const BiasProfile& bias);

// Merges like terms after canonicalizing factors; zero terms dropped.
std::vector<ProductTerm> normalize_terms(const std::vector<ProductTerm>& terms);

}  // namespace gapforge
