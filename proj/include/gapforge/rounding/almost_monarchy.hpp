#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/exactnum/rational.hpp"
#include "gapforge/rounding/mixture.hpp"

namespace gapforge {

constexpr int kMinAlmostMonarchyArity = 8;

// Fourier data and scheme constants for sign((k-4) x1 + x2 + ... + xk).
struct AlmostMonarchyCoefficients {
  int k = 0;
  Rational president;                 // f_P
  Rational citizen;                   // f_C
  std::array<Rational, 3> citizens;   // f_3C, f_5C, f_7C
  std::array<Rational, 3> with_president;  // f_P+2C, f_P+4C, f_P+6C
  Rational pair_target;               // E = (k^2 - 9k + 18) / 2
  Rational scale;                     // C
  std::array<Rational, 3> weights;    // 3C/E, -6C/E^2, 6C/E^3
};

enum class FourierSource { ClosedForm, Transform };

AlmostMonarchyCoefficients almost_monarchy_coefficients(int k, FourierSource source = FourierSource::ClosedForm);

struct AlmostMonarchyReport {
  int k = 0;
  Rational alpha;
  Rational beta;
  Rational pair_sum;   // citizen pairs
  Rational delta;      // pair_sum / E - 1
  Rational slack;      // (k-4) alpha + beta - 1/3 - (k-6)|delta|/3
  // Pattern sums: citizen-only, president singleton, president in a pair; for degrees 3, 5, 7.
  std::array<Rational, 9> pattern_sums;
  std::array<Rational, 3> degree_terms;
  Rational advantage;
  bool telescoping_ok = false;
};

// Exact functional through the inclusion/exclusion expansion; any bias profile with k variables.
AlmostMonarchyReport almost_monarchy_functional(const BiasProfile& bias, const AlmostMonarchyCoefficients& coeffs);
// Same functional by enumerating index tuples and their singleton-plus-pairs splits (k <= 12).
Rational almost_monarchy_direct(const BiasProfile& bias, const AlmostMonarchyCoefficients& coeffs);
// Validates the mixture first.
AlmostMonarchyReport almost_monarchy_advantage(const VertexMixture& mixture, const AlmostMonarchyCoefficients& coeffs);
// Vertex with the given president sign and number of citizens at -1, via elementary symmetric sums.
Rational almost_monarchy_vertex_value(const AlmostMonarchyCoefficients& coeffs, int president, int dissenters);

// (k-4) x1 + sum x_i >= 1/3 + (k-6)|delta|/3 at a satisfying vertex; throws InvalidArgument otherwise.
bool delta_floor_check(const std::vector<int>& x);

bool telescoping_identity(const Rational& delta);

// Sum over splits of an odd index tuple into one singleton and pairs of b_i prod b_jl.
Rational split_monomial_sum(const BiasProfile& bias, const std::vector<int>& indices);

struct ThresholdSettings {
  int k_min = 15;
  int k_max = 60;
  std::uint64_t vertex_samples = 10000;
  std::uint64_t mixtures = 1000;
  std::uint64_t seed = 1;
};

struct ThresholdLevel {
  int k = 0;
  std::uint64_t vertices_checked = 0;
  std::uint64_t vertex_failures = 0;
  std::uint64_t floor_failures = 0;
  std::uint64_t mixtures_checked = 0;
  std::uint64_t mixture_failures = 0;
  Rational worst_advantage;
  std::uint64_t worst_vertex = 0;
  int worst_dissenters = 0;
  bool passed = false;
};

struct ThresholdReport {
  ThresholdSettings settings;
  std::vector<ThresholdLevel> levels;   // ascending k
  std::optional<int> threshold;         // smallest k* with every level in [k*, k_max] passing
  std::string offending;                // worst profile at the largest failing k
};

// Vertices are sampled stratified by (president sign, dissenter count); mixtures are drawn only at
// levels whose vertices all pass.
ThresholdReport almost_monarchy_threshold(const ThresholdSettings& settings);

}  // namespace gapforge
