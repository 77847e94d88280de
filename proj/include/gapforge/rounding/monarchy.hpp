#pragma once

#include <cstdint>
#include <vector>

#include "gapforge/exactnum/rational.hpp"
#include "gapforge/rounding/mixture.hpp"

namespace gapforge {

// Fourier data of sign((k-2) x1 + x2 + ... + xk), taken from the transform.
struct MonarchyCoefficients {
  int k = 0;
  Rational president;        // f_P
  Rational citizen;          // f_C
  Rational three_citizens;   // f_3C
  Rational president_pair;   // f_P+2C
  bool signs_ok = false;     // f_3C > 0 and f_P+2C < 0
  Rational scale;            // C; only set when signs_ok
};

MonarchyCoefficients monarchy_coefficients(int k);

// Degree-3 bias rule: sign(a b c) min(|a|, |b|, |c|).
Rational min_sign_bias(const Rational& a, const Rational& b, const Rational& c);

// Leading-order advantage over random per unit epsilon.
struct MonarchyReport {
  int k = 0;
  Rational alpha;           // b_1
  Rational beta;            // sum of citizen biases
  Rational triple_sum;      // citizen triples: sign(b b b) min |b|
  Rational president_sum;   // president with citizen pairs
  Rational advantage;
  Rational floor;           // f_C
  bool above_floor = false;
};

// Functional only; throws InvalidArgument if the sign preconditions fail.
MonarchyReport monarchy_advantage(const std::vector<Rational>& first_moments, const MonarchyCoefficients& coeffs);
// Validates the mixture as a certificate first.
MonarchyReport monarchy_advantage(const VertexMixture& mixture, const MonarchyCoefficients& coeffs);
// Raw first moments; throws InvalidArgument when outside the hull of satisfying assignments.
MonarchyReport monarchy_advantage_checked(const std::vector<Rational>& first_moments, const MonarchyCoefficients& coeffs);

// Every satisfying vertex plus random mixtures of them, against the f_C floor.
struct MonarchySweep {
  int k = 0;
  MonarchyCoefficients coeffs;
  std::uint64_t vertices_checked = 0;
  std::uint64_t vertex_failures = 0;
  std::uint64_t mixtures_checked = 0;
  std::uint64_t mixture_failures = 0;
  Rational worst_margin;  // min of advantage - floor
  VertexMixture worst;
  std::uint64_t seed = 0;
  bool passed() const { return coeffs.signs_ok && vertex_failures == 0 && mixture_failures == 0; }
};

MonarchySweep monarchy_sweep(int k, std::uint64_t mixtures, std::uint64_t seed);

}  // namespace gapforge
