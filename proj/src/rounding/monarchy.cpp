#include "gapforge/rounding/monarchy.hpp"

#include <algorithm>
#include <random>

#include "gapforge/error.hpp"
#include "gapforge/exactnum/hull.hpp"
#include "gapforge/predicate/fourier.hpp"

namespace gapforge {
namespace {

int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Rational binom(int n, int r) {
  Rational v = 1;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

Rational min_abs(const Rational& a, const Rational& b, const Rational& c) {
  return std::min({Rational(abs(a)), Rational(abs(b)), Rational(abs(c))});
}

}  // namespace

Rational min_sign_bias(const Rational& a, const Rational& b, const Rational& c) {
  return sgn(a) * sgn(b) * sgn(c) * min_abs(a, b, c);
}

MonarchyCoefficients monarchy_coefficients(int k) {
  if (k < 5 || k > kMaxTableArity) throw InvalidArgument("monarchy needs 5 <= k <= " + std::to_string(kMaxTableArity));
  const FourierTable t = fourier_transform(Predicate::monarchy(k));
  MonarchyCoefficients c;
  c.k = k;
  c.president = t.coefficient(0b1);
  c.citizen = t.coefficient(0b10);
  c.three_citizens = t.coefficient(0b1110);
  c.president_pair = t.coefficient(0b111);
  c.signs_ok = c.three_citizens > 0 && c.president_pair < 0;
  if (c.signs_ok)
    c.scale = (c.president - (k - 2) * c.citizen) /
              (c.three_citizens * binom(k - 1, 3) - c.president_pair * binom(k - 1, 2));
  return c;
}

MonarchyReport monarchy_advantage(const std::vector<Rational>& b, const MonarchyCoefficients& coeffs) {
  const int k = coeffs.k;
  if (static_cast<int>(b.size()) != k) throw DimensionMismatch("first-moment vector has the wrong length");
  if (!coeffs.signs_ok)
    throw InvalidArgument("sign precondition fails at k=" + std::to_string(k) + ": f_3C=" +
                          to_string(coeffs.three_citizens) + ", f_P+2C=" + to_string(coeffs.president_pair));
  MonarchyReport r;
  r.k = k;
  r.alpha = b[0];
  for (int i = 1; i < k; ++i) r.beta += b[static_cast<std::size_t>(i)];
  for (int i = 1; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const auto& bi = b[static_cast<std::size_t>(i)];
      const auto& bj = b[static_cast<std::size_t>(j)];
      r.president_sum += min_sign_bias(b[0], bi, bj);
      for (int l = j + 1; l < k; ++l) {
        const auto& bl = b[static_cast<std::size_t>(l)];
        r.triple_sum += min_sign_bias(bi, bj, bl);
      }
    }
  r.advantage = coeffs.president * r.alpha + coeffs.citizen * r.beta +
                coeffs.scale * (coeffs.three_citizens * r.triple_sum + coeffs.president_pair * r.president_sum);
  r.floor = coeffs.citizen;
  r.above_floor = r.advantage >= r.floor;
  return r;
}

MonarchyReport monarchy_advantage(const VertexMixture& mixture, const MonarchyCoefficients& coeffs) {
  mixture.validate(Predicate::monarchy(coeffs.k));
  return monarchy_advantage(mixture.first_moments(), coeffs);
}

MonarchyReport monarchy_advantage_checked(const std::vector<Rational>& b, const MonarchyCoefficients& coeffs) {
  const int k = coeffs.k;
  if (static_cast<int>(b.size()) != k) throw DimensionMismatch("first-moment vector has the wrong length");
  const Predicate pred = Predicate::monarchy(k);
  std::vector<std::vector<Rational>> points;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    if (!pred.satisfied(a)) continue;
    std::vector<Rational> p;
    for (int i = 0; i < k; ++i) p.emplace_back(((a >> i) & 1U) ? 1 : -1);
    points.push_back(std::move(p));
  }
  if (!hull_member(b, points).member) throw InvalidArgument("first moments lie outside the satisfying hull");
  return monarchy_advantage(b, coeffs);
}

MonarchySweep monarchy_sweep(int k, std::uint64_t mixtures, std::uint64_t seed) {
  MonarchySweep sweep;
  sweep.k = k;
  sweep.seed = seed;
  sweep.coeffs = monarchy_coefficients(k);
  if (!sweep.coeffs.signs_ok) return sweep;
  const Predicate pred = Predicate::monarchy(k);
  bool have = false;
  auto record = [&](const VertexMixture& mix, std::uint64_t& failures) {
    const MonarchyReport r = monarchy_advantage(mix, sweep.coeffs);
    const Rational margin = r.advantage - r.floor;
    if (!r.above_floor) ++failures;
    if (!have || margin < sweep.worst_margin) {
      sweep.worst_margin = margin;
      sweep.worst = mix;
      have = true;
    }
  };
  std::vector<std::uint64_t> pool;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    if (!pred.satisfied(a)) continue;
    pool.push_back(a);
    record(VertexMixture::vertex(k, a), sweep.vertex_failures);
    ++sweep.vertices_checked;
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t m = 0; m < mixtures; ++m) {
    record(random_mixture(k, pool, rng), sweep.mixture_failures);
    ++sweep.mixtures_checked;
  }
  return sweep;
}

}  // namespace gapforge
