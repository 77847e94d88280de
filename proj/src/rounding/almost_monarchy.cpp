#include "gapforge/rounding/almost_monarchy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "gapforge/error.hpp"
#include "gapforge/parallel.hpp"
#include "gapforge/predicate/fourier.hpp"
#include "gapforge/rounding/hypergraph.hpp"

namespace gapforge {
namespace {

constexpr std::array<int, 3> kDegrees{3, 5, 7};
// Splits of a d-set into one singleton and (d-1)/2 pairs.
constexpr std::array<int, 3> kSplits{3, 15, 105};

Rational binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  Rational v = 1;
  for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
  return v;
}

// e_d of `plus` ones and `minus` minus-ones.
Rational elementary(int plus, int minus, int d) {
  Rational total;
  for (int t = 0; t <= d; ++t) {
    Rational term = binom(plus, t) * binom(minus, d - t);
    total += (d - t) % 2 == 0 ? term : Rational(-term);
  }
  return total;
}

void pairings(std::vector<int>& rest, std::vector<std::pair<int, int>>& acc,
              const std::function<void(const std::vector<std::pair<int, int>>&)>& visit) {
  if (rest.empty()) {
    visit(acc);
    return;
  }
  const int first = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i) {
    const int partner = rest[i];
    std::vector<int> next;
    for (std::size_t j = 1; j < rest.size(); ++j)
      if (j != i) next.push_back(rest[j]);
    acc.emplace_back(first, partner);
    pairings(next, acc, visit);
    acc.pop_back();
  }
}

std::string bits_text(int k, std::uint64_t bits) {
  std::string s;
  for (int i = 0; i < k; ++i) s += ((bits >> i) & 1U) ? '+' : '-';
  return s;
}

}  // namespace

AlmostMonarchyCoefficients almost_monarchy_coefficients(int k, FourierSource source) {
  if (k < kMinAlmostMonarchyArity) throw InvalidArgument("almost monarchy scheme needs k >= 8");
  AlmostMonarchyCoefficients c;
  c.k = k;
  auto fetch = [&](bool president, int citizens) -> Rational {
    const CoefficientClass cls{president, citizens};
    if (source == FourierSource::ClosedForm) return fourier_closed_form(k, cls);
    if (k > 20) throw CapExceeded("transform-based coefficients need k <= 20");
    static thread_local std::optional<FourierTable> cache;
    if (!cache || cache->arity() != k) cache = fourier_transform(Predicate::almost_monarchy(k));
    return cache->coefficient(cls.subset());
  };
  c.president = fetch(true, 0);
  c.citizen = fetch(false, 1);
  for (std::size_t d = 0; d < 3; ++d) {
    c.citizens[d] = fetch(false, kDegrees[d]);
    c.with_president[d] = fetch(true, kDegrees[d] - 1);
  }
  c.pair_target = make_rational(k * k - 9 * k + 18, 2);
  c.scale = power_of_two(k - 2) * (c.president - (k - 4) * c.citizen) / ((k - 2) * (k - 3));
  const Rational& e = c.pair_target;
  c.weights = {3 * c.scale / e, -6 * c.scale / (e * e), 6 * c.scale / (e * e * e)};
  return c;
}

Rational split_monomial_sum(const BiasProfile& bias, const std::vector<int>& indices) {
  const std::size_t size = indices.size();
  if (size % 2 == 0) throw InvalidArgument("splits need an odd number of indices");
  Rational total;
  for (std::size_t s = 0; s < size; ++s) {
    std::vector<int> rest;
    for (std::size_t t = 0; t < size; ++t)
      if (t != s) rest.push_back(indices[t]);
    std::vector<std::pair<int, int>> acc;
    pairings(rest, acc, [&](const std::vector<std::pair<int, int>>& ps) {
      Rational term = bias.single(indices[s]);
      for (const auto& [u, v] : ps) term *= bias.pair(u, v);
      total += term;
    });
  }
  return total;
}

bool telescoping_identity(const Rational& delta) {
  const Rational s = 1 + delta;
  return 3 * s - 3 * s * s + s * s * s == 1 + delta * delta * delta;
}

AlmostMonarchyReport almost_monarchy_functional(const BiasProfile& bias, const AlmostMonarchyCoefficients& coeffs) {
  const int k = coeffs.k;
  if (bias.n() != k) throw DimensionMismatch("bias profile arity differs from k");
  AlmostMonarchyReport r;
  r.k = k;
  r.alpha = bias.single(0);
  for (int i = 1; i < k; ++i) r.beta += bias.single(i);
  for (int i = 1; i < k; ++i)
    for (int j = i + 1; j < k; ++j) r.pair_sum += bias.pair(i, j);
  r.delta = r.pair_sum / coeffs.pair_target - 1;
  r.slack = (k - 4) * r.alpha + r.beta - Rational(1, 3) - (k - 6) * abs(r.delta) / 3;
  r.telescoping_ok = telescoping_identity(r.delta);

  PrimitiveSums sums(bias);
  const auto& ids = inclusion_exclusion_identities();
  for (std::size_t i = 0; i < 9; ++i) r.pattern_sums[i] = sums.evaluate(expand_pattern(ids[i].lhs));
  r.advantage = coeffs.president * r.alpha + coeffs.citizen * r.beta;
  for (std::size_t d = 0; d < 3; ++d) {
    const Rational inner = coeffs.citizens[d] * r.pattern_sums[3 * d] +
                           coeffs.with_president[d] * (r.pattern_sums[3 * d + 1] + r.pattern_sums[3 * d + 2]);
    r.degree_terms[d] = coeffs.weights[d] * inner;
    r.advantage += r.degree_terms[d];
  }
  return r;
}

Rational almost_monarchy_direct(const BiasProfile& bias, const AlmostMonarchyCoefficients& coeffs) {
  const int k = coeffs.k;
  if (bias.n() != k) throw DimensionMismatch("bias profile arity differs from k");
  if (k > 12) throw CapExceeded("direct tuple enumeration supports k <= 12");
  const FourierTable table = fourier_transform(Predicate::almost_monarchy(k));
  Rational total;
  for (int i = 0; i < k; ++i) total += table.coefficient(std::uint64_t{1} << i) * bias.single(i);
  for (std::size_t d = 0; d < 3; ++d) {
    const int size = kDegrees[d];
    Rational degree_sum;
    std::vector<int> subset(static_cast<std::size_t>(size));
    auto visit_subset = [&](auto&& self, int start, int depth) -> void {
      if (depth == size) {
        std::uint64_t bits = 0;
        for (int v : subset) bits |= std::uint64_t{1} << v;
        const Rational weight = table.coefficient(bits);
        if (weight == 0) return;
        const Rational split_sum = split_monomial_sum(bias, subset);
        degree_sum += weight * split_sum;
        return;
      }
      for (int v = start; v < k; ++v) {
        subset[static_cast<std::size_t>(depth)] = v;
        self(self, v + 1, depth + 1);
      }
    };
    visit_subset(visit_subset, 0, 0);
    total += coeffs.weights[d] * degree_sum;
  }
  return total;
}

AlmostMonarchyReport almost_monarchy_advantage(const VertexMixture& mixture, const AlmostMonarchyCoefficients& coeffs) {
  if (mixture.k != coeffs.k) throw DimensionMismatch("mixture arity differs from k");
  mixture.validate(Predicate::almost_monarchy(coeffs.k));
  return almost_monarchy_functional(mixture.profile(), coeffs);
}

Rational almost_monarchy_vertex_value(const AlmostMonarchyCoefficients& c, int president, int dissenters) {
  const int k = c.k;
  const int minus = dissenters;
  const int plus = k - 1 - minus;
  if (minus < 0 || plus < 0 || (president != 1 && president != -1)) throw InvalidArgument("bad vertex class");
  Rational a = c.president * president + c.citizen * (plus - minus);
  for (std::size_t d = 0; d < 3; ++d) {
    const int deg = kDegrees[d];
    a += c.weights[d] * kSplits[d] *
         (c.citizens[d] * elementary(plus, minus, deg) + c.with_president[d] * president * elementary(plus, minus, deg - 1));
  }
  return a;
}

bool delta_floor_check(const std::vector<int>& x) {
  const int k = static_cast<int>(x.size());
  if (k < kMinAlmostMonarchyArity) throw InvalidArgument("delta floor check needs k >= 8");
  long citizens = 0;
  for (int i = 0; i < k; ++i) {
    const int v = x[static_cast<std::size_t>(i)];
    if (v != 1 && v != -1) throw InvalidArgument("assignment entries must be +1 or -1");
    if (i > 0) citizens += v;
  }
  const long margin = (k - 4) * x[0] + citizens;
  if (margin <= 0) throw InvalidArgument("assignment does not satisfy almost monarchy");
  const Rational pair_sum = make_rational(citizens * citizens - (k - 1), 2);
  const Rational e = make_rational(k * k - 9 * k + 18, 2);
  const Rational delta = pair_sum / e - 1;
  return Rational(margin) >= Rational(1, 3) + (k - 6) * abs(delta) / 3;
}

ThresholdReport almost_monarchy_threshold(const ThresholdSettings& settings) {
  if (settings.k_min < 15 || settings.k_max > 63 || settings.k_min > settings.k_max)
    throw InvalidArgument("threshold search needs 15 <= k_min <= k_max <= 63");
  ThresholdReport report;
  report.settings = settings;
  for (int k = settings.k_min; k <= settings.k_max; ++k) {
    const AlmostMonarchyCoefficients coeffs = almost_monarchy_coefficients(k);
    std::vector<std::pair<int, int>> strata;
    for (int q = 0; q <= k - 1; ++q)
      for (int p : {1, -1})
        if ((k - 4) * p + (k - 1 - 2 * q) > 0) strata.emplace_back(p, q);
    std::vector<Rational> values;
    for (const auto& [p, q] : strata) values.push_back(almost_monarchy_vertex_value(coeffs, p, q));

    ThresholdLevel level;
    level.k = k;
    std::mt19937_64 rng(derive_seed(settings.seed, static_cast<std::uint64_t>(k)));
    std::vector<int> citizens(static_cast<std::size_t>(k - 1));
    std::iota(citizens.begin(), citizens.end(), 1);
    std::vector<std::uint64_t> pool;
    bool have_worst = false;
    for (std::uint64_t s = 0; s < settings.vertex_samples; ++s) {
      const std::size_t stratum = s % strata.size();
      const auto [president, dissenters] = strata[stratum];
      std::shuffle(citizens.begin(), citizens.end(), rng);
      std::vector<int> x(static_cast<std::size_t>(k), 1);
      x[0] = president;
      for (int t = 0; t < dissenters; ++t) x[static_cast<std::size_t>(citizens[static_cast<std::size_t>(t)])] = -1;
      std::uint64_t bits = 0;
      for (int i = 0; i < k; ++i)
        if (x[static_cast<std::size_t>(i)] == 1) bits |= std::uint64_t{1} << i;
      pool.push_back(bits);
      ++level.vertices_checked;
      const Rational& a = values[stratum];
      if (a <= 0) ++level.vertex_failures;
      if (!delta_floor_check(x)) ++level.floor_failures;
      if (!have_worst || a < level.worst_advantage) {
        have_worst = true;
        level.worst_advantage = a;
        level.worst_vertex = bits;
        level.worst_dissenters = dissenters;
      }
    }
    if (level.vertex_failures == 0 && level.floor_failures == 0) {
      for (std::uint64_t m = 0; m < settings.mixtures; ++m) {
        const VertexMixture mix = random_mixture(k, pool, rng);
        const Rational a = almost_monarchy_advantage(mix, coeffs).advantage;
        ++level.mixtures_checked;
        if (a <= 0) ++level.mixture_failures;
      }
    }
    level.passed = level.vertex_failures == 0 && level.floor_failures == 0 && level.mixture_failures == 0 &&
                   level.mixtures_checked == settings.mixtures;
    report.levels.push_back(level);
  }
  for (auto it = report.levels.rbegin(); it != report.levels.rend(); ++it) {
    if (!it->passed) {
      std::ostringstream os;
      os << "k=" << it->k << " vertex " << bits_text(it->k, it->worst_vertex) << " (president "
         << (((it->worst_vertex) & 1U) ? "+1" : "-1") << ", " << it->worst_dissenters
         << " citizens at -1) advantage " << to_string(it->worst_advantage);
      if (it->vertex_failures == 0 && it->floor_failures == 0) os << "; failing mixtures " << it->mixture_failures;
      report.offending = os.str();
      break;
    }
    report.threshold = it->k;
  }
  return report;
}

}  // namespace gapforge
