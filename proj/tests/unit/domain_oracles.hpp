#pragma once

// Brute-force oracles over library types, shared by the unit suites and the acceptance checks.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gapforge/construct/gadget.hpp"
#include "gapforge/gapverify/gapverify.hpp"
#include "gapforge/rounding/hypergraph.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace gapforge;

// f_a(x) summed over constraints, by direct evaluation.
inline long total_value(const GapInstance& inst, std::uint64_t x) {
  long sum = 0;
  for (const auto& c : inst.constraints) {
    std::uint64_t input = 0;
    for (std::size_t i = 0; i < c.phi.size(); ++i) {
      const int v = spin(x, c.phi[i]) * c.signs[i];
      if (v == 1) input |= std::uint64_t{1} << i;
    }
    sum += inst.predicates[static_cast<std::size_t>(c.predicate)].value(input);
  }
  return sum;
}

// E_x[sum_a f_a(x) x_T] by enumeration.
inline Rational sum_coefficient(const GapInstance& inst, const GlobalSubset& t) {
  long acc = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << inst.n); ++x) {
    long v = total_value(inst, x);
    for (int i : t) v *= spin(x, i);
    acc += v;
  }
  Rational r(acc, 1L << inst.n);
  r.canonicalize();
  return r;
}

// Random instance with uniform distributions over each constraint's satisfying set.
inline GapInstance random_instance(std::mt19937_64& rng, int n, int m) {
  GapInstance inst;
  inst.n = n;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int p = 0; p < 2; ++p) {
    const int k = 2 + p;
    std::vector<std::uint64_t> plus;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a)
      if (coin(rng) || a == 0) plus.push_back(a);
    inst.predicates.push_back(Predicate::from_plus_set(k, plus));
  }
  inst.bias = BiasProfile(n);
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  for (int a = 0; a < m; ++a) {
    Constraint c;
    c.predicate = coin(rng);
    std::shuffle(vars.begin(), vars.end(), rng);
    const int k = inst.predicates[static_cast<std::size_t>(c.predicate)].arity();
    c.phi.assign(vars.begin(), vars.begin() + k);
    for (int i = 0; i < k; ++i) c.signs.push_back(coin(rng) ? 1 : -1);
    Distribution d;
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u)
      if (inst.predicates[static_cast<std::size_t>(c.predicate)].satisfied(c.predicate_input(u))) d.emplace_back(u, 1);
    for (auto& e : d) e.second /= static_cast<long>(d.size());
    inst.constraints.push_back(c);
    inst.dists.push_back(d);
  }
  return inst;
}

// Vanishing test built from the instance itself using z_{a s_i} b_{phi(s_pi(i))} coordinates.
inline bool oracle_vanishes(const GapInstance& inst, int t) {
  std::map<std::vector<Rational>, Rational> atoms;
  for (const auto& c : inst.constraints) {
    const auto& pred = inst.predicates[static_cast<std::size_t>(c.predicate)];
    const int k = pred.arity();
    if (t > k) continue;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      if (std::popcount(s) != t) continue;
      long coef = 0;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
        int v = pred.value(x);
        for (int i = 0; i < k; ++i)
          if ((s >> i) & 1U) v *= spin(x, i);
        coef += v;
      }
      if (coef == 0) continue;
      Rational weight(coef, 1L << k);
      for (int r = 0; r < t; ++r) weight = weight * (r + 1) / (k - r);
      std::vector<int> sv;
      for (int i = 0; i < k; ++i)
        if ((s >> i) & 1U) sv.push_back(i);
      std::vector<int> pi(static_cast<std::size_t>(t));
      std::iota(pi.begin(), pi.end(), 0);
      do {
        for (std::uint64_t zb = 0; zb < (std::uint64_t{1} << t); ++zb) {
          std::vector<Rational> q;
          int sign = 1;
          for (int i = 0; i < t; ++i) {
            const int zi = spin(zb, i);
            sign *= zi;
            q.push_back(zi * c.signs[sv[i]] * inst.bias.single(c.phi[sv[pi[i]]]));
          }
          for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j)
              q.push_back(spin(zb, i) * spin(zb, j) * c.signs[sv[i]] * c.signs[sv[j]] *
                          inst.bias.pair(c.phi[sv[pi[i]]], c.phi[sv[pi[j]]]));
          atoms[q] += sign * weight;
        }
      } while (std::next_permutation(pi.begin(), pi.end()));
    }
  }
  return std::all_of(atoms.begin(), atoms.end(), [](const auto& e) { return e.second == 0; });
}

// Brute force over all permutation triples: X_g[i] = X_{g-1}[perm_g(i)], conditioned on the
// source of row 1 of X_3 being drawn from D. Integer sums are kept per source row.
struct ChainOracle {
  std::vector<std::string> names;
  std::vector<Rational> mean;
  std::vector<std::vector<Rational>> pair;
};

inline ChainOracle chain_oracle(const std::vector<IntVector>& V, long bound, const std::vector<Rational>& dist) {
  const int m = static_cast<int>(V.size()), n = static_cast<int>(V[0].size());
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  ChainOracle out;
  std::vector<std::vector<long>> sum1(m);
  std::vector<std::vector<std::vector<long>>> sum2(m);
  std::vector<long> count(m, 0);
  std::vector<long> values;
  for (const auto& p1 : perms)
    for (const auto& p2 : perms)
      for (const auto& p3 : perms) {
        const std::vector<std::vector<int>> pg = {p1, p2, p3};
        std::vector<std::vector<int>> src(4, std::vector<int>(m));
        std::iota(src[0].begin(), src[0].end(), 0);
        for (int g = 1; g <= 3; ++g)
          for (int i = 0; i < m; ++i) src[g][i] = src[g - 1][pg[g - 1][i]];
        auto X = [&](int g, int i, int k) { return V[src[g][i]][k]; };
        const bool naming = out.names.empty();
        values.clear();
        auto emit = [&](const ChainVar& var, long value) {
          if (naming) out.names.push_back(var.name());
          values.push_back(value);
        };
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < n; ++k) emit({ChainVar::Kind::Vector, 0, i, 0, k}, X(0, i, k));
        for (int g = 1; g <= 3; ++g) {
          for (int i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k) emit({ChainVar::Kind::Vector, g, i, 0, k}, X(g, i, k));
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
              const long ind = pg[g - 1][i] == j ? 1 : 0;
              emit({ChainVar::Kind::Indicator, g, i, j, 0}, ind);
              for (int k = 0; k < n; ++k) {
                // Unique solution of (d+ - d-)/2 = v - w and d+ + d- = 4B p.
                const long diff = X(g - 1, j, k) - X(g, i, k);
                emit({ChainVar::Kind::SlackPlus, g, i, j, k}, 2 * bound * ind + diff);
                emit({ChainVar::Kind::SlackMinus, g, i, j, k}, 2 * bound * ind - diff);
              }
            }
        }
        const int r = src[3][0];
        const std::size_t nv = values.size();
        if (sum1[r].empty()) {
          sum1[r].assign(nv, 0);
          sum2[r].assign(nv, std::vector<long>(nv, 0));
        }
        ++count[r];
        for (std::size_t a = 0; a < nv; ++a) {
          sum1[r][a] += values[a];
          for (std::size_t b = 0; b < nv; ++b) sum2[r][a][b] += values[a] * values[b];
        }
      }
  const std::size_t nv = out.names.size();
  out.mean.assign(nv, Rational(0));
  out.pair.assign(nv, std::vector<Rational>(nv));
  for (int r = 0; r < m; ++r) {
    if (count[r] == 0 || dist[r] == 0) continue;
    const Rational w = dist[r] / count[r];
    for (std::size_t a = 0; a < nv; ++a) {
      out.mean[a] += w * sum1[r][a];
      for (std::size_t b = 0; b < nv; ++b) out.pair[a][b] += w * sum2[r][a][b];
    }
  }
  return out;
}

// E[y_1], E[y_1 y_2] for a single variable by enumerating every digit placement with x - a digits at +1.
inline std::pair<Rational, Rational> digit_oracle(long a, long b, const std::vector<std::pair<long, Rational>>& dist) {
  const int len = static_cast<int>(b - a);
  Rational m1, m2;
  for (const auto& [x, p] : dist) {
    std::vector<std::uint64_t> placements;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << len); ++s)
      if (std::popcount(s) == x - a) placements.push_back(s);
    for (auto s : placements) {
      const Rational w = p / static_cast<long>(placements.size());
      m1 += w * spin(s, 0);
      if (len >= 2) m2 += w * (spin(s, 0) * spin(s, 1));
    }
  }
  return {m1, m2};
}

inline BiasProfile vertex_profile(const std::vector<int>& x) {
  BiasProfile p(static_cast<int>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) p.set_single(static_cast<int>(i), x[i]);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) p.set_pair(static_cast<int>(i), static_cast<int>(j), x[i] * x[j]);
  return p;
}

// Fourier coefficient of sign(w x1 + x2 + ... + xk) by direct summation.
inline Rational lead_coefficient(int k, int weight, std::uint64_t subset) {
  long total = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    long s = weight * spin(a, 0);
    for (int i = 1; i < k; ++i) s += spin(a, i);
    int v = s > 0 ? 1 : -1;
    for (int i = 0; i < k; ++i)
      if ((subset >> i) & 1U) v *= spin(a, i);
    total += v;
  }
  return make_rational(total, 1L << k);
}

// Sum over distinct edge multisets hit by injective labelings; no automorphism count involved.
inline Rational distinct_image_sum(const HypergraphPattern& p, const BiasProfile& b) {
  const int n = p.free_vertices();
  const int k = b.n();
  std::set<std::vector<std::pair<int, int>>> seen;
  Rational total;
  std::vector<int> label(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  auto var = [&](int v) { return v == kAlphaVertex ? 0 : label[static_cast<std::size_t>(v)]; };
  auto rec = [&](auto&& self, int d) -> void {
    if (d == n) {
      std::vector<std::pair<int, int>> image;
      for (const auto& e : p.edges()) {
        int u = var(e.first), w = e.unary() ? -1 : var(e.second);
        if (w >= 0 && w < u) std::swap(u, w);
        image.emplace_back(u, w);
      }
      std::sort(image.begin(), image.end());
      if (!seen.insert(image).second) return;
      Rational term = 1;
      for (const auto& [u, w] : image) term *= w < 0 ? b.single(u) : b.pair(u, w);
      total += term;
      return;
    }
    for (int x = 1; x < k; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = true;
      label[static_cast<std::size_t>(d)] = x;
      self(self, d + 1);
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace oracle
