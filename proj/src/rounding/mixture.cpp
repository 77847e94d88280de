#include "gapforge/rounding/mixture.hpp"

#include <algorithm>
#include <set>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {
int spin(std::uint64_t bits, int i) { return ((bits >> i) & 1U) ? 1 : -1; }
}  // namespace

VertexMixture VertexMixture::vertex(int k, std::uint64_t bits) { return {k, {{bits, Rational(1)}}}; }

void VertexMixture::validate(const Predicate& pred) const {
  if (pred.arity() != k) throw DimensionMismatch("mixture arity differs from the predicate");
  if (vertices.empty()) throw InvalidArgument("mixture has no vertices");
  Rational total;
  for (const auto& [bits, w] : vertices) {
    if (w <= 0) throw InvalidArgument("mixture weights must be positive");
    if (k < 64 && (bits >> k) != 0) throw InvalidArgument("vertex has bits beyond the arity");
    if (!pred.satisfied(bits)) throw InvalidArgument("mixture vertex " + std::to_string(bits) + " is not satisfying");
    total += w;
  }
  if (total != 1) throw InvalidArgument("mixture weights sum to " + to_string(total) + ", not 1");
}

std::vector<Rational> VertexMixture::first_moments() const {
  std::vector<Rational> b(static_cast<std::size_t>(k));
  for (const auto& [bits, w] : vertices)
    for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] += w * spin(bits, i);
  return b;
}

BiasProfile VertexMixture::profile() const {
  BiasProfile p(k);
  const std::vector<Rational> b = first_moments();
  for (int i = 0; i < k; ++i) p.set_single(i, b[static_cast<std::size_t>(i)]);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Rational s;
      for (const auto& [bits, w] : vertices) s += w * (spin(bits, i) * spin(bits, j));
      p.set_pair(i, j, s);
    }
  return p;
}

VertexMixture random_mixture(int k, const std::vector<std::uint64_t>& pool, std::mt19937_64& rng, int max_terms) {
  std::set<std::uint64_t> distinct(pool.begin(), pool.end());
  if (distinct.size() < 2) throw InvalidArgument("mixtures need at least two distinct vertices");
  const int cap = std::min<int>(std::max(2, max_terms), static_cast<int>(distinct.size()));
  const int terms = std::uniform_int_distribution<int>(2, cap)(rng);
  std::set<std::uint64_t> chosen;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  while (static_cast<int>(chosen.size()) < terms) chosen.insert(pool[pick(rng)]);
  std::uniform_int_distribution<long> raw(1, 9);
  std::vector<long> w;
  long sum = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) sum += w.emplace_back(raw(rng));
  VertexMixture m{k, {}};
  std::size_t i = 0;
  for (std::uint64_t bits : chosen) m.vertices.emplace_back(bits, make_rational(w[i++], sum));
  return m;
}

}  // namespace gapforge
