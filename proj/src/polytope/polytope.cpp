#include "gapforge/polytope/polytope.hpp"

#include "gapforge/error.hpp"

namespace gapforge {

std::size_t polytope_dimension(int k) {
  const auto kk = static_cast<std::size_t>(k);
  return kk + kk * (kk - 1) / 2;
}

std::size_t pair_slot(int k, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= k || i == j) throw InvalidArgument("invalid pair index");
  const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j), kk = static_cast<std::size_t>(k);
  return ii * kk - ii * (ii + 1) / 2 + (jj - ii - 1);
}

const Rational& PolytopePoint::pair(int i, int j) const {
  return coords.at(static_cast<std::size_t>(k) + pair_slot(k, i, j));
}

PolytopePoint embed(const std::vector<int>& x) {
  PolytopePoint p;
  p.k = static_cast<int>(x.size());
  p.coords.reserve(polytope_dimension(p.k));
  for (int v : x) {
    if (v != 1 && v != -1) throw InvalidArgument("embed expects +-1 entries");
    p.coords.emplace_back(v);
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) p.coords.emplace_back(x[i] * x[j]);
  return p;
}

PolytopePoint embed_bits(int k, std::uint64_t bits) {
  std::vector<int> x(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = ((bits >> i) & 1U) ? 1 : -1;
  return embed(x);
}

BiasProfile::BiasProfile(int n) : n_(n), b_(static_cast<std::size_t>(n)), pairs_(SymMatrix::identity(static_cast<std::size_t>(n))) {
  if (n < 0) throw InvalidArgument("negative variable count");
}

const Rational& BiasProfile::pair(int i, int j) const {
  if (i == j) throw InvalidArgument("pair moment needs distinct indices");
  return pairs_(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

void BiasProfile::set_single(int i, Rational v) {
  if (i < 0 || i >= n_) throw InvalidArgument("bias index out of range");
  b_[static_cast<std::size_t>(i)] = std::move(v);
}

void BiasProfile::set_pair(int i, int j, Rational v) {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) throw InvalidArgument("pair index out of range");
  pairs_.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::move(v);
}

SymMatrix BiasProfile::bordered_matrix() const {
  const auto n = static_cast<std::size_t>(n_);
  SymMatrix m(n + 1);
  m.at(0, 0) = 1;
  for (std::size_t i = 0; i < n; ++i) {
    m.at(0, i + 1) = b_[i];
    for (std::size_t j = i; j < n; ++j) m.at(i + 1, j + 1) = pairs_(i, j);
  }
  return m;
}

std::vector<std::vector<Rational>> VertexSet::coordinates() const {
  std::vector<std::vector<Rational>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.coords);
  return out;
}

VertexSet ktw_vertices(const Predicate& pred, const std::vector<int>& signs) {
  const int k = pred.arity();
  if (k > kMaxPolytopeArity) throw CapExceeded("polytope arity cap exceeded");
  Constraint c{0, {}, signs.empty() ? std::vector<int>(static_cast<std::size_t>(k), 1) : signs};
  if (static_cast<int>(c.signs.size()) != k) throw DimensionMismatch("sign vector length differs from arity");
  VertexSet out;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
    if (pred.satisfied(c.predicate_input(u))) {
      out.assignments.push_back(u);
      out.points.push_back(embed_bits(k, u));
    }
  }
  return out;
}

VertexSet all_vertices(int k) { return ktw_vertices(Predicate::always_true(k)); }

PolytopePoint bias_point(const BiasProfile& bias, const std::vector<int>& phi) {
  for (int v : phi)
    if (v < 0 || v >= bias.n()) throw InvalidArgument("index " + std::to_string(v + 1) + " outside the profile");
  PolytopePoint p;
  p.k = static_cast<int>(phi.size());
  for (int v : phi) p.coords.push_back(bias.single(v));
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = i + 1; j < phi.size(); ++j) p.coords.push_back(bias.pair(phi[i], phi[j]));
  return p;
}

PolytopePoint bias_projection(const BiasProfile& bias, const std::vector<int>& indices) {
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i - 1] >= indices[i]) throw InvalidArgument("projection indices must be strictly increasing");
  return bias_point(bias, indices);
}

SdpCheck perfect_sdp_check(const BiasProfile& bias, const Predicate& pred, const Constraint& constraint) {
  constraint.validate(bias.n(), pred.arity());
  VertexSet vertices = ktw_vertices(pred, constraint.signs);
  if (vertices.empty()) throw InvalidArgument("predicate has no satisfying assignment");
  SdpCheck out;
  out.certificate = hull_member(bias_point(bias, constraint.phi).coords, vertices.coordinates());
  out.feasible = out.certificate.member;
  if (out.feasible) {
    for (std::size_t j = 0; j < vertices.assignments.size(); ++j)
      if (out.certificate.weights[j] != 0) out.distribution.emplace_back(vertices.assignments[j], out.certificate.weights[j]);
  }
  return out;
}

}  // namespace gapforge
