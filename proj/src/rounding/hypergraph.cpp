#include "gapforge/rounding/hypergraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

PatternEdge normalized(PatternEdge e) {
  if (!e.unary() && e.second < e.first) std::swap(e.first, e.second);
  return e;
}

PatternEdge relabel(const PatternEdge& e, const std::vector<int>& map) {
  auto f = [&](int v) { return v >= 0 ? map[static_cast<std::size_t>(v)] : v; };
  return normalized({f(e.first), f(e.second)});
}

std::vector<PatternEdge> relabeled(const std::vector<PatternEdge>& edges, const std::vector<int>& map) {
  std::vector<PatternEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(relabel(e, map));
  std::sort(out.begin(), out.end());
  return out;
}

std::string vertex_name(int v) { return v == kAlphaVertex ? "a" : "i" + std::to_string(v + 1); }

std::string edge_name(const PatternEdge& e) {
  if (e.unary()) return vertex_name(e.first);
  return "(" + vertex_name(e.first) + "," + vertex_name(e.second) + ")";
}

// Union-find over free vertices plus the president (slot n).
std::vector<int> component_of(int n, const std::vector<PatternEdge>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n + 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto slot = [n](int v) { return v == kAlphaVertex ? n : v; };
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& e : edges)
    if (!e.unary()) parent[static_cast<std::size_t>(find(slot(e.first)))] = find(slot(e.second));
  std::vector<int> out(static_cast<std::size_t>(n + 1));
  for (int v = 0; v <= n; ++v) out[static_cast<std::size_t>(v)] = find(v);
  return out;
}

// Integer form of a bias profile: b_i = single[i] / single_den, b_ij = pair[i][j] / pair_den.
struct ScaledBias {
  int k = 0;
  Integer single_den = 1;
  Integer pair_den = 1;
  std::vector<Integer> single;
  std::vector<std::vector<Integer>> pair;

  explicit ScaledBias(const BiasProfile& bias) : k(bias.n()) {
    std::vector<Rational> s, p;
    for (int i = 0; i < k; ++i) s.push_back(bias.single(i));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) p.push_back(bias.pair(i, j));
    single_den = common_denominator(s);
    pair_den = common_denominator(p);
    for (int i = 0; i < k; ++i) {
      Rational v = bias.single(i) * single_den;
      single.push_back(v.get_num());
    }
    pair.assign(static_cast<std::size_t>(k), std::vector<Integer>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        Rational v = bias.pair(i, j) * pair_den;
        pair[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v.get_num();
        pair[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v.get_num();
      }
  }

  Rational scale(const std::vector<PatternEdge>& edges) const {
    Integer den = 1;
    for (const auto& e : edges) den *= e.unary() ? single_den : pair_den;
    return Rational(1) / Rational(den);
  }
};

// Set partitions of {0..n-1}, as block index per element.
void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& visit) {
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      visit(block, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  rec(rec, 0, 0);
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Sum over all (not necessarily injective) labelings into citizens, loops weighted 0.
Integer homomorphism_sum(int n, const std::vector<PatternEdge>& edges, const ScaledBias& sb) {
  const std::size_t c = static_cast<std::size_t>(sb.k - 1);
  Integer scalar = 1;
  for (const auto& e : edges) {
    if (!e.unary() && e.first == e.second) return 0;
    if (e.unary() && e.first == kAlphaVertex) scalar *= sb.single[0];
  }
  struct Factor {
    std::vector<int> vars;
    std::vector<Integer> data;
  };
  std::vector<Factor> factors;
  for (int v = 0; v < n; ++v) {
    Factor f{{v}, std::vector<Integer>(c, 1)};
    for (const auto& e : edges) {
      for (std::size_t x = 0; x < c; ++x) {
        const std::size_t var = x + 1;
        if (e.unary() && e.first == v) f.data[x] *= sb.single[var];
        if (!e.unary() && e.first == kAlphaVertex && e.second == v) f.data[x] *= sb.pair[0][var];
      }
    }
    factors.push_back(std::move(f));
  }
  std::map<std::pair<int, int>, std::size_t> pair_factor;
  for (const auto& e : edges) {
    if (e.unary() || e.first == kAlphaVertex) continue;
    auto key = std::make_pair(e.first, e.second);
    auto it = pair_factor.find(key);
    if (it == pair_factor.end()) {
      it = pair_factor.emplace(key, factors.size()).first;
      factors.push_back({{e.first, e.second}, std::vector<Integer>(c * c, 1)});
    }
    auto& data = factors[it->second].data;
    for (std::size_t x = 0; x < c; ++x)
      for (std::size_t y = 0; y < c; ++y) data[x * c + y] *= sb.pair[x + 1][y + 1];
  }

  std::set<int> remaining;
  for (int v = 0; v < n; ++v) remaining.insert(v);
  while (!remaining.empty()) {
    int best = -1;
    std::vector<int> best_union;
    for (int v : remaining) {
      std::set<int> u;
      for (const auto& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) u.insert(f.vars.begin(), f.vars.end());
      if (best < 0 || u.size() < best_union.size()) {
        best = v;
        best_union.assign(u.begin(), u.end());
      }
    }
    if (best_union.size() > 4) throw CapExceeded("pattern too dense for variable elimination");
    std::vector<Factor> touching, rest;
    for (auto& f : factors)
      (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end() ? touching : rest).push_back(std::move(f));
    Factor out;
    for (int v : best_union)
      if (v != best) out.vars.push_back(v);
    std::size_t out_size = 1;
    for (std::size_t i = 0; i < out.vars.size(); ++i) out_size *= c;
    out.data.assign(out_size, 0);
    const std::size_t u = best_union.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < u; ++i) total *= c;
    std::vector<std::size_t> digits(u);
    Integer product;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t i = u; i-- > 0;) {
        digits[i] = rem % c;
        rem /= c;
      }
      auto value_of = [&](int var) {
        const auto pos = std::find(best_union.begin(), best_union.end(), var) - best_union.begin();
        return digits[static_cast<std::size_t>(pos)];
      };
      product = 1;
      for (const auto& f : touching) {
        std::size_t at = 0;
        for (int var : f.vars) at = at * c + value_of(var);
        product *= f.data[at];
        if (product == 0) break;
      }
      if (product == 0) continue;
      std::size_t at = 0;
      for (int var : out.vars) at = at * c + value_of(var);
      out.data[at] += product;
    }
    rest.push_back(std::move(out));
    factors = std::move(rest);
    remaining.erase(best);
  }
  for (const auto& f : factors) scalar *= f.data.at(0);
  return scalar;
}

// Injective labelings by direct enumeration.
Integer injective_sum(int n, const std::vector<PatternEdge>& edges, const ScaledBias& sb) {
  Integer base = 1;
  std::vector<std::vector<PatternEdge>> closing(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    const int top = std::max(e.first, e.second);
    if (top < 0) {
      base *= sb.single[0];
    } else {
      closing[static_cast<std::size_t>(top)].push_back(e);
    }
  }
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  std::vector<bool> used(static_cast<std::size_t>(sb.k), false);
  std::vector<Integer> partial(static_cast<std::size_t>(n) + 1);
  partial[0] = base;
  Integer total = 0;
  if (base == 0) return total;
  auto var_of = [&](int v) { return v == kAlphaVertex ? 0 : label[static_cast<std::size_t>(v)]; };
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == n) {
      total += partial[static_cast<std::size_t>(n)];
      return;
    }
    for (int x = 1; x < sb.k; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      label[static_cast<std::size_t>(depth)] = x;
      Integer& p = partial[static_cast<std::size_t>(depth) + 1];
      p = partial[static_cast<std::size_t>(depth)];
      for (const auto& e : closing[static_cast<std::size_t>(depth)]) {
        if (e.unary()) {
          p *= sb.single[static_cast<std::size_t>(x)];
        } else {
          p *= sb.pair[static_cast<std::size_t>(var_of(e.first))][static_cast<std::size_t>(var_of(e.second))];
        }
      }
      if (p == 0) continue;
      used[static_cast<std::size_t>(x)] = true;
      self(self, depth + 1);
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(rec, 0);
  return total;
}

double falling(int top, int count) {
  double v = 1.0;
  for (int i = 0; i < count; ++i) v *= std::max(0, top - i);
  return v;
}

using Monomials = std::map<std::vector<HypergraphPattern>, Rational>;

// N_inj(p) as a polynomial in N_inj of canonical connected patterns.
const Monomials& injective_expansion(const HypergraphPattern& p) {
  thread_local std::map<HypergraphPattern, Monomials> memo;
  const HypergraphPattern key = p.canonical();
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  Monomials result;
  const auto comps = key.components();
  if (comps.size() <= 1) {
    result[{key}] = 1;
    return memo.emplace(key, result).first->second;
  }
  Monomials product{{{}, Rational(1)}};
  for (const auto& c : comps) {
    Monomials next;
    for (const auto& [m1, c1] : product)
      for (const auto& [m2, c2] : injective_expansion(c)) {
        std::vector<HypergraphPattern> m = m1;
        m.insert(m.end(), m2.begin(), m2.end());
        std::sort(m.begin(), m.end());
        next[m] += c1 * c2;
      }
    product = std::move(next);
  }
  result = product;

  const int n = key.free_vertices();
  const std::vector<int> comp = component_of(n, key.edges());
  for_each_partition(n, [&](const std::vector<int>& block, int blocks) {
    if (blocks == n) return;
    std::vector<std::set<int>> members(static_cast<std::size_t>(blocks));
    for (int v = 0; v < n; ++v) {
      auto& s = members[static_cast<std::size_t>(block[static_cast<std::size_t>(v)])];
      if (!s.insert(comp[static_cast<std::size_t>(v)]).second) return;
    }
    HypergraphPattern merged(blocks, relabeled(key.edges(), block));
    for (const auto& [m, c] : injective_expansion(merged)) result[m] -= c;
  });
  for (auto it = result.begin(); it != result.end();) it = it->second == 0 ? result.erase(it) : std::next(it);
  return memo.emplace(key, std::move(result)).first->second;
}

}  // namespace

HypergraphPattern::HypergraphPattern(int free_vertices, std::vector<PatternEdge> edges) : free_(free_vertices) {
  if (free_vertices < 0 || free_vertices > kMaxPatternVertices)
    throw CapExceeded("patterns support at most " + std::to_string(kMaxPatternVertices) + " free vertices");
  std::vector<bool> seen(static_cast<std::size_t>(free_vertices), false);
  for (auto e : edges) {
    auto check = [&](int v) {
      if (v == kAlphaVertex) return;
      if (v < 0 || v >= free_vertices) throw InvalidArgument("pattern edge refers to an unknown vertex");
      seen[static_cast<std::size_t>(v)] = true;
    };
    check(e.first);
    if (!e.unary()) {
      check(e.second);
      if (e.first == e.second) throw InvalidArgument("pattern edges join distinct vertices");
    }
    edges_.push_back(normalized(e));
  }
  if (edges_.empty()) throw InvalidArgument("pattern needs at least one edge");
  for (bool s : seen)
    if (!s) throw InvalidArgument("every free vertex must lie on an edge");
}

HypergraphPattern HypergraphPattern::parse(const std::string& text) {
  std::map<std::string, int> names;
  std::vector<PatternEdge> edges;
  std::vector<std::vector<PatternEdge>> groups;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch)
      throw ParseError(std::string("expected '") + ch + "' in pattern '" + text + "'");
    ++pos;
  };
  auto vertex = [&]() -> int {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::string name = text.substr(start, pos - start);
    if (name == "a" || name == "alpha") return kAlphaVertex;
    if (name.size() < 2 || name[0] != 'i' ||
        !std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw ParseError("bad vertex name '" + name + "' in pattern '" + text + "'");
    auto it = names.find(name);
    if (it == names.end()) it = names.emplace(name, static_cast<int>(names.size())).first;
    return it->second;
  };
  while (true) {
    expect('{');
    groups.emplace_back();
    while (true) {
      skip();
      PatternEdge e;
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        e.first = vertex();
        expect(',');
        e.second = vertex();
        expect(')');
      } else {
        e.first = vertex();
      }
      groups.back().push_back(e);
      edges.push_back(e);
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect('}');
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  skip();
  if (pos != text.size()) throw ParseError("trailing characters in pattern '" + text + "'");
  const int n = static_cast<int>(names.size());
  for (const auto& g : groups) {
    const std::vector<int> comp = component_of(n, g);
    std::set<int> roots;
    for (const auto& e : g) roots.insert(comp[static_cast<std::size_t>(e.first == kAlphaVertex ? n : e.first)]);
    if (roots.size() != 1) throw ParseError("braced group is not connected in pattern '" + text + "'");
  }
  try {
    return HypergraphPattern(n, edges);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(e.what()) + " in pattern '" + text + "'");
  }
}

std::string HypergraphPattern::to_string() const {
  const std::vector<int> comp = component_of(free_, edges_);
  std::vector<int> order;
  std::map<int, std::vector<PatternEdge>> grouped;
  for (const auto& e : edges_) {
    const int root = comp[static_cast<std::size_t>(e.first == kAlphaVertex ? free_ : e.first)];
    if (!grouped.count(root)) order.push_back(root);
    grouped[root].push_back(e);
  }
  std::ostringstream os;
  for (std::size_t c = 0; c < order.size(); ++c) {
    os << (c ? ",{" : "{");
    const auto& edges = grouped[order[c]];
    for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? "," : "") << edge_name(edges[i]);
    os << "}";
  }
  return os.str();
}

bool HypergraphPattern::has_alpha() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const PatternEdge& e) { return e.first == kAlphaVertex || e.second == kAlphaVertex; });
}

std::vector<HypergraphPattern> HypergraphPattern::components() const {
  const std::vector<int> comp = component_of(free_, edges_);
  std::vector<int> order;
  std::map<int, std::vector<PatternEdge>> grouped;
  for (const auto& e : edges_) {
    const int root = comp[static_cast<std::size_t>(e.first == kAlphaVertex ? free_ : e.first)];
    if (!grouped.count(root)) order.push_back(root);
    grouped[root].push_back(e);
  }
  std::vector<HypergraphPattern> out;
  for (int root : order) {
    std::vector<int> map(static_cast<std::size_t>(free_), -1);
    int next = 0;
    for (const auto& e : grouped[root])
      for (int v : {e.first, e.second})
        if (v >= 0 && map[static_cast<std::size_t>(v)] < 0) map[static_cast<std::size_t>(v)] = next++;
    std::vector<PatternEdge> edges;
    for (const auto& e : grouped[root]) edges.push_back(relabel(e, map));
    out.emplace_back(next, edges);
  }
  return out;
}

HypergraphPattern HypergraphPattern::canonical() const {
  std::vector<int> perm(static_cast<std::size_t>(free_));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PatternEdge> best;
  bool have = false;
  do {
    auto candidate = relabeled(edges_, perm);
    if (!have || candidate < best) {
      best = std::move(candidate);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return HypergraphPattern(free_, best);
}

long HypergraphPattern::automorphisms() const {
  std::vector<int> perm(static_cast<std::size_t>(free_));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<PatternEdge> base = edges_;
  std::sort(base.begin(), base.end());
  long count = 0;
  do {
    if (relabeled(edges_, perm) == base) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

bool HypergraphPattern::operator<(const HypergraphPattern& other) const {
  if (free_ != other.free_) return free_ < other.free_;
  return edges_ < other.edges_;
}

Rational s_direct(const HypergraphPattern& pattern, const BiasProfile& bias) {
  if (bias.n() < 1) throw InvalidArgument("bias profile is empty");
  if (falling(bias.n() - 1, pattern.free_vertices()) > 5e7)
    throw CapExceeded("direct enumeration would exceed 5e7 labelings");
  const ScaledBias sb(bias);
  Rational total(injective_sum(pattern.free_vertices(), pattern.edges(), sb));
  return total * sb.scale(pattern.edges()) / pattern.automorphisms();
}

std::string ProductTerm::to_string() const {
  std::ostringstream os;
  os << gapforge::to_string(coefficient);
  for (const auto& f : factors) os << " * S" << f.to_string();
  return os.str();
}

std::vector<ProductTerm> expand_pattern(const HypergraphPattern& pattern) {
  const HypergraphPattern key = pattern.canonical();
  const long aut = key.automorphisms();
  std::vector<ProductTerm> out;
  for (const auto& [factors, c] : injective_expansion(key)) {
    Rational coef = c / aut;
    for (const auto& f : factors) coef *= f.automorphisms();
    out.push_back({coef, factors});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ProductTerm& a, const ProductTerm& b) { return a.factors.size() > b.factors.size(); });
  return out;
}

std::vector<ProductTerm> normalize_terms(const std::vector<ProductTerm>& terms) {
  std::map<std::vector<HypergraphPattern>, Rational> merged;
  for (const auto& t : terms) {
    std::vector<HypergraphPattern> f;
    for (const auto& p : t.factors)
      for (const auto& c : p.components()) f.push_back(c.canonical());
    std::sort(f.begin(), f.end());
    merged[f] += t.coefficient;
  }
  std::vector<ProductTerm> out;
  for (const auto& [f, c] : merged)
    if (c != 0) out.push_back({c, f});
  return out;
}

PrimitiveSums::PrimitiveSums(const BiasProfile& bias) : bias_(bias) {}

const Rational& PrimitiveSums::value(const HypergraphPattern& connected) {
  if (!connected.connected()) throw InvalidArgument("primitive sums take connected patterns");
  const HypergraphPattern key = connected.canonical();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const ScaledBias sb(bias_);
  const int n = key.free_vertices();
  Integer injective = 0;
  if (falling(bias_.n() - 1, n) <= 2e5) {
    injective = injective_sum(n, key.edges(), sb);
  } else {
    for_each_partition(n, [&](const std::vector<int>& block, int blocks) {
      std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
      for (int b : block) ++sizes[static_cast<std::size_t>(b)];
      Integer mu = 1;
      for (int s : sizes) mu *= (s % 2 == 1 ? 1 : -1) * factorial(s - 1);
      std::vector<PatternEdge> edges;
      for (const auto& e : key.edges()) {
        auto f = [&](int v) { return v >= 0 ? block[static_cast<std::size_t>(v)] : v; };
        edges.push_back({f(e.first), e.unary() ? kNoVertex : f(e.second)});
      }
      injective += mu * homomorphism_sum(blocks, edges, sb);
    });
  }
  Rational v = Rational(injective) * sb.scale(key.edges()) / key.automorphisms();
  return cache_.emplace(key, v).first->second;
}

Rational PrimitiveSums::evaluate(const std::vector<ProductTerm>& terms) {
  Rational total;
  for (const auto& t : terms) {
    Rational v = t.coefficient;
    for (const auto& f : t.factors) {
      if (v == 0) break;
      v *= value(f);
    }
    total += v;
  }
  return total;
}

Rational s_aggregate(const HypergraphPattern& pattern, const BiasProfile& bias) {
  PrimitiveSums sums(bias);
  return sums.evaluate(expand_pattern(pattern));
}

namespace {

std::vector<ProductTerm> parse_terms(const std::string& text) {
  std::vector<ProductTerm> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    std::stringstream ts(item);
    std::string coef;
    ts >> coef;
    if (coef.empty()) continue;
    ProductTerm t{parse_rational(coef), {}};
    std::string factor;
    while (ts >> factor) {
      int power = 1;
      if (auto caret = factor.find('^'); caret != std::string::npos) {
        power = std::stoi(factor.substr(caret + 1));
        factor = factor.substr(0, caret);
      }
      const HypergraphPattern p = HypergraphPattern::parse(factor);
      for (int i = 0; i < power; ++i) t.factors.push_back(p);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<IdentitySpec> build_identities() {
  const std::string b = "{i1}", a = "{a}", e = "{(i1,i2)}", ae = "{(a,i1)}";
  const std::string star2 = "{(i1,i2),(i1,i3)}", dbl = "{(i1,i2),(i1,i2)}";
  const std::string tail3 = "; +12 {X} {(i1,i2),(i1,i3),(i1,i4)}; +12 {X} {(i1,i2),(i1,i3),(i2,i3)}"
                            "; +6 {X} {(i1,i2),(i2,i3),(i3,i4)}; +6 {X} {(i1,i2),(i1,i2),(i1,i3)}"
                            "; +2 {X} {(i1,i2),(i1,i2),(i1,i2)}";
  auto tail = [&](const std::string& who) {
    std::string t = tail3;
    for (std::size_t p; (p = t.find("{X}")) != std::string::npos;) t.replace(p, 3, who);
    return t;
  };
  std::vector<IdentitySpec> ids;
  auto add = [&](int index, int mult, const std::string& lhs, const std::string& rhs) {
    ids.push_back({index, mult, HypergraphPattern::parse(lhs), parse_terms(rhs)});
  };
  add(1, 1, "{i1},{(i2,i3)}", "+1 " + b + " " + e + "; -1 {i1,(i1,i2)}");
  add(2, 1, "{a},{(i2,i3)}", "+1 " + a + " " + e);
  add(3, 1, "{i1},{(a,i2)}", "+1 " + b + " " + ae + "; -1 {i1,(i1,a)}");
  add(4, 2, "{i1},{(i2,i3)},{(i4,i5)}",
      "+1 " + b + " " + e + "^2; -2 {i1,(i1,i2)} " + e + "; -2 " + b + " " + star2 + "; -1 " + b + " " + dbl +
          "; +2 {i1,(i1,i2),(i2,i3)}; +4 {i1,(i1,i2),(i1,i3)}; +2 {i1,(i1,i2),(i1,i2)}");
  add(5, 2, "{a},{(i2,i3)},{(i4,i5)}",
      "+1 " + a + " " + e + "^2; -2 " + a + " " + star2 + "; -1 " + a + " " + dbl);
  add(6, 1, "{i1},{(a,i2)},{(i3,i4)}",
      "+1 " + b + " " + ae + " " + e + "; -1 {i1,(i1,a)} " + e + "; -1 {i1,(i1,i2)} " + ae + "; -1 " + b +
          " {(a,i1),(i1,i2)}; +1 {i1,(i1,i2),(i2,a)}; +2 {i1,(i1,a),(i1,i2)}");
  add(7, 6, "{i1},{(i2,i3)},{(i4,i5)},{(i6,i7)}",
      "+1 " + b + " " + e + "^3; -3 {i1,(i1,i2)} " + e + "^2; -6 " + b + " " + star2 + " " + e + "; -3 " + b + " " +
          dbl + " " + e + "; +6 {i1,(i1,i2),(i2,i3)} " + e + "; +12 {i1,(i1,i2),(i1,i3)} " + e +
          "; +6 {i1,(i1,i2),(i1,i2)} " + e + tail(b) +
          "; -18 {i1,(i1,i2),(i1,i3),(i1,i4)}; -6 {i2,(i1,i2),(i1,i3),(i1,i4)}"
          "; -12 {i1,(i1,i2),(i1,i3),(i2,i3)}; -6 {i2,(i1,i2),(i2,i3),(i3,i4)}"
          "; -12 {i1,(i1,i2),(i1,i2),(i1,i3)}; -3 {i2,(i1,i2),(i1,i2),(i1,i3)}"
          "; -3 {i3,(i1,i2),(i1,i2),(i1,i3)}; -3 {i1,(i1,i2),(i1,i2),(i1,i2)}");
  add(8, 6, "{a},{(i2,i3)},{(i4,i5)},{(i6,i7)}",
      "+1 " + a + " " + e + "^3; -6 " + a + " " + star2 + " " + e + "; -3 " + a + " " + dbl + " " + e + tail(a));
  add(9, 2, "{i1},{(a,i2)},{(i3,i4)},{(i5,i6)}",
      "+1 " + b + " " + ae + " " + e + "^2; -1 {i1,(i1,a)} " + e + "^2; -2 {i1,(i1,i2)} " + ae + " " + e + "; -2 " +
          b + " {(i1,a),(i1,i3)} " + e + "; -2 " + b + " " + star2 + " " + ae + "; -1 " + b + " " + dbl + " " + ae +
          "; +2 {i1,(i1,i2),(i2,a)} " + e + "; +2 {i1,(i1,i2),(i2,i3)} " + ae + "; +4 {i1,(i1,a),(i1,i2)} " + e +
          "; +4 {i1,(i1,i2),(i1,i3)} " + ae + "; +2 {i1,(i1,i2),(i1,i2)} " + ae + tail(b) +
          "; -10 {i1,(i1,a),(i1,i2),(i1,i3)}; -2 {i2,(i1,i2),(i1,a),(i1,i3)}"
          "; -2 {i2,(a,i1),(i1,i2),(i2,i3)}; -2 {i3,(a,i1),(i1,i2),(i2,i3)}"
          "; -3 {i1,(i1,i2),(i1,i2),(i1,a)}; -2 {i2,(i1,i2),(i1,i2),(i1,a)}");
  return ids;
}

}  // namespace

const std::vector<IdentitySpec>& inclusion_exclusion_identities() {
  static const std::vector<IdentitySpec> ids = build_identities();
  return ids;
}

IdentityOutcome check_identity(const IdentitySpec& spec, const BiasProfile& bias) {
  IdentityOutcome out;
  out.index = spec.index;
  PrimitiveSums sums(bias);
  out.direct = spec.multiplier * s_direct(spec.lhs, bias);
  out.aggregate = spec.multiplier * sums.evaluate(expand_pattern(spec.lhs));
  out.printed = sums.evaluate(spec.printed);
  out.aggregate_matches = out.aggregate == out.direct;
  out.printed_matches = out.printed == out.direct;
  return out;
}

}  // namespace gapforge
