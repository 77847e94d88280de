#include "gapforge/rounding/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "gapforge/error.hpp"
#include "gapforge/exactnum/psd.hpp"
#include "gapforge/parallel.hpp"

namespace gapforge {
namespace {

void add_monomials(int arity, int max_degree, std::map<Monomial, Expectation>& out) {
  Monomial current;
  auto rec = [&](auto&& self, int next) -> void {
    Expectation e;
    e.exact = Rational(1);
    e.value = 1.0;
    out.emplace(current, e);
    if (out.size() > kMaxExpectationEntries) throw CapExceeded("too many monomials in expectation map");
    if (static_cast<int>(current.size()) == max_degree) return;
    for (int i = next; i < arity; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

std::vector<int> hits(const Monomial& monomial, const std::set<int>& part) {
  std::vector<int> out;
  for (int i : monomial)
    if (part.count(i)) out.push_back(i);
  return out;
}

std::set<int> to_set(const std::vector<int>& part, int arity) {
  std::set<int> s;
  for (int i : part) {
    if (i < 0 || i >= arity) throw InvalidArgument("part index " + std::to_string(i) + " outside the variables");
    s.insert(i);
  }
  return s;
}

std::string describe(const std::vector<int>& part) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < part.size(); ++i) os << (i ? "," : "") << part[i] + 1;
  os << "}";
  return os.str();
}

void check_alpha(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw InvalidArgument("alpha must lie in [0, 1]");
}

// Multiplies an entry by a real factor with its own standard error.
void scale_entry(Expectation& e, double factor, double factor_error) {
  const double old = e.value;
  e.std_error = std::sqrt(std::pow(old * factor_error, 2) + std::pow(factor * e.std_error, 2));
  e.value = old * factor;
  e.exact.reset();
}

void scale_entry(Expectation& e, const Rational& factor) {
  if (e.exact) {
    e.exact = *e.exact * factor;
    e.value = e.exact->get_d();
  } else {
    e.value *= factor.get_d();
  }
  e.std_error *= std::abs(factor.get_d());
}

// Lower factor L with L L^T = gram, tolerant of semidefinite pivots.
std::vector<std::vector<double>> real_factor(const std::vector<std::vector<double>>& gram) {
  const std::size_t n = gram.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double d = gram[j][j];
    for (std::size_t t = 0; t < j; ++t) d -= l[j][t] * l[j][t];
    if (d <= 1e-12) continue;
    l[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = gram[i][j];
      for (std::size_t t = 0; t < j; ++t) s -= l[i][t] * l[j][t];
      l[i][j] = s / l[j][j];
    }
  }
  return l;
}

}  // namespace

ExpectationMap ExpectationMap::all_ones(int arity, int max_degree) {
  if (arity < 0 || max_degree < 0) throw InvalidArgument("negative arity or degree");
  ExpectationMap m;
  m.arity_ = arity;
  m.max_degree_ = std::min(arity, max_degree);
  add_monomials(arity, m.max_degree_, m.entries_);
  m.history_.push_back("ones");
  return m;
}

const Expectation& ExpectationMap::at(const Monomial& monomial) const {
  auto it = entries_.find(monomial);
  if (it == entries_.end()) throw InvalidArgument("monomial not tracked by the expectation map");
  return it->second;
}

bool ExpectationMap::invariants_hold() const {
  auto root = entries_.find(Monomial{});
  if (root == entries_.end() || !root->second.exact || *root->second.exact != 1) return false;
  for (const auto& [m, e] : entries_) {
    if (e.exact && (*e.exact < -1 || *e.exact > 1)) return false;
    if (std::abs(e.value) > 1.0 + 4.0 * e.std_error + 1e-12) return false;
  }
  return true;
}

ExpectationMap apply_chi_single(const ExpectationMap& in, const Rational& alpha, const std::vector<int>& part,
                                const BiasProfile& bias) {
  check_alpha(alpha);
  if (bias.n() < in.arity()) throw DimensionMismatch("bias profile has fewer variables than the scheme");
  const std::set<int> v = to_set(part, in.arity());
  ExpectationMap out = in;
  for (auto& [m, e] : out.entries_) {
    Rational factor = 1;
    for (int i : hits(m, v)) factor *= alpha * bias.single(i);
    if (factor != 1) scale_entry(e, factor);
  }
  out.history_.push_back("chi" + describe(part) + "[alpha=" + to_string(alpha) + "]");
  return out;
}

ExpectationMap apply_chi_pair(const ExpectationMap& in, const Rational& alpha, const std::vector<int>& first,
                              const std::vector<int>& second, const BiasProfile& bias, const MonteCarloSettings& mc) {
  check_alpha(alpha);
  if (bias.n() < in.arity()) throw DimensionMismatch("bias profile has fewer variables than the scheme");
  std::set<int> u = to_set(first, in.arity());
  for (int i : to_set(second, in.arity())) u.insert(i);
  const std::vector<int> members(u.begin(), u.end());
  const std::size_t size = members.size();

  SymMatrix gram(size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = a; b < size; ++b)
      gram.at(a, b) = a == b ? Rational(1) : Rational(alpha * bias.pair(members[a], members[b]));
  const PsdResult psd = psd_check(gram);
  if (!psd.psd) throw NotPsd("alpha B + (1 - alpha) I is not positive semidefinite on the chosen parts");

  std::map<int, std::size_t> slot;
  for (std::size_t a = 0; a < size; ++a) slot[members[a]] = a;

  ExpectationMap out = in;
  std::vector<std::pair<Expectation*, std::vector<std::size_t>>> sampled;
  for (auto& [m, e] : out.entries_) {
    const std::vector<int> h = hits(m, u);
    if (h.empty()) continue;
    if (h.size() == 1) {
      e.exact = Rational(0);
      e.value = 0.0;
      e.std_error = 0.0;
    } else if (h.size() == 2) {
      const Rational entry = alpha * bias.pair(h[0], h[1]);
      if (entry == 0 || entry == 1 || entry == -1) {
        scale_entry(e, entry);
      } else {
        scale_entry(e, 2.0 / std::numbers::pi * std::asin(entry.get_d()), 0.0);
      }
    } else {
      std::vector<std::size_t> idx;
      for (int i : h) idx.push_back(slot[i]);
      sampled.emplace_back(&e, idx);
    }
  }

  std::ostringstream note;
  note << "chi" << describe(first) << describe(second) << "[alpha=" << to_string(alpha) << "]";
  if (!sampled.empty()) {
    if (mc.samples == 0) throw InvalidArgument("Monte Carlo needs at least one sample");
    std::vector<std::vector<double>> g(size, std::vector<double>(size));
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) g[a][b] = gram(a, b).get_d();
    const auto l = real_factor(g);
    std::mt19937_64 rng(derive_seed(mc.seed, 0));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> w(size), proj(size);
    std::vector<std::int64_t> totals(sampled.size(), 0);
    std::vector<int> sign(size);
    for (std::uint64_t s = 0; s < mc.samples; ++s) {
      for (auto& x : w) x = normal(rng);
      for (std::size_t a = 0; a < size; ++a) {
        double acc = 0.0;
        for (std::size_t t = 0; t <= a; ++t) acc += l[a][t] * w[t];
        sign[a] = acc >= 0.0 ? 1 : -1;
      }
      for (std::size_t q = 0; q < sampled.size(); ++q) {
        int p = 1;
        for (std::size_t a : sampled[q].second) p *= sign[a];
        totals[q] += p;
      }
    }
    const double n = static_cast<double>(mc.samples);
    for (std::size_t q = 0; q < sampled.size(); ++q) {
      const double mean = static_cast<double>(totals[q]) / n;
      const double se = std::sqrt(std::max(0.0, 1.0 - mean * mean) / n);
      scale_entry(*sampled[q].first, mean, se);
    }
    note << "[seed=" << mc.seed << ",samples=" << mc.samples << "]";
  }
  out.history_.push_back(note.str());
  return out;
}

ExpectationMap apply_parity(const ExpectationMap& in, const std::vector<std::vector<int>>& parts) {
  std::vector<std::set<int>> sets;
  std::set<int> seen;
  std::string note = "parity";
  for (const auto& part : parts) {
    sets.push_back(to_set(part, in.arity()));
    for (int i : sets.back())
      if (!seen.insert(i).second) throw InvalidArgument("parity parts overlap at variable " + std::to_string(i + 1));
    note += describe(part);
  }
  ExpectationMap out = in;
  for (auto& [m, e] : out.entries_) {
    bool keep = true;
    for (const auto& s : sets)
      if (hits(m, s).size() % 2 == 0) keep = false;
    if (!keep) {
      e.exact = Rational(0);
      e.value = 0.0;
      e.std_error = 0.0;
    }
  }
  out.history_.push_back(note);
  return out;
}

namespace {

ExpectationMap run_recipe(const BiasMonomial& monomial, const std::vector<std::vector<int>>& parts,
                          const BiasProfile& bias, const Rational& alpha, const MonteCarloSettings& mc) {
  ExpectationMap e = ExpectationMap::all_ones(bias.n(), bias.n());
  std::uint64_t stream = 0;
  for (int j : monomial.singles) e = apply_chi_single(e, alpha, parts.at(static_cast<std::size_t>(j)), bias);
  for (const auto& [a, b] : monomial.pairs) {
    MonteCarloSettings step = mc;
    step.seed = derive_seed(mc.seed, ++stream);
    e = apply_chi_pair(e, alpha, parts.at(static_cast<std::size_t>(a)), parts.at(static_cast<std::size_t>(b)), bias,
                       step);
  }
  return apply_parity(e, parts);
}

}  // namespace

SynthesisReport synthesize_monomial(const BiasMonomial& monomial, const std::vector<std::vector<int>>& parts,
                                    const BiasProfile& bias, const Rational& alpha, const MonteCarloSettings& mc) {
  if (bias.n() > 16) throw CapExceeded("monomial synthesis tracks every monomial; at most 16 variables");
  const int m = static_cast<int>(parts.size());
  if (m < 1 || m > 16) throw InvalidArgument("need between 1 and 16 parts");
  for (int j : monomial.singles)
    if (j < 0 || j >= m) throw InvalidArgument("monomial refers to a missing part");
  for (const auto& [a, b] : monomial.pairs)
    if (a < 0 || a >= m || b < 0 || b >= m || a == b) throw InvalidArgument("pair factor needs two distinct parts");
  std::vector<int> cover(static_cast<std::size_t>(bias.n()), 0);
  for (const auto& part : parts)
    for (int i : part) {
      if (i < 0 || i >= bias.n()) throw InvalidArgument("part index out of range");
      ++cover[static_cast<std::size_t>(i)];
    }
  if (std::ranges::any_of(cover, [](int c) { return c != 1; }))
    throw InvalidArgument("parts must partition the variables");

  SynthesisReport report;
  report.alpha = alpha;
  report.mc = mc;

  std::string chain = "ones";
  for (int j : monomial.singles) chain = "chi" + describe(parts[static_cast<std::size_t>(j)]) + " . " + chain;
  for (const auto& [a, b] : monomial.pairs)
    chain = "chi" + describe(parts[static_cast<std::size_t>(a)]) + describe(parts[static_cast<std::size_t>(b)]) +
            " . " + chain;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
    int sign = 1;
    std::string flips;
    for (int a = 0; a < m; ++a) {
      const bool minus = (y >> a) & 1U;
      if (minus) sign = -sign;
      flips += minus ? '-' : '+';
    }
    report.mixture.terms.push_back({Rational(sign) / Rational(power_of_two(m)), "flip[" + flips + "] . " + chain});
  }

  const ExpectationMap full = run_recipe(monomial, parts, bias, alpha, mc);
  const ExpectationMap half = run_recipe(monomial, parts, bias, alpha / 2, mc);
  const int degree = monomial.degree();

  std::vector<std::set<int>> sets;
  for (const auto& p : parts) sets.push_back(to_set(p, bias.n()));
  auto one_per_part = [&](const Monomial& mono) {
    if (mono.size() != sets.size()) return false;
    for (const auto& s : sets)
      if (hits(mono, s).size() != 1) return false;
    return true;
  };
  auto role = [&](const Monomial& mono, int part) {
    return hits(mono, sets[static_cast<std::size_t>(part)]).front();
  };

  report.ratio_test_ok = true;
  const double shrink = std::pow(0.5, degree + 1);
  for (const auto& [mono, e] : full.entries()) {
    if (mono.empty()) continue;
    const Expectation& h = half.at(mono);
    if (one_per_part(mono)) {
      double p = std::pow(alpha.get_d(), degree) * std::pow(2.0 / std::numbers::pi, monomial.pairs.size());
      for (int j : monomial.singles) p *= bias.single(role(mono, j)).get_d();
      for (const auto& [a, b] : monomial.pairs) p *= bias.pair(role(mono, a), role(mono, b)).get_d();
      TargetReport t{mono, e.value, p, p == 0.0 ? std::abs(e.value) : std::abs(e.value - p) / std::abs(p)};
      report.targets.push_back(t);
      continue;
    }
    if (e.value == 0.0 && h.value == 0.0 && e.std_error == 0.0 && h.std_error == 0.0) continue;
    OffTargetReport o;
    o.monomial = mono;
    o.at_alpha = e.value;
    o.at_half_alpha = h.value;
    o.std_error = std::max(e.std_error, h.std_error);
    o.decays = std::abs(h.value) <= std::abs(e.value) * shrink * 1.25 + 4.0 * (e.std_error + h.std_error);
    if (!o.decays) report.ratio_test_ok = false;
    report.off_targets.push_back(o);
  }
  return report;
}

}  // namespace gapforge
