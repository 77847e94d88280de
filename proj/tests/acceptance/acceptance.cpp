// Acceptance checks 1-12. Usage: acceptance [criterion...]; prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <bit>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "domain_oracles.hpp"
#include "gapforge/construct/balance.hpp"
#include "gapforge/construct/core.hpp"
#include "gapforge/construct/gadget.hpp"
#include "gapforge/construct/pipeline.hpp"
#include "gapforge/construct/unary.hpp"
#include "gapforge/error.hpp"
#include "gapforge/gapverify/gapverify.hpp"
#include "gapforge/predicate/fourier.hpp"
#include "gapforge/rounding/almost_monarchy.hpp"
#include "gapforge/rounding/hypergraph.hpp"
#include "gapforge/rounding/mixture.hpp"
#include "gapforge/rounding/monarchy.hpp"
#include "oracles.hpp"

using namespace gapforge;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool condition, const std::string& what) {
    if (condition) return;
    ok = false;
    if (failures.size() < 8) failures.push_back(what);
  }
  void note(const std::string& text) { notes.push_back(text); }
};

std::string str(const Rational& r) { return to_string(r); }

std::vector<Rational> as_rationals(const IntVector& v) { return {v.begin(), v.end()}; }

// ---- 1 ----
void core_certificate(Outcome& out) {
  const Core core = core_instance();
  const CoreReport report = verify_core(core);
  out.require(report.pass(), "verify_core reports a failure");
  out.require(core.vectors.size() == 22, "expected 22 vectors, got " + std::to_string(core.vectors.size()));
  out.require(core.forms.size() == 4 && core.dists.size() == 4, "expected four forms and four distributions");
  for (const auto& v : core.vectors) {
    int positive = 0;
    for (const auto& f : core.forms) {
      const Rational value = f.evaluate(as_rationals(v));
      out.require(value != 0, "a form vanishes on a core vector");
      positive += value > 0;
    }
    out.require(positive == 2, "a vector makes " + std::to_string(positive) + " forms positive");
  }
  for (std::size_t a = 0; a < core.dists.size(); ++a) {
    Rational total;
    std::vector<Rational> mean(4);
    std::vector<std::vector<Rational>> second(4, std::vector<Rational>(4));
    for (std::size_t v = 0; v < core.vectors.size(); ++v) {
      const Rational& p = core.dists[a][v];
      out.require(p >= 0, "negative probability");
      if (p > 0) out.require(core.forms[a].evaluate(as_rationals(core.vectors[v])) > 0, "support outside the form's positive side");
      total += p;
      for (int i = 0; i < 4; ++i) {
        mean[i] += p * core.vectors[v][i];
        for (int j = 0; j < 4; ++j) second[i][j] += p * (core.vectors[v][i] * core.vectors[v][j]);
      }
    }
    out.require(total == 1, "distribution does not sum to 1");
    for (int i = 0; i < 4; ++i) {
      out.require(mean[i] == 0, "E[v_i] = " + str(mean[i]));
      out.require(second[i][i] == 299, "E[v_i^2] = " + str(second[i][i]));
      for (int j = 0; j < 4; ++j)
        if (i != j) out.require(second[i][j] == 0, "E[v_i v_j] = " + str(second[i][j]));
    }
  }
  out.note("22 vectors, 4 distributions, E[v_i^2] = 299");
}

// ---- 2 ----
void core_solver(Outcome& out) {
  const CoreParameters p = solve_core_parameters(1, 2, 7);
  out.require(p.d == 64, "d = " + str(p.d));
  out.require(p.e == 299, "e = " + str(p.e));
  out.require(p.p1 == make_rational(1196, 4500), "p1 = " + str(p.p1));
  out.require(p.p2 == make_rational(299, 4500), "p2 = " + str(p.p2));
  out.require(p.p3 == make_rational(15, 4500), "p3 = " + str(p.p3));
  for (const auto& r : core_parameter_residuals(p)) out.require(r == 0, "nonzero residual " + str(r));

  // Substitution: the seven vectors of the first distribution and their moments.
  const Rational a = p.a, b = p.b, c = p.c, d = p.d, e = p.e;
  std::vector<std::pair<std::vector<Rational>, Rational>> dist = {{{e, 0, 0, 0}, p.p3}};
  for (const std::vector<Rational>& tail : {std::vector<Rational>{-a, -b, -b}, std::vector<Rational>{-c, -c, d}}) {
    std::vector<Rational> perm = tail;
    std::sort(perm.begin(), perm.end());
    do dist.push_back({{-a, perm[0], perm[1], perm[2]}, tail[0] == -a ? p.p1 : p.p2});
    while (std::next_permutation(perm.begin(), perm.end()));
  }
  out.require(dist.size() == 7, "expected seven support vectors");
  Rational total;
  std::vector<Rational> mean(4);
  std::vector<std::vector<Rational>> second(4, std::vector<Rational>(4));
  for (const auto& [v, w] : dist) {
    total += w;
    for (int i = 0; i < 4; ++i) {
      mean[i] += w * v[i];
      for (int j = 0; j < 4; ++j) second[i][j] += w * v[i] * v[j];
    }
  }
  out.require(total == 1, "probabilities sum to " + str(total));
  for (int i = 0; i < 4; ++i) {
    out.require(mean[i] == 0, "first moment " + str(mean[i]));
    out.require(second[i][i] == p.variance, "second moment " + str(second[i][i]));
    for (int j = i + 1; j < 4; ++j) out.require(second[i][j] == 0, "cross moment " + str(second[i][j]));
  }
  // The same vectors and weights appear in the core's first distribution.
  const Core core = core_instance();
  for (const auto& [v, w] : dist) {
    IntVector iv;
    for (const auto& x : v) iv.push_back(x.get_num().get_si());
    const auto it = std::find(core.vectors.begin(), core.vectors.end(), iv);
    out.require(it != core.vectors.end() && core.dists[0][static_cast<std::size_t>(it - core.vectors.begin())] == w,
                "solver output disagrees with the core distribution");
  }
  out.note("d=64 e=299 p=(1196,299,15)/4500, variance " + str(p.variance));
}

// ---- 3 ----
bool oracle_constant(const GapInstance& inst, long& value) {
  value = oracle::total_value(inst, 0);
  for (std::uint64_t x = 1; x < (std::uint64_t{1} << inst.n); ++x)
    if (oracle::total_value(inst, x) != value) return false;
  return true;
}

void perfect_gap(Outcome& out) {
  int mutants = 0;
  for (const auto& name : builtin_names()) {
    const GapInstance inst = builtin_instance(name);
    const GapReport r = verify_perfect_gap(inst);
    out.require(r.moments_ok && r.support_ok && r.psd_ok && r.constant_ok, name + " fails a clause");
    long value = 0;
    const bool constant = oracle_constant(inst, value);
    const auto m = static_cast<long>(inst.constraints.size());
    out.require(constant && r.constant * m == value, name + ": algebraic constant disagrees with enumeration");
    const auto brute = brute_force_constant_sum(inst);
    out.require(brute && *brute == value, name + ": library enumeration disagrees");
    for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
      GapInstance mutant = inst;
      mutant.constraints.erase(mutant.constraints.begin() + static_cast<long>(a));
      mutant.dists.erase(mutant.dists.begin() + static_cast<long>(a));
      const GapReport mr = verify_perfect_gap(mutant);
      ++mutants;
      out.require(mr.moments_ok && mr.support_ok && mr.psd_ok, name + " mutant fails an unrelated clause");
      out.require(!mr.constant_ok && mr.nonconstant_subset.has_value(), name + " mutant passes the constant clause");
      if (mr.nonconstant_subset) {
        const Rational coef = oracle::sum_coefficient(mutant, *mr.nonconstant_subset);
        out.require(coef != 0 && coef == mr.nonconstant_coefficient, name + " mutant: named subset is not a witness");
      }
      long ignored = 0;
      out.require(!oracle_constant(mutant, ignored), name + " mutant is constant under enumeration");
      out.require(!brute_force_constant_sum(mutant).has_value(), name + " mutant: library enumeration says constant");
    }
  }
  out.note(std::to_string(mutants) + " deletion mutants rejected with a named subset");
}

// ---- 4 ----
struct MutantFamily {
  std::string label;
  int total = 0;
  int failing = 0;
};

bool vanishes_up_to(const std::vector<PolytopePoint>& points, const std::vector<const FourierTable*>& tables, int max_t) {
  for (int t = 1; t <= max_t; ++t)
    if (!vanish_level(points, tables, t, VanishOrder::PermuteThenNegate).vanished) return false;
  return true;
}

void vanishing(Outcome& out) {
  const std::vector<std::pair<std::string, int>> cases = {{"three_xor", 3}, {"glst", 4}};
  std::vector<MutantFamily> families = {{"global single bias"}, {"global shift of every entry"}, {"one point, one coordinate"},
                                        {"one point, two coordinates"}, {"deleted constraint, shifted bias"}};
  for (const auto& [name, max_t] : cases) {
    const GapInstance inst = builtin_instance(name);
    const VanishReport r = ktw_vanish_report(inst, max_t);
    out.require(static_cast<int>(r.levels.size()) == max_t, name + ": missing levels");
    out.require(r.vanished(), name + " does not vanish");
    for (int t = 1; t <= max_t; ++t) out.require(oracle::oracle_vanishes(inst, t), name + ": oracle does not vanish");

    // Instance-level mutants, each compared with the oracle at every level.
    auto instance_mutant = [&, name = name, max_t = max_t](MutantFamily& family, const GapInstance& m) {
      ++family.total;
      const VanishReport mr = ktw_vanish_report(m, max_t);
      family.failing += !mr.vanished();
      for (int t = 1; t <= max_t; ++t)
        out.require(mr.levels[static_cast<std::size_t>(t - 1)].vanished == oracle::oracle_vanishes(m, t),
                    name + ": mutant level disagrees with the oracle");
    };
    for (int i = 0; i < inst.n; ++i) {
      GapInstance m = inst;
      m.bias.set_single(i, inst.bias.single(i) + make_rational(1, 2));
      instance_mutant(families[0], m);
    }
    GapInstance shifted = inst;
    for (int i = 0; i < inst.n; ++i) shifted.bias.set_single(i, make_rational(1, 2 + i));
    for (int i = 0; i < inst.n; ++i)
      for (int j = i + 1; j < inst.n; ++j) shifted.bias.set_pair(i, j, make_rational(1, 5 + i + j));
    instance_mutant(families[1], shifted);
    for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
      GapInstance m = shifted;
      m.constraints.erase(m.constraints.begin() + static_cast<long>(a));
      m.dists.erase(m.dists.begin() + static_cast<long>(a));
      instance_mutant(families[4], m);
    }

    // Point-level mutants: move the local bias point of a single constraint.
    std::vector<FourierTable> tables;
    for (std::size_t a = 0; a < inst.constraints.size(); ++a) tables.push_back(fourier_transform(inst.predicate_of(a)));
    std::vector<const FourierTable*> refs;
    std::vector<PolytopePoint> points;
    for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
      refs.push_back(&tables[a]);
      points.push_back(signed_bias_point(inst, a));
    }
    for (std::size_t a = 0; a < points.size(); ++a) {
      const int k = points[a].k;
      for (int i = 0; i < k; ++i) {
        auto moved = points;
        moved[a].coords[static_cast<std::size_t>(i)] += make_rational(1, 2);
        ++families[2].total;
        families[2].failing += !vanishes_up_to(moved, refs, max_t);
        for (int j = i + 1; j < k; ++j) {
          auto both = moved;
          both[a].coords[static_cast<std::size_t>(j)] -= make_rational(1, 5);
          ++families[3].total;
          families[3].failing += !vanishes_up_to(both, refs, max_t);
        }
      }
    }
  }
  std::string summary = "3-XOR t=1..3 and GLST t=1..4 vanish; mutants failing at some t:";
  for (const auto& f : families) {
    summary += " " + f.label + " " + std::to_string(f.failing) + "/" + std::to_string(f.total) + ",";
    out.require(f.failing == f.total, f.label + ": " + std::to_string(f.total - f.failing) + " of " +
                                          std::to_string(f.total) + " mutants still vanish");
  }
  summary.pop_back();
  out.note(summary);
}

// ---- 5 ----
Rational direct_almost_monarchy_coefficient(int k, std::uint64_t subset) { return oracle::lead_coefficient(k, k - 4, subset); }

void fourier_closed_forms(Outcome& out) {
  int classes = 0;
  for (int k : {6, 8, 10, 12, 14}) {
    const FourierTable t = fourier_transform(Predicate::almost_monarchy(k));
    Rational parseval;
    std::map<std::pair<bool, int>, Rational> seen;
    for (std::uint64_t s = 0; s < t.size(); ++s) {
      const Rational c = t.coefficient(s);
      parseval += c * c;
      const CoefficientClass cls{(s & 1U) != 0, std::popcount(s >> 1)};
      const bool listed = cls.president ? (cls.citizens == 0 || cls.citizens % 2 == 0) : cls.citizens % 2 == 1;
      if (!listed) {
        out.require(c == 0, "k=" + std::to_string(k) + ": unlisted class " + cls.name() + " is nonzero");
        continue;
      }
      const Rational closed = fourier_closed_form(k, cls);
      out.require(c == closed, "k=" + std::to_string(k) + " " + cls.name() + ": transform " + str(c) + " vs closed " + str(closed));
      if (!seen.count({cls.president, cls.citizens})) {
        ++classes;
        seen[{cls.president, cls.citizens}] = c;
        out.require(direct_almost_monarchy_coefficient(k, s) == closed, "direct summation disagrees for " + cls.name());
      }
    }
    if (k <= 12) out.require(parseval == 1, "k=" + std::to_string(k) + ": Parseval sum " + str(parseval));
  }
  out.note(std::to_string(classes) + " classes checked against transform and direct summation");
}

// ---- 6 ----
// Sign-level balance test by layer counting.
bool oracle_perfectly_balanced(const LinearForm& f) {
  const int k = static_cast<int>(f.arity());
  std::vector<long> net(static_cast<std::size_t>(k + 1), 0);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
    std::vector<Rational> point;
    for (int i = 0; i < k; ++i) point.emplace_back(oracle::spin(x, i));
    const Rational v = f.evaluate(point);
    if (v == 0) return false;
    net[static_cast<std::size_t>(std::popcount(x))] += v > 0 ? 1 : -1;
  }
  for (int t = 1; t < k; ++t)
    if (net[static_cast<std::size_t>(t)] != 0) return false;
  return true;
}

// Integer weights proportional to a form (positive scale).
std::vector<long long> integer_weights(const LinearForm& f) {
  Integer den = 1;
  for (const auto& w : f.weights) den = lcm(den, Integer(w.get_den()));
  std::vector<long long> out;
  for (const auto& w : f.weights) out.push_back(Integer(w.get_num() * (den / w.get_den())).get_si());
  return out;
}

long long eval_int(const std::vector<long long>& w, std::uint64_t x) {
  long long s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += ((x >> i) & 1U) ? w[i] : -w[i];
  return s;
}

int sign(long long v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

// The four merge properties by enumeration over every input and every row or column permutation.
bool oracle_merge(const LinearForm& l1, const LinearForm& l2, const MergeResult& m, std::string& why) {
  const std::size_t k = m.k;
  const auto w3 = integer_weights(m.form), w1 = integer_weights(l1), w2 = integer_weights(l2);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto bit = [&](std::uint64_t x, std::size_t r, std::size_t c) { return (x >> (r * k + c)) & 1U; };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << (k * k)); ++x) {
    const int s3 = sign(eval_int(w3, x));
    if (s3 == 0) return why = "merged form vanishes", false;
    bool rows_equal = true, cols_equal = true;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        rows_equal = rows_equal && bit(x, r, c) == bit(x, r, 0);
        cols_equal = cols_equal && bit(x, r, c) == bit(x, 0, c);
      }
    if (rows_equal) {
      std::uint64_t u = 0;
      for (std::size_t r = 0; r < k; ++r) u |= bit(x, r, 0) << r;
      if (s3 != sign(eval_int(w1, u))) return why = "row-constant input disagrees with the first form", false;
    } else {
      long total = 0;
      for (const auto& s : perms) {
        std::uint64_t y = 0;
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) y |= bit(x, r, s[c]) << (r * k + c);
        total += sign(eval_int(w3, y));
      }
      if (total != 0) return why = "column permutations do not average to zero", false;
    }
    if (cols_equal) {
      std::uint64_t v = 0;
      for (std::size_t c = 0; c < k; ++c) v |= bit(x, 0, c) << c;
      if (s3 != sign(eval_int(w2, v))) return why = "column-constant input disagrees with the second form", false;
    } else {
      long total = 0;
      for (const auto& s : perms) {
        std::uint64_t y = 0;
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) y |= bit(x, s[r], c) << (r * k + c);
        total += sign(eval_int(w3, y));
      }
      if (total != 0) return why = "row permutations do not average to zero", false;
    }
  }
  return true;
}

void balanced_suite(Outcome& out) {
  const LinearForm example = LinearForm::integral({2, 1, -1, -1});
  out.require(check_perfectly_balanced(example) && oracle_perfectly_balanced(example), "2x1+x2-x3-x4 is not balanced");
  const LinearForm flat = LinearForm::integral({1, 1, 1, 1});
  bool flat_passes = true;
  try {
    flat_passes = check_perfectly_balanced(flat);
  } catch (const ZeroValue&) {
    flat_passes = false;
  }
  out.require(!flat_passes && !oracle_perfectly_balanced(flat), "x1+x2+x3+x4 passes");

  for (const auto& form : {LinearForm::integral({2, 1}), LinearForm::integral({1, -3}), LinearForm::integral({2, 1, -1, -1}),
                           LinearForm::integral({8, 4, 2, 1}), LinearForm::integral({5, -3, 2, 1})}) {
    const LinearForm doubled = balance_double(form);
    const std::size_t k = form.arity();
    out.require(doubled.arity() == 2 * k && doubled.constant == 0, "doubled form has the wrong shape");
    out.require(check_perfectly_balanced(doubled) && oracle_perfectly_balanced(doubled), "doubled form fails the layer test");
    for (std::size_t i = 0; i < k; ++i)
      out.require(doubled.weights[i] - doubled.weights[k + i] == form.weights[i], "restriction identity fails coefficient-wise");
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
      std::vector<Rational> xy(2 * k), xs(k);
      for (std::size_t i = 0; i < k; ++i) {
        xs[i] = oracle::spin(x, static_cast<int>(i));
        xy[i] = xs[i];
        xy[k + i] = -xs[i];
      }
      out.require(doubled.evaluate(xy) == form.evaluate(xs), "restriction to y = -x differs from the input form");
    }
  }

  const std::vector<std::pair<LinearForm, LinearForm>> pairs = {
      {LinearForm::integral({2, 1}), LinearForm::integral({1, 3})},
      {LinearForm::integral({2, 1, -1, -1}), LinearForm::integral({-1, 2, -1, 1})}};
  for (const auto& [l1, l2] : pairs) {
    const MergeResult m = merge_dual(l1, l2);
    out.require(verify_merge(l1, l2, m).ok(), "verify_merge fails for k=" + std::to_string(m.k));
    std::string why;
    out.require(oracle_merge(l1, l2, m, why), "k=" + std::to_string(m.k) + ": " + why);
  }
  out.note("doubling for k in {2,4}; merge properties exhaustive for k=2 (2^4 inputs) and k=4 (2^16 inputs)");
}

// ---- 7 ----
void gadget_suite(Outcome& out) {
  const GadgetVerification two = verify_gadget(build_gadget({{0}, {1}}, 1));
  out.require(two.ok() && two.output_patterns.size() == 2, "m=2 gadget admits a non-permutation");
  const GadgetVerification three = verify_gadget(build_gadget({{0}, {1}, {2}}, 2));
  out.require(three.ok() && three.output_patterns.size() == 6, "m=3 gadget admits a non-permutation");

  const std::vector<std::vector<Rational>> dists = {
      {make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)},
      {Rational(1), Rational(0), Rational(0)},
      {make_rational(1, 2), make_rational(1, 6), make_rational(1, 3)}};
  std::vector<std::pair<std::vector<IntVector>, std::vector<Rational>>> configs;
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b)
      for (long c = 0; c <= 2; ++c)
        for (const auto& d : dists) configs.push_back({{{a}, {b}, {c}}, d});
  for (int code = 0; code < 729; ++code) {
    std::vector<IntVector> rows;
    int rest = code;
    for (int r = 0; r < 3; ++r) {
      rows.push_back({rest % 3, (rest / 3) % 3});
      rest /= 9;
    }
    configs.push_back({rows, dists[2]});
  }
  std::size_t compared = 0;
  for (const auto& [rows, dist] : configs) {
    const int n = static_cast<int>(rows[0].size());
    std::vector<Rational> c(static_cast<std::size_t>(n));
    std::vector<std::vector<Rational>> cc(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int i = 0; i < n; ++i) {
        c[i] += dist[r] * rows[r][i];
        for (int j = 0; j < n; ++j) cc[i][j] += dist[r] * (rows[r][i] * rows[r][j]);
      }
    const GadgetMoments gm(rows, 2, c, cc);
    const oracle::ChainOracle o = oracle::chain_oracle(rows, 2, dist);
    const auto vars = gm.variables();
    out.require(vars.size() == o.names.size(), "variable count differs");
    if (vars.size() != o.names.size()) continue;
    std::map<std::string, std::size_t> slot;
    for (std::size_t a = 0; a < o.names.size(); ++a) slot[o.names[a]] = a;
    for (std::size_t u = 0; u < vars.size(); ++u) {
      const std::size_t a = slot.at(vars[u].name());
      out.require(gm.mean(vars[u]) == o.mean[a], "mean of " + vars[u].name());
      for (std::size_t v = u; v < vars.size(); ++v) {
        out.require(gm.pair(vars[u], vars[v]) == o.pair[a][slot.at(vars[v].name())],
                    "pair " + vars[u].name() + " * " + vars[v].name());
        ++compared;
      }
    }
  }
  out.note(std::to_string(configs.size()) + " configurations, " + std::to_string(compared) + " pair moments compared");
}

// ---- 8 ----
void unary_suite(Outcome& out) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> weight(0, 3);
  int specs = 0, printed_mismatch = 0;
  auto random_dist = [&](long a, long b) {
    std::vector<std::pair<long, Rational>> d;
    long total = 0;
    std::vector<long> w;
    for (long x = a; x <= b; ++x) total += w.emplace_back(weight(rng));
    if (total == 0) {
      w[0] = 1;
      total = 1;
    }
    for (long x = a; x <= b; ++x)
      if (w[static_cast<std::size_t>(x - a)] > 0) d.emplace_back(x, make_rational(w[static_cast<std::size_t>(x - a)], total));
    return d;
  };
  auto spec_of = [](const std::vector<std::pair<long, Rational>>& d) {
    MomentSpec s;
    Rational m, sq;
    for (const auto& [x, p] : d) {
      m += p * x;
      sq += p * (x * x);
    }
    s.add("x", m, sq);
    return s;
  };
  for (long a = -2; a <= 2; ++a)
    for (long len = 1; len <= 4; ++len) {
      const long b = a + len;
      for (int trial = 0; trial < 100; ++trial) {
        const auto d = random_dist(a, b);
        const MomentSpec spec = spec_of(d);
        out.require(spec.realizability_issues().empty(), "drawn spec is not realizable");
        const auto [m1, m2] = oracle::digit_oracle(a, b, d);
        const UnaryMoments corrected({{"x", a, b}}, spec);
        const UnaryMoments printed({{"x", a, b}}, spec, UnaryFormulas::Printed);
        ++specs;
        out.require(corrected.digit_mean(0) == m1, "digit mean on [" + std::to_string(a) + "," + std::to_string(b) + "]");
        bool agree = printed.digit_mean(0) == m1;
        if (len >= 2) {
          out.require(corrected.same_pair(0) == m2, "same-variable digit pair on [" + std::to_string(a) + "," + std::to_string(b) + "]");
          agree = agree && printed.same_pair(0) == m2;
        }
        printed_mismatch += !agree;
      }
    }
  // Cross moments between two variables under random joint distributions.
  int joints = 0;
  for (long a1 : {-1L, 0L})
    for (long len1 = 1; len1 <= 3; ++len1)
      for (long a2 : {0L, 1L})
        for (long len2 = 1; len2 <= 3; ++len2)
          for (int trial = 0; trial < 10; ++trial) {
            const long b1 = a1 + len1, b2 = a2 + len2;
            std::vector<std::tuple<long, long, Rational>> joint;
            long total = 0;
            for (long x = a1; x <= b1; ++x)
              for (long y = a2; y <= b2; ++y) {
                const long w = weight(rng);
                total += w;
                if (w) joint.emplace_back(x, y, Rational(w));
              }
            if (total == 0) continue;
            MomentSpec spec;
            Rational mx, my, sx, sy, cxy, cross;
            for (auto& [x, y, p] : joint) {
              p /= total;
              mx += p * x, my += p * y, sx += p * (x * x), sy += p * (y * y), cxy += p * (x * y);
              const auto [ex, fx] = oracle::digit_oracle(a1, b1, {{x, Rational(1)}});
              const auto [ey, fy] = oracle::digit_oracle(a2, b2, {{y, Rational(1)}});
              cross += p * ex * ey;
            }
            spec.add("x", mx, sx);
            spec.add("y", my, sy);
            spec.set_cross(0, 1, cxy);
            const UnaryMoments um({{"x", a1, b1}, {"y", a2, b2}}, spec);
            out.require(um.cross_pair(0, 1) == cross, "cross digit moment");
            ++joints;
          }
  out.note(std::to_string(specs) + " single-variable specs and " + std::to_string(joints) +
           " joint specs match the digit oracle; printed formulas disagree on " + std::to_string(printed_mismatch) + " of " +
           std::to_string(specs));
}

// ---- 9 ----
BiasProfile random_bias(int k, std::mt19937_64& rng) {
  BiasProfile b(k);
  for (int i = 0; i < k; ++i) b.set_single(i, oracle::random_small_rational(rng, 4, 3));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) b.set_pair(i, j, oracle::random_small_rational(rng, 4, 3));
  return b;
}

void identities(Outcome& out) {
  std::mt19937_64 rng(9);
  const auto& specs = inclusion_exclusion_identities();
  out.require(specs.size() == 9, "expected nine identities");
  std::map<int, int> printed_ok;
  int checks = 0;
  for (int k : {7, 8, 9})
    for (int trial = 0; trial < 100; ++trial) {
      const BiasProfile bias = random_bias(k, rng);
      for (const auto& spec : specs) {
        const IdentityOutcome o = check_identity(spec, bias);
        ++checks;
        out.require(o.aggregate_matches && o.direct == o.aggregate,
                    "identity " + std::to_string(spec.index) + " at k=" + std::to_string(k));
        printed_ok[spec.index] += o.printed_matches;
        if (trial < 3)
          out.require(o.direct == spec.multiplier * oracle::distinct_image_sum(spec.lhs, bias),
                      "direct sum disagrees with the labeling oracle for identity " + std::to_string(spec.index));
      }
    }
  std::string printed;
  for (const auto& [index, count] : printed_ok)
    if (count != 300) printed += " " + std::to_string(index) + "(" + std::to_string(count) + "/300)";
  out.note(std::to_string(checks) + " identity checks; printed right-hand sides that differ:" + (printed.empty() ? " none" : printed));
}

// ---- 10 ----
Rational oracle_min_bias(const Rational& a, const Rational& b, const Rational& c) {
  const int s = sgn(a) * sgn(b) * sgn(c);
  return s * std::min({Rational(abs(a)), Rational(abs(b)), Rational(abs(c))});
}

void monarchy(Outcome& out) {
  for (int k = 5; k <= 10; ++k) {
    const MonarchySweep s = monarchy_sweep(k, 1000, static_cast<std::uint64_t>(k));
    const MonarchyCoefficients& c = s.coeffs;
    const Rational f3c = oracle::lead_coefficient(k, k - 2, 0b1110), fp2c = oracle::lead_coefficient(k, k - 2, 0b111);
    out.require(f3c == c.three_citizens && fp2c == c.president_pair, "k=" + std::to_string(k) + ": coefficients disagree with direct summation");
    out.require(f3c > 0 && fp2c < 0, "k=" + std::to_string(k) + ": sign preconditions fail");
    out.require(c.citizen == oracle::lead_coefficient(k, k - 2, 0b10), "k=" + std::to_string(k) + ": floor coefficient");
    out.require(s.passed(), "k=" + std::to_string(k) + ": advantage below the floor, margin " + str(s.worst_margin));
    out.require(s.mixtures_checked == 1000, "mixture count");
    std::uint64_t sat = 0;
    const Predicate pred = Predicate::monarchy(k);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) sat += pred.satisfied(x);
    out.require(s.vertices_checked == sat, "not every satisfying vertex was checked");
    // Recompute the worst case from first moments.
    const std::vector<Rational> b = s.worst.first_moments();
    Rational beta, triples, with_president;
    for (int i = 1; i < k; ++i) beta += b[i];
    for (int i = 1; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        with_president += oracle_min_bias(b[0], b[i], b[j]);
        for (int l = j + 1; l < k; ++l) triples += oracle_min_bias(b[i], b[j], b[l]);
      }
    const Rational advantage = c.president * b[0] + c.citizen * beta + c.scale * (f3c * triples + fp2c * with_president);
    out.require(advantage - c.citizen == s.worst_margin, "k=" + std::to_string(k) + ": recomputed worst margin differs");
    out.require(advantage >= c.citizen, "k=" + std::to_string(k) + ": recomputed advantage below the floor");
    out.note("k=" + std::to_string(k) + " worst margin " + str(s.worst_margin));
  }
}

// ---- 11 ----
VertexMixture vertex_of(const std::vector<int>& x) {
  return VertexMixture::vertex(static_cast<int>(x.size()), oracle::bits_of(x));
}

void almost_monarchy(Outcome& out) {
  std::mt19937_64 rng(11);
  for (int k : {9, 10, 11}) {
    const AlmostMonarchyCoefficients c = almost_monarchy_coefficients(k, FourierSource::Transform);
    const Predicate pred = Predicate::almost_monarchy(k);
    std::vector<std::uint64_t> pool;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x)
      if (pred.satisfied(x)) pool.push_back(x);
    for (int t = 0; t < 12; ++t) {
      const VertexMixture mix = t < 6 ? VertexMixture::vertex(k, pool[rng() % pool.size()]) : random_mixture(k, pool, rng);
      const BiasProfile bias = mix.profile();
      out.require(almost_monarchy_functional(bias, c).advantage == almost_monarchy_direct(bias, c),
                  "aggregate and direct evaluators disagree at k=" + std::to_string(k));
    }
  }

  const ThresholdReport r = almost_monarchy_threshold(ThresholdSettings{});
  std::uint64_t floor_failures = 0, vertices = 0;
  std::string first_fail;
  for (const auto& l : r.levels) {
    floor_failures += l.floor_failures;
    vertices += l.vertices_checked;
    out.require(l.vertices_checked == 10000, "k=" + std::to_string(l.k) + ": sampled " + std::to_string(l.vertices_checked));
    if (!l.passed && first_fail.empty()) first_fail = std::to_string(l.k);
  }
  out.require(r.levels.size() == 46, "expected 46 levels");
  out.require(floor_failures == 0, "delta floor fails at " + std::to_string(floor_failures) + " sampled vertices");

  // The reported worst vertex, re-evaluated through the aggregate functional.
  if (!r.levels.empty()) {
    const ThresholdLevel& top = r.levels.back();
    std::vector<int> x(static_cast<std::size_t>(top.k));
    for (int i = 0; i < top.k; ++i) x[i] = oracle::spin(top.worst_vertex, i);
    const AlmostMonarchyCoefficients c = almost_monarchy_coefficients(top.k);
    const Rational value = almost_monarchy_advantage(vertex_of(x), c).advantage;
    out.require(value == top.worst_advantage, "worst vertex re-evaluation differs");
    std::ostringstream detail;
    detail << "k=" << top.k << " worst A = " << value.get_d() << " at x1=" << x[0] << " with " << top.worst_dissenters
           << " dissenting citizens";
    out.note(detail.str());
  }
  if (!r.threshold) {
    out.require(false, "no k* <= 60 with A > 0 on every sampled vertex; offending profile: " + r.offending);
  } else {
    out.note("threshold k* = " + std::to_string(*r.threshold));
  }
  out.note(std::to_string(vertices) + " vertices sampled; first failing level k=" + (first_fail.empty() ? "none" : first_fail));
}

// ---- 12 ----
void pipeline(Outcome& out) {
  const PipelinePlan plan = plan_pipeline();
  out.require(!plan.stages.empty(), "empty plan");
  for (std::size_t s = 1; s < plan.stages.size(); ++s)
    out.require(plan.stages[s].input_variables == plan.stages[s - 1].output_variables,
                "stage " + plan.stages[s].name + " consumes " + std::to_string(plan.stages[s].input_variables) + " but " +
                    plan.stages[s - 1].name + " produced " + std::to_string(plan.stages[s - 1].output_variables));
  bool any_checked = false;
  for (const auto& s : plan.stages) {
    out.require(s.output_variables > 0, "stage " + s.name + " produces nothing");
    any_checked = any_checked || s.moments_checked;
    for (const auto& issue : s.realizability_issues) out.require(false, s.name + ": " + issue);
  }
  out.require(any_checked, "no stage ran a moment check");
  out.require(plan.consistent() && plan.realizable(), "plan reports itself inconsistent");
  out.note(std::to_string(plan.stages.size()) + " stages, final variable count " +
           std::to_string(plan.stages.empty() ? 0 : plan.stages.back().output_variables));
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "core certificate", 1, core_certificate},
      {2, "core parameter solver", 1, core_solver},
      {3, "perfect-gap verifier", 1, perfect_gap},
      {4, "vanishing measure", 10, vanishing},
      {5, "Fourier closed forms", 30, fourier_closed_forms},
      {6, "perfectly balanced forms", 120, balanced_suite},
      {7, "permutation gadgets", 120, gadget_suite},
      {8, "unary encoding", 60, unary_suite},
      {9, "inclusion/exclusion identities", 120, identities},
      {10, "monarchy scheme", 120, monarchy},
      {11, "almost-monarchy threshold", 900, almost_monarchy},
      {12, "pipeline dry run", 1, pipeline},
  };
  return list;
}

bool run_one(const Criterion& c) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream timing;
  timing.precision(3);
  timing << std::fixed << seconds << " s of " << c.budget_seconds << " s";
  out.require(seconds <= c.budget_seconds, "runtime " + timing.str());
  std::cout << "AC" << c.id << " " << (out.ok ? "PASS" : "FAIL") << " " << c.title << " [" << timing.str() << "]";
  for (const auto& n : out.notes) std::cout << "; " << n;
  std::cout << "\n";
  for (const auto& f : out.failures) std::cout << "    failure: " << f << "\n";
  std::cout.flush();
  return out.ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > static_cast<int>(criteria().size())) {
      std::cerr << "unknown criterion " << argv[i] << "\n";
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty())
    for (const auto& c : criteria()) selected.push_back(c.id);
  bool all = true;
  for (int id : selected) all = run_one(criteria()[static_cast<std::size_t>(id - 1)]) && all;
  return all ? 0 : 1;
}
