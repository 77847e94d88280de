#include "gapforge/gapverify/gapverify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "gapforge/error.hpp"
#include "gapforge/exactnum/psd.hpp"
#include "gapforge/parallel.hpp"

namespace gapforge {

namespace {

int spin(std::uint64_t bits, std::size_t i) { return ((bits >> i) & 1U) ? 1 : -1; }

auto constraint_key(const Constraint& c) { return std::tie(c.predicate, c.phi, c.signs); }

std::vector<int> spins(std::uint64_t bits, std::size_t k) {
  std::vector<int> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = spin(bits, i);
  return x;
}

std::vector<FourierTable> predicate_tables(const GapInstance& inst) {
  std::vector<FourierTable> tables;
  tables.reserve(inst.predicates.size());
  for (const auto& p : inst.predicates) tables.push_back(fourier_transform(p));
  return tables;
}

Rational binomial(int n, int r) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return Rational(out);
}

void check_moments(const GapInstance& inst, GapReport& report) {
  for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
    const Constraint& c = inst.constraints[a];
    const std::size_t k = c.arity();
    auto consider = [&](int i, int j, const Rational& expected, const Rational& actual) {
      if (expected == actual) return;
      MomentMismatch mm{c, i, j, expected, actual};
      if (i > j && j >= 0) std::swap(mm.i, mm.j);
      if (!report.moment_failure ||
          std::make_tuple(mm.i, mm.j, constraint_key(mm.constraint), mm.actual) <
              std::make_tuple(report.moment_failure->i, report.moment_failure->j,
                              constraint_key(report.moment_failure->constraint), report.moment_failure->actual))
        report.moment_failure = mm;
    };
    for (std::size_t i = 0; i < k; ++i) {
      Rational m;
      for (const auto& [bits, p] : inst.dists[a]) m += p * spin(bits, i);
      consider(c.phi[i], -1, inst.bias.single(c.phi[i]), m);
      for (std::size_t j = i + 1; j < k; ++j) {
        Rational mij;
        for (const auto& [bits, p] : inst.dists[a]) mij += p * (spin(bits, i) * spin(bits, j));
        consider(c.phi[i], c.phi[j], inst.bias.pair(c.phi[i], c.phi[j]), mij);
      }
    }
  }
  report.moments_ok = !report.moment_failure;
}

void check_support(const GapInstance& inst, GapReport& report) {
  for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
    const Constraint& c = inst.constraints[a];
    const Predicate& pred = inst.predicate_of(a);
    for (const auto& [bits, p] : inst.dists[a]) {
      if (p == 0 || pred.satisfied(c.predicate_input(bits))) continue;
      SupportViolation v{c, spins(bits, c.arity())};
      if (!report.support_failure ||
          std::make_tuple(constraint_key(v.constraint), v.assignment) <
              std::make_tuple(constraint_key(report.support_failure->constraint), report.support_failure->assignment))
        report.support_failure = v;
    }
  }
  report.support_ok = !report.support_failure;
}

void check_psd(const GapInstance& inst, GapReport& report) {
  PsdResult r = psd_check(inst.bias.bordered_matrix());
  report.psd_ok = r.psd;
  report.psd_witness = r.witness;
  report.psd_value = r.witness_value;
}

void check_constant(const GapInstance& inst, GapReport& report) {
  std::vector<FourierTable> tables = predicate_tables(inst);
  std::map<GlobalSubset, Rational> total;
  for (const auto& c : inst.constraints)
    for (auto& [t, v] : global_fourier(tables[static_cast<std::size_t>(c.predicate)], c)) total[t] += v;
  for (const auto& [t, v] : total) {
    if (t.empty()) {
      report.constant = v / static_cast<long>(inst.constraints.size());
    } else if (v != 0 && !report.nonconstant_subset) {
      report.nonconstant_subset = t;
      report.nonconstant_coefficient = v;
    }
  }
  report.constant_ok = !report.nonconstant_subset;
}

}  // namespace

void GapInstance::validate() const {
  if (n < 1) throw InvalidArgument("instance needs at least one variable");
  if (bias.n() != n) throw DimensionMismatch("bias profile size differs from n");
  if (constraints.empty()) throw InvalidArgument("instance has no constraints");
  if (dists.size() != constraints.size()) throw DimensionMismatch("need one distribution per constraint");
  for (std::size_t a = 0; a < constraints.size(); ++a) {
    const Constraint& c = constraints[a];
    if (c.predicate < 0 || static_cast<std::size_t>(c.predicate) >= predicates.size())
      throw InvalidArgument("constraint " + std::to_string(a + 1) + " references an unknown predicate");
    c.validate(n, predicate_of(a).arity());
    Rational total;
    for (const auto& [bits, p] : dists[a]) {
      if (p < 0) throw InvalidArgument("negative probability in distribution " + std::to_string(a + 1));
      if (bits >> c.arity()) throw InvalidArgument("assignment wider than constraint " + std::to_string(a + 1));
      total += p;
    }
    if (total != 1) throw InvalidArgument("distribution " + std::to_string(a + 1) + " sums to " + to_string(total));
  }
}

GapReport verify_perfect_gap(const GapInstance& inst) {
  inst.validate();
  GapReport report;
  // The clauses touch disjoint report fields.
  const std::function<void(const GapInstance&, GapReport&)> clauses[] = {check_moments, check_support, check_psd,
                                                                        check_constant};
  parallel_chunks(4, [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
    for (std::uint64_t i = begin; i < end; ++i) clauses[i](inst, report);
  });
  return report;
}

std::optional<Rational> brute_force_constant_sum(const GapInstance& inst) {
  inst.validate();
  if (inst.n > kMaxBruteForceVariables) throw CapExceeded("too many variables for enumeration");
  auto total_at = [&](std::uint64_t x) {
    long sum = 0;
    for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
      const Constraint& c = inst.constraints[a];
      std::uint64_t local = 0;
      for (std::size_t i = 0; i < c.arity(); ++i)
        if ((x >> c.phi[i]) & 1U) local |= std::uint64_t{1} << i;
      sum += inst.predicate_of(a).value(c.predicate_input(local));
    }
    return sum;
  };
  const long first = total_at(0);
  std::mutex mu;
  bool constant = true;
  parallel_chunks(std::uint64_t{1} << inst.n, [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
    for (std::uint64_t x = begin; x < end; ++x) {
      if (total_at(x) != first) {
        std::lock_guard<std::mutex> lock(mu);
        constant = false;
        return;
      }
    }
  });
  if (!constant) return std::nullopt;
  return Rational(first);
}

BiasProfile bias_from_distributions(const GapInstance& inst) {
  BiasProfile out(inst.n);
  std::vector<bool> single_set(static_cast<std::size_t>(inst.n));
  std::map<std::pair<int, int>, bool> pair_set;
  for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
    const Constraint& c = inst.constraints[a];
    for (std::size_t i = 0; i < c.arity(); ++i) {
      if (!single_set[static_cast<std::size_t>(c.phi[i])]) {
        Rational m;
        for (const auto& [bits, p] : inst.dists[a]) m += p * spin(bits, i);
        out.set_single(c.phi[i], m);
        single_set[static_cast<std::size_t>(c.phi[i])] = true;
      }
      for (std::size_t j = i + 1; j < c.arity(); ++j) {
        auto key = std::minmax(c.phi[i], c.phi[j]);
        if (pair_set[key]) continue;
        Rational m;
        for (const auto& [bits, p] : inst.dists[a]) m += p * (spin(bits, i) * spin(bits, j));
        out.set_pair(c.phi[i], c.phi[j], m);
        pair_set[key] = true;
      }
    }
  }
  return out;
}

PolytopePoint signed_bias_point(const GapInstance& inst, std::size_t a) {
  const Constraint& c = inst.constraints.at(a);
  PolytopePoint p = bias_point(inst.bias, c.phi);
  const int k = p.k;
  for (int i = 0; i < k; ++i) p.coords[static_cast<std::size_t>(i)] *= c.signs[static_cast<std::size_t>(i)];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      p.coords[static_cast<std::size_t>(k) + pair_slot(k, i, j)] *=
          c.signs[static_cast<std::size_t>(i)] * c.signs[static_cast<std::size_t>(j)];
  return p;
}

bool VanishReport::vanished() const {
  auto all = [](const std::vector<VanishLevel>& v) {
    return std::all_of(v.begin(), v.end(), [](const VanishLevel& l) { return l.vanished; });
  };
  return all(levels) && all(alternate_levels);
}

VanishLevel vanish_level(const std::vector<PolytopePoint>& points, const std::vector<const FourierTable*>& tables, int t,
                         VanishOrder order) {
  if (points.size() != tables.size()) throw DimensionMismatch("one Fourier table per point");
  if (points.empty()) throw InvalidArgument("empty measure");
  if (t < 1) throw InvalidArgument("vanishing level must be at least 1");
  std::map<std::vector<Rational>, Rational> atoms;
  const long m = static_cast<long>(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    const PolytopePoint& p = points[a];
    const int k = p.k;
    if (k > kMaxVanishArity) throw CapExceeded("vanishing check arity cap exceeded");
    if (tables[a]->arity() != k) throw DimensionMismatch("table arity differs from point arity");
    if (t > k) continue;
    Rational per_term = 1 / (binomial(k, t) * m);
    for (int f = 2; f <= t; ++f) per_term /= f;
    per_term /= (1L << t);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) {
      if (std::popcount(s) != t || tables[a]->numerator(s) == 0) continue;
      const Rational base = per_term * tables[a]->coefficient(s);
      std::vector<int> members;
      for (int i = 0; i < k; ++i)
        if ((s >> i) & 1U) members.push_back(i);
      std::vector<int> perm(static_cast<std::size_t>(t));
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (std::uint64_t zb = 0; zb < (std::uint64_t{1} << t); ++zb) {
          auto z = [&](int i) {
            const int idx = order == VanishOrder::PermuteThenNegate ? i : perm[static_cast<std::size_t>(i)];
            return spin(zb, static_cast<std::size_t>(idx));
          };
          std::vector<Rational> q;
          q.reserve(polytope_dimension(t));
          int sign = 1;
          for (int i = 0; i < t; ++i) {
            sign *= spin(zb, static_cast<std::size_t>(i));
            q.push_back(z(i) * p.single(members[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]));
          }
          for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j)
              q.push_back(z(i) * z(j) *
                          p.pair(members[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])],
                                 members[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])]));
          if (sign > 0)
            atoms[q] += base;
          else
            atoms[q] -= base;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  VanishLevel out;
  out.t = t;
  for (const auto& [q, w] : atoms) {
    if (w != 0) {
      out.vanished = false;
      out.atom = q;
      out.residual = w;
      break;
    }
  }
  return out;
}

VanishLevel ktw_vanish_check(const GapInstance& inst, int t, VanishOrder order) {
  inst.validate();
  std::vector<FourierTable> tables = predicate_tables(inst);
  std::vector<PolytopePoint> points;
  std::vector<const FourierTable*> refs;
  for (std::size_t a = 0; a < inst.constraints.size(); ++a) {
    points.push_back(signed_bias_point(inst, a));
    refs.push_back(&tables[static_cast<std::size_t>(inst.constraints[a].predicate)]);
  }
  return vanish_level(points, refs, t, order);
}

VanishReport ktw_vanish_report(const GapInstance& inst, int max_t) {
  int k = 0;
  for (const auto& p : inst.predicates) k = std::max(k, p.arity());
  VanishReport report;
  for (int t = 1; t <= std::min(max_t, k); ++t) {
    report.levels.push_back(ktw_vanish_check(inst, t, VanishOrder::PermuteThenNegate));
    report.alternate_levels.push_back(ktw_vanish_check(inst, t, VanishOrder::NegateThenPermute));
  }
  return report;
}

namespace {

Distribution uniform(const std::vector<std::vector<int>>& xs) {
  Distribution d;
  for (const auto& x : xs) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] == 1) bits |= std::uint64_t{1} << i;
    d.emplace_back(bits, Rational(1, static_cast<long>(xs.size())));
  }
  return d;
}

}  // namespace

GapInstance builtin_three_xor() {
  GapInstance inst;
  inst.n = 3;
  inst.predicates = {Predicate::parity(3)};
  inst.bias = BiasProfile(3);
  for (std::uint64_t b = 0; b < 8; ++b) {
    Constraint c{0, {0, 1, 2}, {spin(b, 0), spin(b, 1), spin(b, 2)}};
    Distribution d;
    for (std::uint64_t x = 0; x < 8; ++x)
      if (inst.predicates[0].satisfied(c.predicate_input(x))) d.emplace_back(x, Rational(1, 4));
    inst.constraints.push_back(c);
    inst.dists.push_back(d);
  }
  return inst;
}

GapInstance builtin_glst() {
  GapInstance inst;
  inst.n = 4;
  inst.predicates = {Predicate::glst()};
  inst.bias = BiasProfile(4);
  inst.bias.set_pair(2, 3, -1);
  inst.constraints = {Constraint{0, {0, 1, 2, 3}, {1, 1, 1, 1}}, Constraint{0, {0, 1, 2, 3}, {1, -1, 1, 1}}};
  inst.dists = {uniform({{1, 1, 1, -1}, {1, -1, -1, 1}, {-1, 1, -1, 1}, {-1, -1, 1, -1}}),
                uniform({{-1, 1, 1, -1}, {1, -1, 1, -1}, {1, 1, -1, 1}, {-1, -1, -1, 1}})};
  return inst;
}

std::vector<std::string> builtin_names() { return {"glst", "three_xor"}; }

GapInstance builtin_instance(const std::string& name) {
  if (name == "three_xor") return builtin_three_xor();
  if (name == "glst") return builtin_glst();
  throw InvalidArgument("unknown builtin instance '" + name + "'");
}

}  // namespace gapforge
