#include "gapforge/construct/balance.hpp"

#include <algorithm>
#include <numeric>

#include "gapforge/error.hpp"
#include "gapforge/predicate/fourier.hpp"

namespace gapforge {

bool is_power_of_two(std::size_t k) { return k != 0 && (k & (k - 1)) == 0; }

namespace {

Rational sum_abs(const LinearForm& f) {
  Rational s = abs(f.constant);
  for (const auto& w : f.weights) s += abs(w);
  return s;
}

Rational weight_sum(const LinearForm& f) {
  Rational s;
  for (const auto& w : f.weights) s += w;
  return s;
}

int sign_of(std::int64_t v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

LinearForm tri_valued_balanced(std::size_t k) {
  if (!is_power_of_two(k)) throw InvalidArgument("arity must be a power of two");
  LinearForm q({Rational(1)});
  while (q.arity() < k) {
    const std::size_t n = q.arity();
    // B * sum_i 5^i (v_i - u_i) + Q_n(u); differences lie in [-2,2], so base 5 keeps the constraint injective.
    const Rational big = sum_abs(q) + 1;
    std::vector<Rational> w(2 * n);
    Rational power(1);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = q.weights[i] - big * power;
      w[n + i] = big * power;
      power *= 5;
    }
    q = LinearForm(std::move(w));
  }
  return q;
}

LinearForm balance_double(const LinearForm& form) {
  const std::size_t k = form.arity();
  if (!is_power_of_two(k)) throw InvalidArgument("arity must be a power of two");
  if (!form.balanced()) throw InvalidArgument("form must have zero constant");
  if (k > static_cast<std::size_t>(kMaxTableArity)) throw CapExceeded("arity too large to check for zeros");
  const ScaledForm scaled = ScaledForm::from(form);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x)
    if (scaled.at_signs(x) == 0) throw InvalidArgument("form vanishes at a sign point");
  const LinearForm q = tri_valued_balanced(k);
  const Rational big = sum_abs(form) + 1;
  std::vector<Rational> w(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational half = big * q.weights[i] / 2;
    w[i] = half + form.weights[i];
    w[k + i] = half;
  }
  return LinearForm(std::move(w));
}

MergeResult merge_dual(const LinearForm& first, const LinearForm& second) {
  const std::size_t k = first.arity();
  if (second.arity() != k) throw DimensionMismatch("merged forms differ in arity");
  if (!is_power_of_two(k)) throw InvalidArgument("arity must be a power of two");
  if (!first.balanced() || !second.balanced()) throw InvalidArgument("forms must have zero constant");
  if (!check_perfectly_balanced(first) || !check_perfectly_balanced(second))
    throw InvalidArgument("forms must be perfectly balanced");

  MergeResult r;
  r.k = k;
  const Rational s1 = weight_sum(first), s2 = weight_sum(second);
  if (s1 == 0 && s2 == 0) {
    r.second_scale = 1;
  } else if (s1 != 0 && s2 != 0 && sgn(s1) == sgn(s2)) {
    r.second_scale = s1 / s2;
  } else {
    throw NoSolution("row and column sums cannot agree under a positive rescaling of the second form");
  }
  r.second = second.scaled(r.second_scale);

  // w_ij = w_i/k + w'_j/k - T/k^2 has row sums w_i and column sums w'_j.
  const Rational kk(static_cast<long>(k));
  r.grid.assign(k, std::vector<Rational>(k));
  Rational mass;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      r.grid[i][j] = first.weights[i] / kk + r.second.weights[j] / kk - s1 / (kk * kk);
      mass += abs(r.grid[i][j]);
    }

  for (std::uint64_t y = 1; y < k; ++y) {
    const std::uint64_t low = y & (~y + 1);  // z_y = e_low
    for (std::uint64_t a = 0; a < k; ++a) {
      if (a & low) continue;
      for (std::uint64_t b = 0; b < k; ++b) {
        if (b & low) continue;
        r.terms.push_back({y, a, b, Rational(0)});
      }
    }
  }
  // Nonzero terms have |value| >= 2, so 2 c > mass makes every rung dominate all lower rungs plus the grid.
  const Rational c = Rational(floor_of(Rational(mass / 2))) + 1;
  Rational rung = c;
  for (std::size_t t = r.terms.size(); t-- > 0;) {
    r.terms[t].coefficient = rung;
    rung *= 3;
  }

  std::vector<Rational> w(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) w[i * k + j] = r.grid[i][j];
  for (const auto& t : r.terms) {
    const std::uint64_t a2 = t.a ^ t.y, b2 = t.b ^ t.y;
    w[t.a * k + t.b] += t.coefficient;
    w[t.a * k + b2] -= t.coefficient;
    w[a2 * k + t.b] -= t.coefficient;
    w[a2 * k + b2] += t.coefficient;
  }
  r.form = LinearForm(std::move(w));
  return r;
}

MergeVerification verify_merge(const LinearForm& first, const LinearForm& second, const MergeResult& merged) {
  const std::size_t k = merged.k;
  if (k == 0 || k > 4) throw CapExceeded("merge verification supports k <= 4");
  const std::size_t vars = k * k;
  const ScaledForm f3 = ScaledForm::from(merged.form);
  const ScaledForm f1 = ScaledForm::from(first);
  const ScaledForm f2 = ScaledForm::from(second);
  MergeVerification out;
  auto fail = [&](bool& flag, std::uint64_t x) {
    flag = false;
    if (!out.counterexample) out.counterexample = x;
  };

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  auto bit = [](std::uint64_t x, std::size_t i) { return (x >> i) & 1U; };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << vars); ++x) {
    const std::int64_t v = f3.at_signs(x);
    if (v == 0) fail(out.nonzero, x);
    bool row_const = true, col_const = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        row_const = row_const && bit(x, i * k + j) == bit(x, i * k);
        col_const = col_const && bit(x, i * k + j) == bit(x, j);
      }
    if (row_const) {
      std::uint64_t rows = 0;
      for (std::size_t i = 0; i < k; ++i) rows |= bit(x, i * k) << i;
      if (merged.form.evaluate_signs(x) != first.evaluate_signs(rows)) fail(out.row_constant_ok, x);
      if (sign_of(v) != sign_of(f1.at_signs(rows))) fail(out.row_constant_ok, x);
    }
    if (col_const) {
      std::uint64_t cols = 0;
      for (std::size_t j = 0; j < k; ++j) cols |= bit(x, j) << j;
      if (merged.form.evaluate_signs(x) != merged.second.evaluate_signs(cols)) fail(out.column_constant_ok, x);
      if (sign_of(v) != sign_of(f2.at_signs(cols))) fail(out.column_constant_ok, x);
    }
    if (!row_const) {
      long total = 0;
      for (const auto& s : perms) {
        std::uint64_t y = 0;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) y |= bit(x, i * k + s[j]) << (i * k + j);
        total += sign_of(f3.at_signs(y));
      }
      if (total != 0) fail(out.column_average_ok, x);
    }
    if (!col_const) {
      long total = 0;
      for (const auto& s : perms) {
        std::uint64_t y = 0;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) y |= bit(x, s[i] * k + j) << (i * k + j);
        total += sign_of(f3.at_signs(y));
      }
      if (total != 0) fail(out.row_average_ok, x);
    }
  }
  try {
    out.balanced = check_perfectly_balanced(merged.form);
  } catch (const ZeroValue&) {
    out.balanced = false;
  }
  return out;
}

TransformResult instance_transform(const GapInstance& inst, const LinearForm& first, const LinearForm& second) {
  inst.validate();
  const std::size_t k = first.arity();
  if (inst.predicates.size() != 2) throw InvalidArgument("instance must use exactly the two forms as predicates");
  if (!(inst.predicates[0] == Predicate::from_ltf(first)) || !(inst.predicates[1] == Predicate::from_ltf(second)))
    throw InvalidArgument("instance predicates differ from the given forms");
  TransformResult out;
  out.merge = merge_dual(first, second);
  GapInstance& res = out.instance;
  const int kk = static_cast<int>(k);
  res.n = inst.n * kk;
  res.predicates = {Predicate::from_ltf(out.merge.form)};

  res.bias = BiasProfile(res.n);
  for (int v = 0; v < inst.n; ++v)
    for (int j = 0; j < kk; ++j) {
      const int a = v * kk + j;
      res.bias.set_single(a, inst.bias.single(v));
      for (int w = v; w < inst.n; ++w)
        for (int j2 = 0; j2 < kk; ++j2) {
          const int b = w * kk + j2;
          if (b <= a) continue;
          res.bias.set_pair(a, b, v == w ? Rational(1) : inst.bias.pair(v, w));
        }
    }

  std::vector<int> perm(k);
  for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
    const Constraint& orig = inst.constraints[c];
    const bool transposed = orig.predicate == 1;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Constraint nc;
      nc.predicate = 0;
      nc.phi.resize(k * k);
      nc.signs.resize(k * k);
      for (int i = 0; i < kk; ++i)
        for (int j = 0; j < kk; ++j) {
          const int slot = i * kk + j;
          const int src = transposed ? j : i;
          const int col = transposed ? perm[i] : perm[j];
          nc.phi[slot] = orig.phi[src] * kk + col;
          nc.signs[slot] = orig.signs[src];
        }
      Distribution lifted;
      for (const auto& [bits, prob] : inst.dists[c]) {
        std::uint64_t nb = 0;
        for (int i = 0; i < kk; ++i)
          for (int j = 0; j < kk; ++j)
            if ((bits >> (transposed ? j : i)) & 1U) nb |= std::uint64_t{1} << (i * kk + j);
        lifted.emplace_back(nb, prob);
      }
      res.constraints.push_back(std::move(nc));
      res.dists.push_back(std::move(lifted));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  res.validate();
  return out;
}

GapInstance toy_pair_instance(const LinearForm& first, const LinearForm& second) {
  if (first.arity() != 2 || second.arity() != 2) throw InvalidArgument("toy instance uses two-variable forms");
  GapInstance inst;
  inst.n = 2;
  inst.predicates = {Predicate::from_ltf(first), Predicate::from_ltf(second)};
  inst.constraints = {Constraint{0, {0, 1}, {1, 1}}, Constraint{1, {0, 1}, {1, 1}}};
  inst.bias = BiasProfile(2);
  inst.bias.set_single(0, 1);
  inst.bias.set_single(1, 1);
  inst.bias.set_pair(0, 1, 1);
  inst.dists = {{{0b11, Rational(1)}}, {{0b11, Rational(1)}}};
  inst.validate();
  return inst;
}

}  // namespace gapforge
