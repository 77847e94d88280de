#include "gapforge/construct/gadget.hpp"

#include <algorithm>
#include <numeric>

#include "gapforge/error.hpp"

namespace gapforge {

namespace {

std::string idx(int a) { return std::to_string(a + 1); }

}  // namespace

std::size_t Gadget::input(int i, int k) const { return static_cast<std::size_t>(i * n + k); }
std::size_t Gadget::output(int i, int k) const { return static_cast<std::size_t>(m * n + i * n + k); }
std::size_t Gadget::indicator(int i, int j) const { return static_cast<std::size_t>(2 * m * n + i * m + j); }
std::size_t Gadget::slack_plus(int i, int j, int k) const {
  return static_cast<std::size_t>(2 * m * n + m * m + (i * m + j) * n + k);
}
std::size_t Gadget::slack_minus(int i, int j, int k) const {
  return static_cast<std::size_t>(2 * m * n + m * m + m * m * n + (i * m + j) * n + k);
}

Gadget build_gadget(const std::vector<IntVector>& vectors, long bound) {
  if (vectors.empty() || vectors.front().empty()) throw InvalidArgument("gadget needs at least one nonempty vector");
  if (bound < 1) throw InvalidArgument("gadget bound must be positive");
  Gadget g;
  g.m = static_cast<int>(vectors.size());
  g.n = static_cast<int>(vectors.front().size());
  g.bound = bound;
  g.inputs = vectors;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != g.n) throw DimensionMismatch("gadget vectors differ in length");
    for (long x : v)
      if (x < -bound || x > bound) throw InvalidArgument("gadget input outside [-B,B]");
  }
  const int m = g.m, n = g.n;
  const std::size_t total = static_cast<std::size_t>(2 * m * n + m * m + 2 * m * m * n);
  g.variables.resize(total);
  g.ranges.resize(total);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) {
      g.variables[g.input(i, k)] = "v" + idx(i) + "_" + idx(k);
      g.ranges[g.input(i, k)] = {-bound, bound};
      g.variables[g.output(i, k)] = "w" + idx(i) + "_" + idx(k);
      g.ranges[g.output(i, k)] = {-bound, bound};
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      g.variables[g.indicator(i, j)] = "p" + idx(i) + "_" + idx(j);
      g.ranges[g.indicator(i, j)] = {0, 1};
      for (int k = 0; k < n; ++k) {
        const std::string tag = idx(i) + "_" + idx(j) + "_" + idx(k);
        g.variables[g.slack_plus(i, j, k)] = "d+" + tag;
        g.variables[g.slack_minus(i, j, k)] = "d-" + tag;
        g.ranges[g.slack_plus(i, j, k)] = {-2 * bound, 2 * bound};
        g.ranges[g.slack_minus(i, j, k)] = {-2 * bound, 2 * bound};
      }
    }

  auto blank = [&] { return LinearForm(std::vector<Rational>(total), 0); };
  for (int i = 0; i < m; ++i) {
    LinearForm row = blank();
    row.constant = -1;
    for (int j = 0; j < m; ++j) row.weights[g.indicator(i, j)] = 1;
    g.equalities.push_back(row);
  }
  for (int j = 0; j < m; ++j) {
    LinearForm col = blank();
    col.constant = -1;
    for (int i = 0; i < m; ++i) col.weights[g.indicator(i, j)] = 1;
    g.equalities.push_back(col);
  }
  const Rational half(1, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) {
        // (d+ - d-)/2 - v_jk + w_ik = 0
        LinearForm diff = blank();
        diff.weights[g.slack_plus(i, j, k)] = half;
        diff.weights[g.slack_minus(i, j, k)] = -half;
        diff.weights[g.input(j, k)] = -1;
        diff.weights[g.output(i, k)] = 1;
        g.equalities.push_back(diff);
        // d+ + d- - 4B p_ij = 0
        LinearForm sum = blank();
        sum.weights[g.slack_plus(i, j, k)] = 1;
        sum.weights[g.slack_minus(i, j, k)] = 1;
        sum.weights[g.indicator(i, j)] = Rational(-4 * bound);
        g.equalities.push_back(sum);
      }
  return g;
}

std::vector<long> gadget_assignment(const Gadget& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.m) throw DimensionMismatch("permutation length differs from m");
  std::vector<long> x(g.variable_count());
  for (int i = 0; i < g.m; ++i)
    for (int k = 0; k < g.n; ++k) {
      x[g.input(i, k)] = g.inputs[i][k];
      x[g.output(i, k)] = g.inputs[perm[i]][k];
    }
  for (int i = 0; i < g.m; ++i)
    for (int j = 0; j < g.m; ++j) {
      const long p = perm[i] == j ? 1 : 0;
      x[g.indicator(i, j)] = p;
      for (int k = 0; k < g.n; ++k) {
        const long diff = g.inputs[j][k] - x[g.output(i, k)];
        x[g.slack_plus(i, j, k)] = 2 * g.bound * p + diff;
        x[g.slack_minus(i, j, k)] = 2 * g.bound * p - diff;
      }
    }
  return x;
}

GadgetVerification verify_gadget(const Gadget& g) {
  const int m = g.m, n = g.n;
  const std::uint64_t width = static_cast<std::uint64_t>(2 * g.bound + 1);
  const int cells = m * n;
  const int ind = m * m;
  if (ind >= 63) throw CapExceeded("gadget search exceeds cap");
  std::uint64_t outputs = 1;
  for (int c = 0; c < cells; ++c) {
    if (outputs > kMaxGadgetSearch / width) throw CapExceeded("gadget search exceeds cap");
    outputs *= width;
  }
  const std::uint64_t indicators = std::uint64_t{1} << ind;
  if (indicators > kMaxGadgetSearch || outputs > kMaxGadgetSearch / indicators)
    throw CapExceeded("gadget search exceeds cap");

  std::vector<ScaledForm> forms;
  for (const auto& f : g.equalities) forms.push_back(ScaledForm::from(f));

  GadgetVerification result;
  std::set<std::vector<int>> perms_found;
  std::vector<long> x(g.variable_count());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) x[g.input(i, k)] = g.inputs[i][k];

  for (std::uint64_t out = 0; out < outputs; ++out) {
    std::uint64_t rest = out;
    for (int c = 0; c < cells; ++c) {
      x[g.output(c / n, c % n)] = static_cast<long>(rest % width) - g.bound;
      rest /= width;
    }
    for (std::uint64_t pm = 0; pm < indicators; ++pm) {
      ++result.settings;
      for (int c = 0; c < ind; ++c) x[g.indicator(c / m, c % m)] = static_cast<long>((pm >> c) & 1U);
      // The two slack equations determine d+ and d- uniquely; other slack values fail them.
      bool in_range = true;
      for (int i = 0; i < m && in_range; ++i)
        for (int j = 0; j < m && in_range; ++j)
          for (int k = 0; k < n; ++k) {
            const long diff = g.inputs[j][k] - x[g.output(i, k)];
            const long p = x[g.indicator(i, j)];
            const long dp = 2 * g.bound * p + diff, dm = 2 * g.bound * p - diff;
            if (dp < -2 * g.bound || dp > 2 * g.bound || dm < -2 * g.bound || dm > 2 * g.bound) {
              in_range = false;
              break;
            }
            x[g.slack_plus(i, j, k)] = dp;
            x[g.slack_minus(i, j, k)] = dm;
          }
      if (!in_range) continue;
      bool satisfied = true;
      for (const auto& f : forms) {
        std::int64_t s = f.constant;
        for (std::size_t v = 0; v < f.weights.size(); ++v) s += f.weights[v] * x[v];
        if (s != 0) {
          satisfied = false;
          break;
        }
      }
      if (!satisfied) continue;
      ++result.satisfying;
      std::vector<long> pattern(x.begin() + static_cast<long>(g.output(0, 0)),
                                x.begin() + static_cast<long>(g.output(0, 0) + static_cast<std::size_t>(cells)));
      result.output_patterns.insert(pattern);
      // Indicators must form a permutation matrix that maps inputs to outputs.
      std::vector<int> perm(m, -1);
      bool is_perm = true;
      for (int i = 0; i < m && is_perm; ++i) {
        int ones = 0;
        for (int j = 0; j < m; ++j)
          if (x[g.indicator(i, j)] == 1) {
            ++ones;
            perm[i] = j;
          }
        if (ones != 1) is_perm = false;
      }
      if (is_perm) {
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < m; ++i) is_perm = is_perm && sorted[i] == i;
        for (int i = 0; i < m && is_perm; ++i)
          for (int k = 0; k < n; ++k) is_perm = is_perm && x[g.output(i, k)] == g.inputs[perm[i]][k];
      }
      if (is_perm)
        perms_found.insert(perm);
      else
        result.permutations_only = false;
    }
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (!perms_found.count(perm)) result.all_permutations_found = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

std::string ChainVar::name() const {
  switch (kind) {
    case Kind::Vector:
      return "X" + std::to_string(level) + "[" + idx(i) + "][" + idx(k) + "]";
    case Kind::Indicator:
      return "P" + std::to_string(level) + "[" + idx(i) + "][" + idx(j) + "]";
    case Kind::SlackPlus:
      return "D" + std::to_string(level) + "+[" + idx(i) + "][" + idx(j) + "][" + idx(k) + "]";
    case Kind::SlackMinus:
      return "D" + std::to_string(level) + "-[" + idx(i) + "][" + idx(j) + "][" + idx(k) + "]";
  }
  return {};
}

GadgetMoments::GadgetMoments(std::vector<IntVector> vectors, long bound, std::vector<Rational> base_mean,
                             std::vector<std::vector<Rational>> base_second)
    : m_(static_cast<int>(vectors.size())),
      n_(vectors.empty() ? 0 : static_cast<int>(vectors.front().size())),
      bound_(bound),
      v_(std::move(vectors)),
      c_(std::move(base_mean)),
      c2_(std::move(base_second)) {
  if (m_ < 3) throw InvalidArgument("gadget moments need m >= 3");
  if (n_ == 0) throw InvalidArgument("gadget vectors are empty");
  for (const auto& v : v_)
    if (static_cast<int>(v.size()) != n_) throw DimensionMismatch("gadget vectors differ in length");
  if (static_cast<int>(c_.size()) != n_ || static_cast<int>(c2_.size()) != n_)
    throw DimensionMismatch("base moments do not match vector length");
  for (const auto& row : c2_)
    if (static_cast<int>(row.size()) != n_) throw DimensionMismatch("base moments do not match vector length");
  a_.assign(n_, Rational(0));
  a2_.assign(n_, std::vector<Rational>(n_));
  for (const auto& v : v_)
    for (int k = 0; k < n_; ++k) {
      a_[k] += v[k];
      for (int l = 0; l < n_; ++l) a2_[k][l] += Rational(v[k] * v[l]);
    }
  for (int k = 0; k < n_; ++k) {
    a_[k] /= m_;
    for (int l = 0; l < n_; ++l) a2_[k][l] /= m_;
  }
}

std::vector<GadgetMoments::Term> GadgetMoments::expand(const ChainVar& v) const {
  if (v.i < 0 || v.i >= m_ || v.j < 0 || v.j >= m_ || v.k < 0 || v.k >= n_) throw InvalidArgument("chain index out of range");
  switch (v.kind) {
    case ChainVar::Kind::Vector:
      if (v.level < 0 || v.level > 3) throw InvalidArgument("vector level must be 0..3");
      return {{1, 0, v.level, v.i, v.k}};
    case ChainVar::Kind::Indicator:
      if (v.level < 1 || v.level > 3) throw InvalidArgument("gadget level must be 1..3");
      return {{1, 1, v.level, v.i, v.j}};
    case ChainVar::Kind::SlackPlus:
    case ChainVar::Kind::SlackMinus: {
      if (v.level < 1 || v.level > 3) throw InvalidArgument("gadget level must be 1..3");
      const int sign = v.kind == ChainVar::Kind::SlackPlus ? 1 : -1;
      // d+ = 2B p_ij + X_{g-1}[j]_k - X_g[i]_k, d- flips the vector terms.
      return {{Rational(2 * bound_), 1, v.level, v.i, v.j},
              {Rational(sign), 0, v.level - 1, v.j, v.k},
              {Rational(-sign), 0, v.level, v.i, v.k}};
    }
  }
  return {};
}

Rational GadgetMoments::last_row_mean(int row, int k) const {
  return row == 0 ? c_[k] : Rational((m_ * a_[k] - c_[k]) / (m_ - 1));
}

Rational GadgetMoments::atom_mean(const Term& t) const {
  if (t.kind == 1) return Rational(1, m_);
  if (t.level == 0) return Rational(v_[t.i][t.j]);
  if (t.level < 3) return a_[t.j];
  return last_row_mean(t.i, t.j);
}

Rational GadgetMoments::atom_pair(const Term& s, const Term& t) const {
  const Rational m(m_);
  // Constants factor out.
  if (s.kind == 0 && s.level == 0) return Rational(v_[s.i][s.j]) * atom_mean(t);
  if (t.kind == 0 && t.level == 0) return Rational(v_[t.i][t.j]) * atom_mean(s);
  if (s.kind == 1 && t.kind == 0) return atom_pair(t, s);

  if (s.kind == 1 && t.kind == 1) {
    if (s.level != t.level) return Rational(1, m_ * m_);
    if (s.i == t.i && s.j == t.j) return Rational(1, m_);
    if (s.i == t.i || s.j == t.j) return 0;
    return Rational(1, m_ * (m_ - 1));
  }

  if (s.kind == 0 && t.kind == 0) {
    if (s.level != t.level) return atom_mean(s) * atom_mean(t);
    const int i = s.i, ii = t.i, k = s.j, l = t.j;
    if (s.level < 3) {
      if (i == ii) return a2_[k][l];
      return (m * a_[k] * a_[l] - a2_[k][l]) / (m - 1);
    }
    if (i == 0 && ii == 0) return c2_[k][l];
    if (i == 0) return (m * a_[l] * c_[k] - c2_[k][l]) / (m - 1);
    if (ii == 0) return (m * a_[k] * c_[l] - c2_[k][l]) / (m - 1);
    if (i == ii) return (m * a2_[k][l] - c2_[k][l]) / (m - 1);
    return (m * m * a_[k] * a_[l] - m * a_[l] * c_[k] - m * a_[k] * c_[l] - m * a2_[k][l] + 2 * c2_[k][l]) /
           ((m - 1) * (m - 2));
  }

  // s is a vector atom X_h[row]_k, t an indicator P_g[i][j].
  const int h = s.level, row = s.i, k = s.j, g = t.level, i = t.i, j = t.j;
  if (g == 1 && h == 1) {
    // P1_ij = 1 forces X1[i] = v_j; other rows take the remaining vectors uniformly.
    const Rational vjk(v_[j][k]);
    if (row == i) return vjk / m;
    return (m * a_[k] - vjk) / (m * (m - 1));
  }
  if (g == 3 && h == 2) {
    // P3_ij = 1 iff X3[i] = X2[j].
    const Rational e = last_row_mean(i, k);
    if (row == j) return e / m;
    return (m * a_[k] - e) / (m * (m - 1));
  }
  return atom_mean(s) / m;
}

Rational GadgetMoments::mean(const ChainVar& v) const {
  Rational total;
  for (const auto& t : expand(v)) total += t.coef * atom_mean(t);
  return total;
}

Rational GadgetMoments::pair(const ChainVar& u, const ChainVar& v) const {
  Rational total;
  const auto eu = expand(u), ev = expand(v);
  for (const auto& s : eu)
    for (const auto& t : ev) total += s.coef * t.coef * atom_pair(s, t);
  return total;
}

std::vector<ChainVar> GadgetMoments::variables() const {
  std::vector<ChainVar> out;
  using K = ChainVar::Kind;
  for (int i = 0; i < m_; ++i)
    for (int k = 0; k < n_; ++k) out.push_back({K::Vector, 0, i, 0, k});
  for (int g = 1; g <= 3; ++g) {
    for (int i = 0; i < m_; ++i)
      for (int k = 0; k < n_; ++k) out.push_back({K::Vector, g, i, 0, k});
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) out.push_back({K::Indicator, g, i, j, 0});
    for (K kind : {K::SlackPlus, K::SlackMinus})
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j)
          for (int k = 0; k < n_; ++k) out.push_back({kind, g, i, j, k});
  }
  return out;
}

std::size_t GadgetMoments::variable_count() const {
  const auto m = static_cast<std::size_t>(m_), n = static_cast<std::size_t>(n_);
  return m * n + 3 * (m * n + m * m + 2 * m * m * n);
}

MomentSpec GadgetMoments::materialize(std::size_t max_variables) const {
  if (variable_count() > max_variables) throw CapExceeded("gadget moment table too large");
  const auto vars = variables();
  MomentSpec spec;
  for (const auto& v : vars) spec.add(v.name(), mean(v), pair(v, v));
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = a + 1; b < vars.size(); ++b) spec.cross[{a, b}] = pair(vars[a], vars[b]);
  return spec;
}

}  // namespace gapforge
