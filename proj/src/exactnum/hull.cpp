#include "gapforge/exactnum/hull.hpp"

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

// Phase-one simplex on: sum_j w_j q_j = p, sum_j w_j = 1, w >= 0.
// Columns [0, n) are the points, [n, n + rows) are artificials, last is the right-hand side.
class PhaseOne {
 public:
  PhaseOne(const std::vector<Rational>& p, const std::vector<std::vector<Rational>>& points)
      : n_(points.size()), rows_(p.size() + 1), cols_(n_ + rows_ + 1), tab_(rows_, std::vector<Rational>(cols_)),
        cost_(cols_), basis_(rows_), flip_(rows_, 1) {
    for (std::size_t r = 0; r < rows_; ++r) {
      const bool is_sum_row = r + 1 == rows_;
      Rational rhs = is_sum_row ? Rational(1) : p[r];
      if (rhs < 0) flip_[r] = -1;
      for (std::size_t j = 0; j < n_; ++j) tab_[r][j] = flip_[r] * (is_sum_row ? Rational(1) : points[j][r]);
      tab_[r][n_ + r] = 1;
      tab_[r][cols_ - 1] = flip_[r] * rhs;
      basis_[r] = n_ + r;
      for (std::size_t j = 0; j < n_; ++j) cost_[j] -= tab_[r][j];
      cost_[cols_ - 1] -= tab_[r][cols_ - 1];
    }
  }

  void solve() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j + 1 < cols_; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;
      std::size_t leave = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rational ratio = tab_[r][cols_ - 1] / tab_[r][enter];
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) throw Error("internal: unbounded phase-one problem");
      pivot(leave, enter);
    }
  }

  Rational infeasibility() const { return -cost_[cols_ - 1]; }

  std::vector<Rational> weights() const {
    std::vector<Rational> w(n_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < n_) w[basis_[r]] = tab_[r][cols_ - 1];
    return w;
  }

  // Dual values y_r = 1 - reduced cost of artificial r, mapped back through the row flips.
  std::vector<Rational> farkas() const {
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) y[r] = flip_[r] * (1 - cost_[n_ + r]);
    return y;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / tab_[row][col];
    for (Rational& x : tab_[row])
      if (x != 0) x *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || tab_[r][col] == 0) continue;
      Rational f = tab_[r][col];
      for (std::size_t j = 0; j < cols_; ++j)
        if (tab_[row][j] != 0) tab_[r][j] -= f * tab_[row][j];
    }
    if (cost_[col] != 0) {
      Rational f = cost_[col];
      for (std::size_t j = 0; j < cols_; ++j)
        if (tab_[row][j] != 0) cost_[j] -= f * tab_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t n_, rows_, cols_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
  std::vector<int> flip_;
};

}  // namespace

HullResult hull_member(const std::vector<Rational>& p, const std::vector<std::vector<Rational>>& points) {
  for (const auto& q : points)
    if (q.size() != p.size()) throw DimensionMismatch("hull point dimension differs from query dimension");
  HullResult result;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j] == p) {
      result.member = true;
      result.weights.assign(points.size(), Rational(0));
      result.weights[j] = 1;
      return result;
    }
  }
  if (points.empty()) {
    result.normal.assign(p.size(), Rational(0));
    result.offset = -1;
    return result;
  }
  PhaseOne lp(p, points);
  lp.solve();
  if (lp.infeasibility() == 0) {
    result.member = true;
    result.weights = lp.weights();
  } else {
    std::vector<Rational> y = lp.farkas();
    result.offset = -y.back();
    y.pop_back();
    result.normal = std::move(y);
  }
  if (!certificate_valid(result, p, points)) throw Error("internal: hull certificate failed substitution check");
  return result;
}

bool certificate_valid(const HullResult& result, const std::vector<Rational>& p,
                       const std::vector<std::vector<Rational>>& points) {
  if (result.member) {
    if (!result.normal.empty() || result.weights.size() != points.size()) return false;
    Rational total;
    std::vector<Rational> combo(p.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (result.weights[j] < 0) return false;
      total += result.weights[j];
      for (std::size_t r = 0; r < p.size(); ++r) combo[r] += result.weights[j] * points[j][r];
    }
    return total == 1 && combo == p;
  }
  if (!result.weights.empty() || result.normal.size() != p.size()) return false;
  for (const auto& q : points)
    if (dot(result.normal, q) > result.offset) return false;
  return dot(result.normal, p) > result.offset;
}

}  // namespace gapforge
