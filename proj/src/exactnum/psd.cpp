#include "gapforge/exactnum/psd.hpp"

#include <algorithm>
#include <optional>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

// Solves A x = rhs for a positive definite A by Gaussian elimination.
std::vector<Rational> solve_definite(std::vector<std::vector<Rational>> a, std::vector<Rational> rhs) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error("singular pivot block in witness reconstruction");
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= a[i][i];
  return rhs;
}

PsdResult failure(const SymMatrix& m, std::vector<Rational> v) {
  PsdResult r;
  r.psd = false;
  r.witness_value = m.quadratic_form(v);
  if (r.witness_value >= 0) throw Error("internal: PSD witness is not negative");
  r.witness = std::move(v);
  return r;
}

// Small witnesses first: a negative diagonal entry or a violated 2x2 minor along +-1 vectors.
std::optional<std::vector<Rational>> simple_witness(const SymMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) < 0) {
      std::vector<Rational> v(n);
      v[i] = 1;
      return v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, i) + m(j, j) - 2 * abs(m(i, j)) < 0) {
        std::vector<Rational> v(n);
        v[i] = 1;
        v[j] = m(i, j) > 0 ? -1 : 1;
        return v;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PsdResult psd_check(const SymMatrix& m) {
  const std::size_t n = m.size();
  if (auto v = simple_witness(m)) return failure(m, *v);

  std::vector<std::vector<Rational>> s = m.dense();
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  std::vector<std::size_t> pivots;

  // Vector u supported on the remaining indices with u^T S u < 0, if any.
  std::vector<Rational> u;
  while (!remaining.empty()) {
    auto negative = std::find_if(remaining.begin(), remaining.end(), [&](std::size_t i) { return s[i][i] < 0; });
    if (negative != remaining.end()) {
      u.assign(n, Rational(0));
      u[*negative] = 1;
      break;
    }
    auto positive = std::find_if(remaining.begin(), remaining.end(), [&](std::size_t i) { return s[i][i] > 0; });
    if (positive == remaining.end()) {
      // Zero pivots: the remaining block must vanish entirely.
      for (std::size_t a = 0; a < remaining.size() && u.empty(); ++a) {
        for (std::size_t b = a + 1; b < remaining.size(); ++b) {
          const Rational& entry = s[remaining[a]][remaining[b]];
          if (entry != 0) {
            u.assign(n, Rational(0));
            u[remaining[a]] = 1;
            u[remaining[b]] = entry > 0 ? -1 : 1;
            break;
          }
        }
      }
      break;
    }
    const std::size_t p = *positive;
    remaining.erase(positive);
    pivots.push_back(p);
    for (std::size_t i : remaining) {
      if (s[i][p] == 0) continue;
      Rational f = s[i][p] / s[p][p];
      for (std::size_t j : remaining) s[i][j] -= f * s[p][j];
    }
  }
  if (u.empty()) return PsdResult{};

  // Lift u to the full space: v_P solves M_PP v_P = -M_PR u.
  std::vector<Rational> v = u;
  if (!pivots.empty()) {
    std::vector<std::vector<Rational>> block(pivots.size(), std::vector<Rational>(pivots.size()));
    std::vector<Rational> rhs(pivots.size());
    for (std::size_t a = 0; a < pivots.size(); ++a) {
      for (std::size_t b = 0; b < pivots.size(); ++b) block[a][b] = m(pivots[a], pivots[b]);
      for (std::size_t j = 0; j < n; ++j)
        if (u[j] != 0) rhs[a] -= m(pivots[a], j) * u[j];
    }
    std::vector<Rational> lifted = solve_definite(std::move(block), std::move(rhs));
    for (std::size_t a = 0; a < pivots.size(); ++a) v[pivots[a]] = lifted[a];
  }
  return failure(m, std::move(v));
}

}  // namespace gapforge
