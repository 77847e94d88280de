#include "gapforge/construct/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gapforge/error.hpp"

namespace gapforge {

namespace {

std::vector<IntVector> permutations_of(IntVector v) {
  std::vector<IntVector> out;
  std::sort(v.begin(), v.end());
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Cyclic relabelling that sends variable i to i + shift (mod 4).
IntVector rotate(const IntVector& v, int shift) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[(i + static_cast<std::size_t>(shift)) % v.size()] = v[i];
  return out;
}

std::vector<Rational> as_rationals(const IntVector& v) { return {v.begin(), v.end()}; }

}  // namespace

LinearForm core_form(int a) {
  const Rational tilt = parse_rational("1.6") / 299;
  std::vector<Rational> w(4);
  w[static_cast<std::size_t>(a % 4)] = 1;
  w[static_cast<std::size_t>((a + 1) % 4)] = -tilt;
  w[static_cast<std::size_t>((a + 2) % 4)] = -tilt;
  return LinearForm(w, parse_rational("1.5"));
}

Core core_instance() {
  Core core;
  for (int a = 0; a < 4; ++a) core.forms.push_back(core_form(a));
  std::set<IntVector> all;
  for (const IntVector& base : {IntVector{299, 0, 0, 0}, IntVector{-1, -1, -7, -7}, IntVector{64, -1, -2, -2}})
    for (const auto& v : permutations_of(base)) all.insert(v);
  core.vectors.assign(all.begin(), all.end());
  core.mean = 0;
  core.square = make_rational(1345500, 4500);
  core.square.canonicalize();
  core.cross = 0;

  const std::vector<std::pair<IntVector, Rational>> first = {
      {{299, 0, 0, 0}, make_rational(15, 4500)},     {{-1, -1, -7, -7}, make_rational(1196, 4500)},
      {{-1, -7, -1, -7}, make_rational(1196, 4500)}, {{-1, -7, -7, -1}, make_rational(1196, 4500)},
      {{-1, 64, -2, -2}, make_rational(299, 4500)},  {{-1, -2, 64, -2}, make_rational(299, 4500)},
      {{-1, -2, -2, 64}, make_rational(299, 4500)}};
  for (int a = 0; a < 4; ++a) {
    std::vector<Rational> dist(core.vectors.size());
    for (const auto& [v, p] : first) {
      const auto it = std::find(core.vectors.begin(), core.vectors.end(), rotate(v, a));
      Rational q = p;
      q.canonicalize();
      dist[static_cast<std::size_t>(it - core.vectors.begin())] = q;
    }
    core.dists.push_back(dist);
  }
  return core;
}

CoreReport verify_core(const Core& core) {
  CoreReport r;
  const std::size_t forms = core.forms.size();
  for (const auto& v : core.vectors) {
    std::size_t positive = 0;
    bool zero = false;
    for (const auto& f : core.forms) {
      const Rational val = f.evaluate(as_rationals(v));
      zero = zero || val == 0;
      positive += val > 0 ? 1 : 0;
    }
    if (zero || 2 * positive != forms) {
      ++r.split_failure_count;
      if (!r.split_failure) r.split_failure = v;
    }
  }
  r.split_ok = r.split_failure_count == 0;

  const int n = core.arity();
  for (std::size_t a = 0; a < core.dists.size() && a < forms; ++a) {
    const auto& dist = core.dists[a];
    Rational total;
    std::vector<Rational> mean(static_cast<std::size_t>(n));
    std::vector<std::vector<Rational>> second(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (std::size_t s = 0; s < core.vectors.size(); ++s) {
      const Rational& p = dist[s];
      if (p == 0) continue;
      const IntVector& v = core.vectors[s];
      total += p;
      if (core.forms[a].evaluate(as_rationals(v)) <= 0 && !r.support_failure)
        r.support_failure = std::make_pair(static_cast<int>(a), v);
      for (int i = 0; i < n; ++i) {
        mean[static_cast<std::size_t>(i)] += p * v[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j)
          second[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
              p * (v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
      }
    }
    auto fail = [&](const std::string& what, const Rational& got, const Rational& want) {
      if (got != want && !r.moment_failure)
        r.moment_failure = "D_" + std::to_string(a + 1) + " " + what + " = " + to_string(got) + ", expected " + to_string(want);
    };
    fail("total probability", total, 1);
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      fail("E[v_" + std::to_string(i + 1) + "]", mean[ii], core.mean);
      fail("E[v_" + std::to_string(i + 1) + "^2]", second[ii][ii], core.square);
      for (int j = i + 1; j < n; ++j)
        fail("E[v_" + std::to_string(i + 1) + " v_" + std::to_string(j + 1) + "]", second[ii][static_cast<std::size_t>(j)],
             core.cross);
    }
  }
  if (core.dists.size() != forms && !r.moment_failure) r.moment_failure = "one distribution per form required";
  r.support_ok = !r.support_failure;
  r.moments_ok = !r.moment_failure;
  return r;
}

CoreParameters solve_core_parameters(const Rational& a, const Rational& c, const Rational& b) {
  if (a <= 0 || b <= 0 || c <= 0) throw NoSolution("parameters must be positive");
  // (2b + a) c (2d - c) = b (b + 2a) (d - 2c), linear in d.
  const Rational lead = 2 * c * (2 * b + a) - b * (b + 2 * a);
  if (lead == 0) throw NoSolution("ratio condition is degenerate for these parameters");
  CoreParameters p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.d = (c * c * (2 * b + a) - 2 * c * b * (b + 2 * a)) / lead;
  if (p.d - 2 * c <= 0) throw NoSolution("d = " + to_string(p.d) + " does not exceed 2c");
  // Work with p1 = 1, p2 = ratio, then normalize.
  const Rational ratio = (2 * b + a) / (p.d - 2 * c);
  const Rational sum12 = 1 + ratio;
  const Rational rhs = (2 * b * b + a * a) + (2 * c * c + p.d * p.d) * ratio - 3 * a * a * sum12;
  p.e = rhs / (3 * a * sum12);
  if (p.e <= 0) throw NoSolution("no positive e for these parameters");
  const Rational p3 = 3 * a * sum12 / p.e;
  const Rational scale = 1 / (3 * sum12 + p3);
  p.p1 = scale;
  p.p2 = ratio * scale;
  p.p3 = p3 * scale;
  p.variance = 3 * a * a * (p.p1 + p.p2) + p.e * p.e * p.p3;
  return p;
}

std::vector<Rational> core_parameter_residuals(const CoreParameters& p) {
  const Rational &a = p.a, &b = p.b, &c = p.c, &d = p.d, &e = p.e;
  return {
      -3 * a * p.p1 - 3 * a * p.p2 + e * p.p3,
      -(2 * b + a) * p.p1 + (d - 2 * c) * p.p2,
      a * (2 * b + a) * p.p1 - a * (d - 2 * c) * p.p2,
      (b * b + 2 * a * b) * p.p1 + (c * c - 2 * c * d) * p.p2,
      3 * a * a * p.p1 + 3 * a * a * p.p2 + e * e * p.p3 - ((2 * b * b + a * a) * p.p1 + (2 * c * c + d * d) * p.p2),
      3 * p.p1 + 3 * p.p2 + p.p3 - 1,
  };
}

}  // namespace gapforge
