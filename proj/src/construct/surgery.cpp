#include "gapforge/construct/surgery.hpp"

#include <algorithm>
#include <limits>

#include "gapforge/error.hpp"

namespace gapforge {

Domain Domain::signs(int k) {
  Domain d;
  d.values.assign(static_cast<std::size_t>(k), {Rational(-1), Rational(1)});
  return d;
}

Domain Domain::box(const std::vector<std::pair<long, long>>& ranges) {
  Domain d;
  for (const auto& [lo, hi] : ranges) {
    if (lo > hi) throw InvalidArgument("empty range");
    std::vector<Rational> vals;
    for (long v = lo; v <= hi; ++v) vals.emplace_back(v);
    d.values.push_back(std::move(vals));
  }
  return d;
}

std::uint64_t Domain::size() const {
  std::uint64_t total = 1;
  for (const auto& v : values) {
    if (v.empty()) return 0;
    if (total > std::numeric_limits<std::uint64_t>::max() / v.size()) return std::numeric_limits<std::uint64_t>::max();
    total *= v.size();
  }
  return total;
}

std::vector<Rational> Domain::point(std::uint64_t index) const {
  std::vector<Rational> x;
  x.reserve(values.size());
  for (const auto& v : values) {
    x.push_back(v[index % v.size()]);
    index /= v.size();
  }
  return x;
}

ZSet zset(const LinearForm& form, const Domain& domain) {
  if (form.arity() != domain.arity()) throw DimensionMismatch("form and domain arity differ");
  return ZSet{form, domain};
}

std::vector<std::vector<Rational>> ZSet::members() const {
  const std::uint64_t n = domain.size();
  if (n > kMaxDomainEnumeration) throw CapExceeded("domain too large to enumerate");
  std::vector<std::vector<Rational>> out;
  for (std::uint64_t i = 0; i < n; ++i) {
    auto x = domain.point(i);
    if (contains(x)) out.push_back(std::move(x));
  }
  return out;
}

namespace {

std::pair<Rational, Rational> range_over(const LinearForm& form, const Domain& domain) {
  if (form.arity() != domain.arity()) throw DimensionMismatch("form and domain arity differ");
  Rational lo = form.constant, hi = form.constant;
  for (std::size_t i = 0; i < form.arity(); ++i) {
    const auto& vals = domain.values[i];
    if (vals.empty()) throw InvalidArgument("empty variable domain");
    Rational mn = form.weights[i] * vals.front(), mx = mn;
    for (const auto& v : vals) {
      const Rational t = form.weights[i] * v;
      mn = std::min(mn, t);
      mx = std::max(mx, t);
    }
    lo += mn;
    hi += mx;
  }
  return {lo, hi};
}

}  // namespace

Rational max_abs_over(const LinearForm& form, const Domain& domain) {
  const auto [lo, hi] = range_over(form, domain);
  return std::max(abs(lo), abs(hi));
}

MinNonzero min_nonzero_abs_over(const LinearForm& form, const Domain& domain) {
  const auto [lo, hi] = range_over(form, domain);
  if (lo == 0 && hi == 0) throw InvalidArgument("constraint form vanishes on the whole domain");
  const std::uint64_t n = domain.size();
  if (n <= kMaxDomainEnumeration) {
    MinNonzero out;
    bool found = false;
    for (std::uint64_t i = 0; i < n; ++i) {
      const Rational v = abs(form.evaluate(domain.point(i)));
      if (v != 0 && (!found || v < out.value)) {
        out.value = v;
        found = true;
      }
    }
    return out;
  }
  std::vector<Rational> all = form.weights;
  all.push_back(form.constant);
  for (const auto& vals : domain.values) all.insert(all.end(), vals.begin(), vals.end());
  return MinNonzero{Rational(1) / Rational(common_denominator(all)), false};
}

EnforceResult enforce(const LinearForm& constraint, const LinearForm& remainder, const Domain& domain) {
  if (constraint.arity() != remainder.arity()) throw DimensionMismatch("forms have different arity");
  EnforceResult r;
  const MinNonzero a = min_nonzero_abs_over(constraint, domain);
  r.min_constraint = a.value;
  r.min_exact = a.exact;
  r.max_remainder = max_abs_over(remainder, domain);
  r.multiplier = dominating_multiplier(r.max_remainder, r.min_constraint);
  const Rational mult(r.multiplier);
  r.plus = constraint.scaled(mult) + remainder;
  r.minus = constraint.scaled(-mult) + remainder;
  return r;
}

LinearForm conjoin(const LinearForm& first, const LinearForm& second, const Domain& domain) {
  const MinNonzero a = min_nonzero_abs_over(first, domain);
  const Rational b = max_abs_over(second, domain);
  return first.scaled(Rational(dominating_multiplier(b, a.value))) + second;
}

}  // namespace gapforge
