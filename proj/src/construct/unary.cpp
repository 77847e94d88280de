#include "gapforge/construct/unary.hpp"

#include "gapforge/error.hpp"

namespace gapforge {

UnaryMoments::UnaryMoments(std::vector<IntegerVarSpec> specs, MomentSpec moments, UnaryFormulas formulas)
    : specs_(std::move(specs)), moments_(std::move(moments)), formulas_(formulas) {
  if (moments_.size() != specs_.size()) throw DimensionMismatch("one moment entry per integer variable required");
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto& s = specs_[i];
    if (s.low >= s.high) throw InvalidArgument(s.name + ": empty range");
    if (moments_.mean[i] < s.low || moments_.mean[i] > s.high) throw InvalidArgument(s.name + ": mean outside range");
  }
}

Rational UnaryMoments::digit_mean(std::size_t i) const {
  const auto& s = specs_.at(i);
  const Rational& c = moments_.mean[i];
  if (formulas_ == UnaryFormulas::Printed) return (2 * c - s.high + s.low) / s.digits();
  return (2 * c - s.low - s.high) / s.digits();
}

Rational UnaryMoments::same_pair(std::size_t i) const {
  const auto& s = specs_.at(i);
  const long len = s.digits();
  if (len < 2) throw InvalidArgument(s.name + ": fewer than two digits");
  const Rational& c = moments_.mean[i];
  const Rational& cc = moments_.square[i];
  const Rational sum(s.low + s.high);
  const Rational denom(len * (len - 1));
  if (formulas_ == UnaryFormulas::Printed)
    return (2 * cc - 2 * c - sum * sum / 2 + sum - make_rational(len, 2)) / denom;
  return (4 * cc - 4 * sum * c + sum * sum - len) / denom;
}

Rational UnaryMoments::cross_pair(std::size_t i, std::size_t j) const {
  if (i == j) throw InvalidArgument("cross pair needs distinct variables");
  const auto& si = specs_.at(i);
  const auto& sj = specs_.at(j);
  const Rational& ci = moments_.mean[i];
  const Rational& cj = moments_.mean[j];
  const Rational cij = moments_.cross_at(i, j);
  const Rational sum_i(si.low + si.high), sum_j(sj.low + sj.high);
  const Rational denom(si.digits() * sj.digits());
  if (formulas_ == UnaryFormulas::Printed) {
    const Rational mixed(sj.high + si.low);
    return (4 * cij - 2 * sum_i * cj - 2 * sum_j * ci + sum_i * mixed) / denom;
  }
  return (4 * cij - 2 * sum_i * cj - 2 * sum_j * ci + sum_i * sum_j) / denom;
}

std::size_t UnaryMoments::digit_count() const {
  std::size_t total = 0;
  for (const auto& s : specs_) total += static_cast<std::size_t>(s.digits());
  return total;
}

MomentSpec unary_encode(const std::vector<IntegerVarSpec>& specs, const MomentSpec& moments, UnaryFormulas formulas) {
  const UnaryMoments um(specs, moments, formulas);
  if (um.digit_count() + 1 > kMaxUnaryMaterialize) throw CapExceeded("unary table too large");
  auto check = [](const Rational& r, const std::string& what) {
    if (abs(r) > 1) throw InvalidArgument(what + ": digit moment outside [-1,1]");
  };
  MomentSpec out;
  const std::size_t one = out.add("x_one", 1, 1);
  std::vector<std::vector<std::size_t>> slots(specs.size());
  std::vector<Rational> means(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    means[i] = um.digit_mean(i);
    check(means[i], specs[i].name);
    for (long k = 0; k < specs[i].digits(); ++k) {
      const auto s = out.add("y" + specs[i].name + "_" + std::to_string(k + 1), means[i], 1);
      out.set_cross(one, s, means[i]);
      slots[i].push_back(s);
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (slots[i].size() >= 2) {
      const Rational same = um.same_pair(i);
      check(same, specs[i].name);
      for (std::size_t a = 0; a < slots[i].size(); ++a)
        for (std::size_t b = a + 1; b < slots[i].size(); ++b) out.set_cross(slots[i][a], slots[i][b], same);
    }
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      const Rational cross = um.cross_pair(i, j);
      check(cross, specs[i].name + "," + specs[j].name);
      for (auto a : slots[i])
        for (auto b : slots[j]) out.set_cross(a, b, cross);
    }
  }
  return out;
}

}  // namespace gapforge
