#include "gapforge/construct/moments.hpp"

#include <algorithm>

#include "gapforge/error.hpp"

namespace gapforge {

std::size_t MomentSpec::add(std::string name, Rational m, Rational sq) {
  names.push_back(std::move(name));
  mean.push_back(std::move(m));
  square.push_back(std::move(sq));
  return names.size() - 1;
}

void MomentSpec::set_cross(std::size_t i, std::size_t j, Rational value) {
  if (i == j || i >= size() || j >= size()) throw InvalidArgument("bad moment pair");
  cross[std::minmax(i, j)] = std::move(value);
}

Rational MomentSpec::cross_at(std::size_t i, std::size_t j) const {
  if (i == j) return square.at(i);
  auto it = cross.find(std::minmax(i, j));
  return it == cross.end() ? Rational(mean.at(i) * mean.at(j)) : it->second;
}

std::size_t MomentSpec::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidArgument("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<std::string> MomentSpec::realizability_issues(bool sign_valued) const {
  std::vector<std::string> issues;
  std::vector<Rational> var(size());
  for (std::size_t i = 0; i < size(); ++i) {
    var[i] = square[i] - mean[i] * mean[i];
    if (var[i] < 0) issues.push_back(names[i] + ": second moment below squared mean");
    if (sign_valued && (abs(mean[i]) > 1 || square[i] != 1)) issues.push_back(names[i] + ": not a +-1 moment");
  }
  for (const auto& [key, value] : cross) {
    const auto [i, j] = key;
    const Rational cov = value - mean[i] * mean[j];
    if (cov * cov > var[i] * var[j]) issues.push_back(names[i] + "," + names[j] + ": covariance exceeds Cauchy-Schwarz bound");
    if (sign_valued && abs(value) > 1) issues.push_back(names[i] + "," + names[j] + ": pair moment outside [-1,1]");
  }
  return issues;
}

}  // namespace gapforge
