#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/predicate/linear_form.hpp"

namespace gapforge {

constexpr int kMaxTableArity = 24;

// Boolean predicate on {-1,1}^k. Assignment bit i is (x_{i+1} + 1) / 2.
// Either a materialized truth table (bitmask of the +1 set) or a lazily evaluated LTF.
class Predicate {
 public:
  static Predicate from_plus_set(int k, const std::vector<std::uint64_t>& plus_assignments);
  static Predicate from_ltf(const LinearForm& form);  // lazy
  static Predicate parity(int k);
  static Predicate always_true(int k);
  static Predicate monarchy(int k);
  static Predicate almost_monarchy(int k);
  static Predicate glst();
  // "xor3", "parity-5", "monarchy-7", "almost-monarchy-9", "glst", "true-2".
  static Predicate named(const std::string& name);

  int arity() const { return k_; }
  int value(std::uint64_t assignment) const;
  bool satisfied(std::uint64_t assignment) const { return value(assignment) == 1; }

  const std::optional<LinearForm>& form() const { return form_; }
  bool materialized() const { return !table_.empty(); }
  Predicate materialize() const;
  std::vector<std::uint64_t> plus_set() const;
  std::uint64_t count_satisfying() const;
  // Same arity and same truth values.
  bool operator==(const Predicate& other) const;

 private:
  int k_ = 0;
  std::vector<std::uint64_t> table_;
  std::optional<LinearForm> form_;
  std::optional<ScaledForm> scaled_;
};

}  // namespace gapforge
