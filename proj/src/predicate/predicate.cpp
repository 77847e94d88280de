#include "gapforge/predicate/predicate.hpp"

#include <bit>
#include <regex>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

void check_arity(int k) {
  if (k < 1 || k > kMaxTableArity)
    throw CapExceeded("predicate arity " + std::to_string(k) + " outside [1, " + std::to_string(kMaxTableArity) + "]");
}

std::vector<std::uint64_t> empty_table(int k) {
  const std::uint64_t points = std::uint64_t{1} << k;
  return std::vector<std::uint64_t>((points + 63) / 64, 0);
}

LinearForm presidential_form(int k, long president_weight) {
  LinearForm f;
  f.weights.assign(static_cast<std::size_t>(k), Rational(1));
  f.weights[0] = president_weight;
  return f;
}

}  // namespace

Predicate Predicate::from_plus_set(int k, const std::vector<std::uint64_t>& plus_assignments) {
  check_arity(k);
  Predicate p;
  p.k_ = k;
  p.table_ = empty_table(k);
  for (std::uint64_t a : plus_assignments) {
    if (a >> k) throw InvalidArgument("assignment " + std::to_string(a) + " exceeds arity");
    p.table_[a / 64] |= std::uint64_t{1} << (a % 64);
  }
  return p;
}

Predicate Predicate::from_ltf(const LinearForm& form) {
  if (form.arity() < 1 || form.arity() > 63) throw InvalidArgument("LTF arity must be in [1, 63]");
  Predicate p;
  p.k_ = static_cast<int>(form.arity());
  p.form_ = form;
  p.scaled_ = ScaledForm::from(form);
  return p;
}

Predicate Predicate::parity(int k) {
  check_arity(k);
  std::vector<std::uint64_t> plus;
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t a = 0; a <= mask; ++a)
    if (std::popcount(~a & mask) % 2 == 0) plus.push_back(a);
  return from_plus_set(k, plus);
}

Predicate Predicate::always_true(int k) {
  check_arity(k);
  std::vector<std::uint64_t> plus;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) plus.push_back(a);
  return from_plus_set(k, plus);
}

Predicate Predicate::monarchy(int k) {
  if (k < 3) throw InvalidArgument("monarchy needs k >= 3");
  return from_ltf(presidential_form(k, k - 2));
}

Predicate Predicate::almost_monarchy(int k) {
  if (k < 5) throw InvalidArgument("almost monarchy needs k >= 5");
  return from_ltf(presidential_form(k, k - 4));
}

Predicate Predicate::glst() {
  // x1 = +1 gives -x2 x4, x1 = -1 gives -x2 x3.
  std::vector<std::uint64_t> plus;
  for (std::uint64_t a = 0; a < 16; ++a) {
    auto x = [a](int i) { return ((a >> i) & 1U) ? 1 : -1; };
    const int v = x(0) == 1 ? -x(1) * x(3) : -x(1) * x(2);
    if (v == 1) plus.push_back(a);
  }
  return from_plus_set(4, plus);
}

Predicate Predicate::named(const std::string& name) {
  static const std::regex pattern(R"((xor|parity-|monarchy-|almost-monarchy-|true-)(\d+))");
  if (name == "glst") return glst();
  std::smatch m;
  if (std::regex_match(name, m, pattern)) {
    const int k = std::stoi(m[2].str());
    const std::string kind = m[1].str();
    if (kind == "xor" || kind == "parity-") return parity(k);
    if (kind == "monarchy-") return monarchy(k);
    if (kind == "almost-monarchy-") return almost_monarchy(k);
    return always_true(k);
  }
  throw ParseError("unknown predicate name '" + name + "'");
}

int Predicate::value(std::uint64_t assignment) const {
  if (!table_.empty()) return ((table_[assignment / 64] >> (assignment % 64)) & 1U) ? 1 : -1;
  const std::int64_t v = scaled_->at_signs(assignment);
  if (v == 0) throw ZeroValue("LTF is zero at assignment " + std::to_string(assignment));
  return v > 0 ? 1 : -1;
}

Predicate Predicate::materialize() const {
  if (materialized()) return *this;
  check_arity(k_);
  Predicate p = *this;
  p.table_ = empty_table(k_);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k_); ++a)
    if (value(a) == 1) p.table_[a / 64] |= std::uint64_t{1} << (a % 64);
  return p;
}

std::vector<std::uint64_t> Predicate::plus_set() const {
  check_arity(k_);
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k_); ++a)
    if (value(a) == 1) out.push_back(a);
  return out;
}

std::uint64_t Predicate::count_satisfying() const {
  if (!table_.empty()) {
    std::uint64_t c = 0;
    for (std::uint64_t w : table_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  return plus_set().size();
}

bool Predicate::operator==(const Predicate& other) const {
  if (k_ != other.k_) return false;
  if (materialized() && other.materialized()) return table_ == other.table_;
  return materialize().table_ == other.materialize().table_;
}

}  // namespace gapforge
