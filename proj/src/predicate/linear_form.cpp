#include "gapforge/predicate/linear_form.hpp"

#include "gapforge/error.hpp"

namespace gapforge {

LinearForm LinearForm::integral(std::initializer_list<long> w, long c) {
  LinearForm f;
  for (long x : w) f.weights.emplace_back(x);
  f.constant = c;
  return f;
}

Rational LinearForm::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != weights.size()) throw DimensionMismatch("point length differs from form arity");
  Rational s = constant;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

Rational LinearForm::evaluate_signs(std::uint64_t bits) const {
  Rational s = constant;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if ((bits >> i) & 1U) {
      s += weights[i];
    } else {
      s -= weights[i];
    }
  }
  return s;
}

LinearForm LinearForm::scaled(const Rational& factor) const {
  LinearForm f = *this;
  for (Rational& w : f.weights) w *= factor;
  f.constant *= factor;
  return f;
}

LinearForm LinearForm::operator+(const LinearForm& other) const {
  if (other.arity() != arity()) throw DimensionMismatch("adding forms of different arity");
  LinearForm f = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) f.weights[i] += other.weights[i];
  f.constant += other.constant;
  return f;
}

namespace {
int sign_or_throw(const Rational& v, const char* where) {
  if (v == 0) throw ZeroValue(std::string("linear form is zero at ") + where);
  return v > 0 ? 1 : -1;
}
}  // namespace

int eval_ltf(const LinearForm& form, const std::vector<Rational>& x) {
  return sign_or_throw(form.evaluate(x), "the given point");
}

int eval_ltf_signs(const LinearForm& form, std::uint64_t bits) {
  return sign_or_throw(form.evaluate_signs(bits), ("assignment " + std::to_string(bits)).c_str());
}

ScaledForm ScaledForm::from(const LinearForm& form) {
  std::vector<Rational> all = form.weights;
  all.push_back(form.constant);
  const Integer den = common_denominator(all);
  Integer budget = 0;
  ScaledForm out;
  auto convert = [&](const Rational& r) {
    Rational scaled_value = r * den;
    Integer v = scaled_value.get_num();
    budget += abs(v);
    if (budget > Integer("4611686018427387903")) throw CapExceeded("form coefficients too large for 64-bit enumeration");
    return static_cast<std::int64_t>(v.get_si());
  };
  for (const Rational& w : form.weights) out.weights.push_back(convert(w));
  out.constant = convert(form.constant);
  return out;
}

}  // namespace gapforge
