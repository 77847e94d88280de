#include "gapforge/predicate/fourier.hpp"

#include <bit>
#include <regex>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

void walsh_hadamard(std::vector<std::int64_t>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const std::int64_t a = v[j];
        const std::int64_t b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace

FourierTable::FourierTable(int k, std::vector<std::int64_t> numerators) : k_(k), num_(std::move(numerators)) {
  if (num_.size() != (std::size_t{1} << k)) throw DimensionMismatch("Fourier table size must be 2^k");
}

Rational FourierTable::coefficient(std::uint64_t subset) const {
  if (subset >= num_.size()) throw InvalidArgument("subset outside the predicate's variables");
  Rational r(num_[subset]);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k_));
  return r;
}

FourierTable fourier_transform(const Predicate& pred) {
  const int k = pred.arity();
  if (k > kMaxTableArity) throw CapExceeded("Fourier transform arity cap exceeded");
  std::vector<std::int64_t> v(std::size_t{1} << k);
  for (std::uint64_t a = 0; a < v.size(); ++a) v[a] = pred.value(a);
  walsh_hadamard(v);
  // The transform pairs bit value 1 with -1; our convention pairs it with +1.
  for (std::uint64_t s = 0; s < v.size(); ++s)
    if (std::popcount(s) % 2 == 1) v[s] = -v[s];
  return FourierTable(k, std::move(v));
}

std::vector<int> inverse_transform(const FourierTable& table) {
  std::vector<std::int64_t> v(table.size());
  for (std::uint64_t s = 0; s < v.size(); ++s) v[s] = std::popcount(s) % 2 == 1 ? -table.numerator(s) : table.numerator(s);
  walsh_hadamard(v);
  std::vector<int> out(v.size());
  const std::int64_t scale = static_cast<std::int64_t>(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (v[a] % scale != 0) throw Error("inverse transform produced a non-integer value");
    out[a] = static_cast<int>(v[a] / scale);
  }
  return out;
}

Rational random_sat_prob(const FourierTable& table) { return (table.coefficient(0) + 1) / 2; }

CoefficientClass CoefficientClass::parse(const std::string& text) {
  static const std::regex citizens_only(R"((\d*)C)");
  CoefficientClass c;
  std::string rest = text;
  if (text == "P") {
    c.president = true;
    return c;
  }
  if (text.rfind("P+", 0) == 0) {
    c.president = true;
    rest = text.substr(2);
  }
  std::smatch m;
  if (!std::regex_match(rest, m, citizens_only)) throw ParseError("malformed coefficient class '" + text + "'");
  c.citizens = m[1].str().empty() ? 1 : std::stoi(m[1].str());
  return c;
}

std::string CoefficientClass::name() const {
  std::string s = president ? "P" : "";
  if (citizens > 0) {
    if (president) s += "+";
    s += (citizens == 1 ? "" : std::to_string(citizens)) + "C";
  }
  return s;
}

std::uint64_t CoefficientClass::subset() const {
  std::uint64_t s = president ? 1 : 0;
  for (int i = 0; i < citizens; ++i) s |= std::uint64_t{1} << (i + 1);
  return s;
}

Rational fourier_closed_form(int k, const CoefficientClass& cls) {
  if (k < 5) throw InvalidArgument("closed forms need k >= 5");
  if (cls.citizens < 0 || cls.citizens > k - 1) throw InvalidArgument("citizen count outside [0, k-1]");
  const Rational scale = power_of_two(2 - k);
  const int a = cls.citizens;
  if (cls.president && a == 0) return 1 - k * scale;
  if (cls.president && a >= 2 && a % 2 == 0) return (2 * a - k) * scale;
  if (!cls.president && a % 2 == 1) return (k - 2 * a) * scale;
  throw InvalidArgument("coefficient class '" + cls.name() + "' has no closed form (invalid parity)");
}

bool check_perfectly_balanced(const LinearForm& form) {
  const std::size_t k = form.arity();
  if (k < 1 || k > 30) throw CapExceeded("perfect-balance check supports arity in [1, 30]");
  const ScaledForm scaled = ScaledForm::from(form);
  std::vector<std::int64_t> net(k + 1, 0);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << k); ++a) {
    const std::int64_t v = scaled.at_signs(a);
    if (v == 0) throw ZeroValue("linear form is zero at assignment " + std::to_string(a));
    net[static_cast<std::size_t>(std::popcount(a))] += v > 0 ? 1 : -1;
  }
  for (std::size_t j = 1; j < k; ++j)
    if (net[j] != 0) return false;
  return true;
}

}  // namespace gapforge
