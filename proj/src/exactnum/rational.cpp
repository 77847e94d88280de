#include "gapforge/exactnum/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "gapforge/error.hpp"

namespace gapforge {

std::string to_string(const Rational& r) { return r.get_str(); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational: '" + std::string(text) + "'");
    Integer d{std::string(den), 10};
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    result = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot_pos);
    std::string_view frac = body.substr(dot_pos + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw ParseError("malformed decimal: '" + std::string(text) + "'");
    std::string digits = std::string(whole) + std::string(frac);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    result = Rational(Integer(digits, 10), den);
  } else {
    if (!all_digits(body)) throw ParseError("malformed rational: '" + std::string(text) + "'");
    result = Rational(Integer(std::string(body), 10));
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational power_of_two(int exponent) {
  Rational r(1);
  if (exponent >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  }
  return r;
}

Integer dominating_multiplier(const Rational& b, const Rational& a) {
  if (a <= 0) throw InvalidArgument("dominating multiplier needs a positive lower bound");
  Rational ratio = b / a;
  return floor_of(ratio) + 1;
}

Rational dot(const std::vector<Rational>& u, const std::vector<Rational>& v) {
  if (u.size() != v.size()) throw DimensionMismatch("dot product of vectors with different lengths");
  Rational s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const Rational& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

}  // namespace gapforge
