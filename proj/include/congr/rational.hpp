#pragma once

// Exact rational scalars on top of GMP. Every quantity in this library is a
// Rational (always in lowest terms, positive denominator) or an integer
// count; nothing is ever rounded.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "congr/errors.hpp"

namespace congr {

using Rational = mpq_class;
using BigInt = mpz_class;

namespace detail {

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_mpz(mpz_srcptr z) noexcept {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) + 0x517cc1b727220a95ULL;
  const mp_size_t n = mpz_size(z);
  const mp_limb_t* limbs = mpz_limbs_read(z);
  for (mp_size_t i = 0; i < n; ++i) {
    h = hash_combine(h, static_cast<std::size_t>(limbs[i]));
  }
  return h;
}

inline mpz_class u128_to_bigint(unsigned __int128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class lo(static_cast<unsigned long>(v & 0xffffffffffffffffULL));
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
  return hi + lo;
}

}  // namespace detail

inline std::size_t hash_value(const BigInt& z) noexcept {
  return detail::hash_mpz(z.get_mpz_t());
}

inline std::size_t hash_value(const Rational& q) noexcept {
  // Canonical form makes componentwise hashing consistent with equality.
  return detail::hash_combine(detail::hash_mpz(mpq_numref(q.get_mpq_t())),
                              detail::hash_mpz(mpq_denref(q.get_mpq_t())));
}

struct RationalHash {
  std::size_t operator()(const Rational& q) const noexcept { return hash_value(q); }
};

inline BigInt bigint_pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
  return r;  // powers of a canonical fraction stay canonical
}

inline BigInt rational_ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
  return r;
}

inline BigInt rational_floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), mpq_numref(q.get_mpq_t()), mpq_denref(q.get_mpq_t()));
  return r;
}

// Canonical serialization: always "num/den", e.g. "0/1", "-3/4".
inline std::string fraction_str(const Rational& q) {
  std::string s = q.get_str();
  if (s.find('/') == std::string::npos) s += "/1";
  return s;
}

// Parses a rational from one of the exact literal forms:
//   "n", "n/d", "n.ddd", "n.dddEk"  (optional leading sign; d > 0).
// Decimal literals are converted exactly, 0.25 -> 1/4. Anything else is a
// ValidationError; floating-point rounding never happens.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ValidationError("not a rational literal: '" + std::string(text) + "'");
  };

  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) return fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    if (s.empty()) return fail();
  }

  const auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::string int_digits, frac_digits, exp_digits;
  bool exp_negative = false;
  std::size_t i = 0;
  while (i < s.size() && is_digit(s[i])) int_digits += s[i++];

  if (i < s.size() && s[i] == '/') {
    ++i;
    std::string den_digits;
    while (i < s.size() && is_digit(s[i])) den_digits += s[i++];
    if (i != s.size() || int_digits.empty() || den_digits.empty()) return fail();
    BigInt num(int_digits, 10), den(den_digits, 10);
    if (sgn(den) == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    if (negative) num = -num;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) frac_digits += s[i++];
    if (int_digits.empty() && frac_digits.empty()) return fail();
  }
  if (int_digits.empty() && frac_digits.empty()) return fail();
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    while (i < s.size() && is_digit(s[i])) exp_digits += s[i++];
    if (exp_digits.empty()) return fail();
  }
  if (i != s.size()) return fail();

  BigInt mantissa((int_digits.empty() ? "0" : int_digits) + frac_digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = -static_cast<long>(frac_digits.size());
  if (!exp_digits.empty()) {
    if (exp_digits.size() > 6) throw ValidationError("exponent out of range in '" + std::string(text) + "'");
    long e = std::stol(exp_digits);
    shift += exp_negative ? -e : e;
  }
  BigInt pow10 = bigint_pow(BigInt(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(mantissa, pow10) : Rational(mantissa * pow10);
  q.canonicalize();
  return q;
}

}  // namespace congr
