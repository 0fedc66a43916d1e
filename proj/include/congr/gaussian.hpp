#pragma once

// Gaussian rationals: complex numbers with rational real and imaginary part.
// They serve both as points of the plane and as scalars of the complex field;
// all field operations are exact.

#include <cstddef>
#include <string>
#include <utility>

#include "congr/errors.hpp"
#include "congr/rational.hpp"

namespace congr {

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r, long i = 0) : re(r), im(i) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  Rational norm_sq() const { return re * re + im * im; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
  return GaussianRational(a.re + b.re, a.im + b.im);
}

inline GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
  return GaussianRational(a.re - b.re, a.im - b.im);
}

inline GaussianRational operator-(const GaussianRational& a) {
  return GaussianRational(-a.re, -a.im);
}

inline GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

inline GaussianRational operator*(const Rational& s, const GaussianRational& a) {
  return GaussianRational(s * a.re, s * a.im);
}

inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_zero()) throw ValidationError("division by zero Gaussian rational");
  Rational n = b.norm_sq();
  return GaussianRational((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
}

// Lexicographic order (re, then im); the canonical order used everywhere a
// deterministic arrangement of points or group elements is needed.
inline int compare(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c;
  return cmp(a.im, b.im);
}

inline bool lex_less(const GaussianRational& a, const GaussianRational& b) {
  return compare(a, b) < 0;
}

inline std::size_t hash_value(const GaussianRational& g) noexcept {
  return detail::hash_combine(hash_value(g.re), hash_value(g.im));
}

struct GaussianHash {
  std::size_t operator()(const GaussianRational& g) const noexcept { return hash_value(g); }
};

inline std::string to_string(const GaussianRational& g) {
  return "(" + fraction_str(g.re) + ", " + fraction_str(g.im) + ")";
}

// Exact squared Euclidean distance; the canonical congruence-invariant
// representative of |p-q| (lengths themselves are irrational in general).
inline Rational sq_dist(const GaussianRational& p, const GaussianRational& q) {
  Rational dr = p.re - q.re;
  Rational di = p.im - q.im;
  return dr * dr + di * di;
}

}  // namespace congr
