#pragma once

// Exact constructions of the extremal families (lattices, arithmetic
// progressions, rational-rotation orbits, their parallel/concentric
// repetitions) plus seeded random integer controls.
//
// Regular polygons have irrational coordinates, so orbits of the rational
// unit rotation u(t) = ((1-t^2) + 2t*i)/(1+t^2) stand in for them: points on
// a circle closed under a common rotation, with unequal arc spacing. The only
// rational points of finite order on the unit circle are +-1 and +-i, so any
// other u(t) generates arbitrarily many distinct points.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "congr/errors.hpp"
#include "congr/point_set.hpp"

namespace congr {

inline PointSet lattice(std::uint32_t m) {
  if (m < 1) throw ValidationError("lattice: side must be >= 1");
  std::vector<GaussianRational> pts;
  pts.reserve(static_cast<std::size_t>(m) * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      pts.emplace_back(Rational(static_cast<unsigned long>(i)),
                       Rational(static_cast<unsigned long>(j)));
    }
  }
  return PointSet(std::move(pts));
}

inline PointSet ap_line(std::uint32_t n, const GaussianRational& base = GaussianRational(0),
                        const GaussianRational& step = GaussianRational(1)) {
  if (n < 1) throw ValidationError("ap_line: need at least 1 point");
  if (step.is_zero()) throw ValidationError("ap_line: zero step");
  std::vector<GaussianRational> pts;
  pts.reserve(n);
  GaussianRational cur = base;
  for (std::uint32_t j = 0; j < n; ++j) {
    pts.push_back(cur);
    cur = cur + step;
  }
  return PointSet(std::move(pts));
}

inline PointSet parallel_ap_lines(std::uint32_t lines, std::uint32_t n,
                                  const GaussianRational& offset,
                                  const GaussianRational& base = GaussianRational(0),
                                  const GaussianRational& step = GaussianRational(1)) {
  if (lines < 1 || n < 1) throw ValidationError("parallel_ap_lines: sizes must be >= 1");
  if (step.is_zero()) throw ValidationError("parallel_ap_lines: zero step");
  if (lines > 1) {
    if (offset.is_zero()) throw ValidationError("parallel_ap_lines: zero offset");
    if (offset.re * step.im - offset.im * step.re == 0) {
      throw ValidationError("parallel_ap_lines: offset is parallel to the step");
    }
  }
  std::vector<GaussianRational> pts;
  pts.reserve(static_cast<std::size_t>(lines) * n);
  GaussianRational row = base;
  for (std::uint32_t l = 0; l < lines; ++l) {
    GaussianRational cur = row;
    for (std::uint32_t j = 0; j < n; ++j) {
      pts.push_back(cur);
      cur = cur + step;
    }
    row = row + offset;
  }
  return PointSet(std::move(pts));
}

// The rational unit rotation with tangent-half-angle t.
inline GaussianRational unit_rotation(const Rational& t) {
  Rational den = 1 + t * t;
  return GaussianRational((1 - t * t) / den, (2 * t) / den);
}

inline PointSet rotation_orbit(const Rational& t, const GaussianRational& p0,
                               const GaussianRational& center, std::uint32_t n) {
  if (n < 1) throw ValidationError("rotation_orbit: need at least 1 point");
  GaussianRational u = unit_rotation(t);
  const GaussianRational one(1), minus_one(-1), i_unit(Rational(0), Rational(1)),
      minus_i(Rational(0), Rational(-1));
  std::uint32_t order = 0;  // 0 = infinite
  if (u == one) order = 1;
  else if (u == minus_one) order = 2;
  else if (u == i_unit || u == minus_i) order = 4;
  if (order != 0 && n > order) {
    throw ValidationError("rotation_orbit: degenerate rotation of order " +
                          std::to_string(order) + " cannot carry " + std::to_string(n) +
                          " distinct points");
  }
  if (n > 1 && p0 == center) {
    throw ValidationError("rotation_orbit: p0 equals the center");
  }
  GaussianRational w = p0 - center;
  std::vector<GaussianRational> pts;
  pts.reserve(n);
  GaussianRational cur(1);
  for (std::uint32_t j = 0; j < n; ++j) {
    pts.push_back(center + cur * w);
    cur = cur * u;
  }
  return PointSet(std::move(pts));
}

inline PointSet concentric_orbits(const Rational& t, const GaussianRational& p0,
                                  const GaussianRational& center, std::uint32_t n,
                                  const std::vector<Rational>& scales) {
  if (scales.empty()) throw ValidationError("concentric_orbits: need at least one scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (sgn(scales[i]) == 0) throw ValidationError("concentric_orbits: zero scale");
    for (std::size_t j = i + 1; j < scales.size(); ++j) {
      if (scales[i] == scales[j]) throw ValidationError("concentric_orbits: repeated scale");
    }
  }
  std::vector<GaussianRational> pts;
  for (const Rational& s : scales) {
    GaussianRational scaled = center + s * (p0 - center);
    PointSet orbit = rotation_orbit(t, scaled, center, n);
    pts.insert(pts.end(), orbit.begin(), orbit.end());
  }
  return PointSet(std::move(pts));
}

inline PointSet merge(const PointSet& a, const PointSet& b) {
  std::vector<GaussianRational> pts(a.begin(), a.end());
  pts.insert(pts.end(), b.begin(), b.end());
  return PointSet(std::move(pts));
}

// n distinct points with integer coordinates drawn uniformly from
// [0, range]^2. Reproducibility is contractual: the generator is
// std::mt19937_64 seeded as given, coordinates are engine() % (range+1),
// and colliding points are redrawn.
inline PointSet random_integer(std::uint32_t n, std::uint64_t range, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_integer: need at least 1 point");
  const std::uint64_t side = range + 1;
  if (side == 0 || (side < 0x100000000ULL && side * side < n)) {
    throw ValidationError("random_integer: range too small for distinct points");
  }
  std::mt19937_64 engine(seed);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (seen.size() < n) {
    std::uint64_t x = engine() % side;
    std::uint64_t y = engine() % side;
    seen.emplace(x, y);
  }
  std::vector<GaussianRational> pts;
  pts.reserve(n);
  for (const auto& [x, y] : seen) {
    pts.emplace_back(Rational(static_cast<unsigned long>(x)),
                     Rational(static_cast<unsigned long>(y)));
  }
  return PointSet(std::move(pts));
}

}  // namespace congr
