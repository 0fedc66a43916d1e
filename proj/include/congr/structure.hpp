#pragma once

// Geometric structure extraction: circles carried by rigid torus cosets, and
// families of parallel rich lines found by direct direction search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "congr/cosets.hpp"
#include "congr/detail/interner.hpp"
#include "congr/errors.hpp"
#include "congr/point_set.hpp"

namespace congr {

struct Circle {
  GaussianRational center;
  Rational radius_sq;

  bool contains(const GaussianRational& x) const { return sq_dist(x, center) == radius_sq; }
};

// The unique pure translation in the coset theta * (T(z) /\ SE2): composing
// theta with the rotation by 1/theta.a about z gives first coordinate 1, and
// no other member is unipotent.
inline AffineElement unique_translation(const RigidMotion& theta, const GaussianRational& z) {
  if (!is_rigid(theta)) throw ValidationError("unique_translation: representative is not rigid");
  return AffineElement(GaussianRational(1), z * (theta.a - GaussianRational(1)) + theta.b);
}

// The orbit of p under theta * (T(z) /\ SE2) is the circle centred at the
// image of z with squared radius sq_dist(p, z).
inline Circle orbit_circle(const RigidMotion& theta, const GaussianRational& z,
                           const GaussianRational& p) {
  AffineElement translation = unique_translation(theta, z);
  return Circle{act(translation, z), sq_dist(p, z)};
}

struct CircleExtraction {
  Circle circle;
  GaussianRational pivot;                 // the max-out-degree point
  std::uint64_t pivot_out_degree = 0;
  std::uint64_t edge_count = 0;
  std::vector<GaussianRational> hits;     // P on the circle, canonical order
};

// Builds the digraph p -> q over P with an edge whenever some coset member
// maps p to q, picks the point of maximum out-degree (canonical-least on
// ties) and returns the orbit circle through its images together with every
// point of P on it.
inline CircleExtraction extract_circle(const TorusCoset& coset,
                                       std::span<const RigidMotion> S_sorted,
                                       const PointSet& P) {
  RigidMotion theta = coset_rep_in_SE2(coset, S_sorted);
  PointIndex index(P);
  const std::size_t n = P.size();
  std::vector<std::uint64_t> out_degree(n, 0);
  std::unordered_set<std::uint64_t> edges;
  for (const AffineElement& m : coset.members) {
    for (std::uint32_t i = 0; i < n; ++i) {
      auto target = index.find(act(m, P[i]));
      if (!target) continue;
      if (edges.insert((static_cast<std::uint64_t>(i) << 32) | *target).second) ++out_degree[i];
    }
  }
  if (edges.empty()) throw ValidationError("extract_circle: no edges");

  std::uint32_t pivot = 0;
  for (std::uint32_t i = 1; i < n; ++i) {
    if (out_degree[i] > out_degree[pivot]) pivot = i;  // ties keep the lex-least point
  }

  CircleExtraction out;
  out.circle = orbit_circle(theta, coset.z, P[pivot]);
  out.pivot = P[pivot];
  out.pivot_out_degree = out_degree[pivot];
  out.edge_count = edges.size();
  for (const GaussianRational& p : P) {
    if (out.circle.contains(p)) out.hits.push_back(p);
  }
  return out;
}

// Primitive integer direction vector with positive leading coordinate.
inline GaussianRational canonical_direction(const GaussianRational& d) {
  if (d.is_zero()) throw ValidationError("canonical_direction: zero vector");
  BigInt lcm(1);
  mpz_lcm(lcm.get_mpz_t(), mpq_denref(d.re.get_mpq_t()), mpq_denref(d.im.get_mpq_t()));
  BigInt ix = BigInt(mpq_numref(d.re.get_mpq_t())) * (lcm / BigInt(mpq_denref(d.re.get_mpq_t())));
  BigInt iy = BigInt(mpq_numref(d.im.get_mpq_t())) * (lcm / BigInt(mpq_denref(d.im.get_mpq_t())));
  BigInt g;
  mpz_gcd(g.get_mpz_t(), ix.get_mpz_t(), iy.get_mpz_t());
  ix /= g;
  iy /= g;
  if (sgn(ix) < 0 || (sgn(ix) == 0 && sgn(iy) < 0)) {
    ix = -ix;
    iy = -iy;
  }
  return GaussianRational(Rational(ix), Rational(iy));
}

struct LineFamily {
  struct Line {
    Rational offset;  // cross(p, direction), constant along the line
    std::vector<GaussianRational> points;
  };

  GaussianRational direction;             // canonical primitive vector
  std::vector<Line> lines;                // occupancy desc, then offset asc
  std::vector<GaussianRational> residual; // canonical order
  std::uint64_t covered = 0;
  std::uint64_t top_occupancy = 0;
  bool majority_covered = false;          // residual < |P| / 2

  std::uint64_t line_count() const { return lines.size(); }
};

// log |l1 /\ P| / log |P|; the only floating-point value in any report.
inline double sigma_emp(std::uint64_t top_occupancy, std::uint64_t n) {
  if (top_occupancy < 1 || n < 2) return 0.0;
  return std::log(static_cast<double>(top_occupancy)) / std::log(static_cast<double>(n));
}

// Scans candidate directions (canonicalized pairwise differences), keeps per
// direction the lines of occupancy within factor c3 of that direction's top
// line (never below 2), and returns the direction covering the most points.
// Ties prefer larger top occupancy, then the canonically least direction.
inline LineFamily parallel_line_cover(const PointSet& P, const Rational& c3) {
  if (P.size() < 2) throw ValidationError("parallel_line_cover: need at least 2 points");
  if (c3 < 1) throw ValidationError("parallel_line_cover: c3 must be >= 1");
  const std::size_t n = P.size();

  detail::Interner<GaussianRational, GaussianHash> directions;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      directions.intern(canonical_direction(P[j] - P[i]));
    }
  }

  struct Candidate {
    std::uint64_t covered = 0;
    std::uint64_t top = 0;
    std::uint32_t dir_id = 0;
    bool valid = false;
  } best;

  std::vector<std::uint32_t> dir_ids(directions.size());
  for (std::uint32_t id = 0; id < directions.size(); ++id) dir_ids[id] = id;
  std::sort(dir_ids.begin(), dir_ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    return lex_less(directions.value(a), directions.value(b));
  });

  std::unordered_map<Rational, std::uint64_t, RationalHash> occupancy;
  for (std::uint32_t dir_id : dir_ids) {
    const GaussianRational& dir = directions.value(dir_id);
    occupancy.clear();
    for (const GaussianRational& p : P) {
      ++occupancy[p.re * dir.im - p.im * dir.re];
    }
    std::uint64_t top = 0;
    for (const auto& [offset, count] : occupancy) top = std::max(top, count);
    std::uint64_t covered = 0;
    for (const auto& [offset, count] : occupancy) {
      if (count >= 2 && Rational(count) * c3 >= Rational(top)) covered += count;
    }
    if (!best.valid || covered > best.covered ||
        (covered == best.covered && top > best.top)) {
      best = Candidate{covered, top, dir_id, true};
    }
  }

  LineFamily family;
  family.direction = directions.value(best.dir_id);
  family.top_occupancy = best.top;
  family.covered = best.covered;

  std::unordered_map<Rational, std::vector<GaussianRational>, RationalHash> groups;
  for (const GaussianRational& p : P) {
    groups[p.re * family.direction.im - p.im * family.direction.re].push_back(p);
  }
  for (auto& [offset, pts] : groups) {
    if (pts.size() >= 2 && Rational(pts.size()) * c3 >= Rational(best.top)) {
      family.lines.push_back(LineFamily::Line{offset, std::move(pts)});
    } else {
      for (GaussianRational& p : pts) family.residual.push_back(std::move(p));
    }
  }
  std::sort(family.lines.begin(), family.lines.end(),
            [](const LineFamily::Line& a, const LineFamily::Line& b) {
              if (a.points.size() != b.points.size()) return a.points.size() > b.points.size();
              return a.offset < b.offset;
            });
  std::sort(family.residual.begin(), family.residual.end(),
            [](const GaussianRational& x, const GaussianRational& y) { return lex_less(x, y); });
  family.majority_covered = 2 * family.residual.size() < n;
  return family;
}

}  // namespace congr
