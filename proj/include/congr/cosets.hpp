#pragma once

// Rich-coset detection in the group plane. An element (a, b) of the affine
// group is a point of C^2 \ {a = 0}; cosets of the unipotent subgroup are the
// vertical lines a = const, and cosets g*T(z) of the stabiliser tori are the
// non-vertical lines b = c - z*a, whose members all send z to the common
// image c. Detection is exact pair-hashing over (z, c) with a membership
// recheck, exhaustive at its threshold.

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "congr/affine.hpp"
#include "congr/detail/interner.hpp"
#include "congr/errors.hpp"
#include "congr/motions.hpp"

namespace congr {

struct VerticalCoset {
  GaussianRational a;                   // shared first coordinate
  std::vector<AffineElement> members;   // canonical order
};

struct TorusCoset {
  GaussianRational z;                   // the stabilised point
  GaussianRational c;                   // common image, c = act(member, z)
  std::vector<AffineElement> members;   // canonical order
};

struct DetectionReport {
  std::vector<VerticalCoset> vertical;  // size desc, then a
  std::vector<TorusCoset> torus;        // size desc, then (z, c)
  std::uint64_t max_vertical = 0;       // V: largest vertical-line occupancy
  std::uint64_t max_nonvertical = 0;    // H: largest non-vertical-line occupancy
};

inline std::vector<VerticalCoset> detect_vertical(std::span<const AffineElement> S,
                                                  std::uint64_t tau,
                                                  std::uint64_t* max_occupancy = nullptr) {
  if (tau < 2) throw ValidationError("detect_vertical: threshold must be >= 2");
  std::unordered_map<GaussianRational, std::vector<AffineElement>, GaussianHash> groups;
  for (const AffineElement& g : S) groups[g.a].push_back(g);

  std::uint64_t best = S.empty() ? 0 : 1;
  std::vector<VerticalCoset> out;
  for (auto& [a, members] : groups) {
    best = std::max<std::uint64_t>(best, members.size());
    if (members.size() < tau) continue;
    std::sort(members.begin(), members.end(),
              [](const AffineElement& x, const AffineElement& y) { return lex_less(x, y); });
    out.push_back(VerticalCoset{a, std::move(members)});
  }
  std::sort(out.begin(), out.end(), [](const VerticalCoset& x, const VerticalCoset& y) {
    if (x.members.size() != y.members.size()) return x.members.size() > y.members.size();
    return lex_less(x.a, y.a);
  });
  if (max_occupancy) *max_occupancy = best;
  return out;
}

inline std::vector<TorusCoset> detect_torus_cosets(std::span<const AffineElement> S,
                                                   std::uint64_t tau,
                                                   std::uint64_t* max_occupancy = nullptr) {
  if (tau < 2) throw ValidationError("detect_torus_cosets: threshold must be >= 2");
  // Every unordered pair with distinct first coordinates spans one line:
  // z = -(b2-b1)/(a2-a1), c = b1 + z*a1. A line with m members collects
  // exactly m(m-1)/2 pair witnesses.
  detail::Interner<GaussianRational, GaussianHash> pool;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      if (S[i].a == S[j].a) continue;
      GaussianRational z = -((S[j].b - S[i].b) / (S[j].a - S[i].a));
      GaussianRational c = S[i].b + z * S[i].a;
      std::uint64_t key = (static_cast<std::uint64_t>(pool.intern(z)) << 32) | pool.intern(c);
      ++pair_counts[key];
    }
  }

  std::uint64_t best = S.empty() ? 0 : 1;
  std::vector<TorusCoset> out;
  for (const auto& [key, pairs] : pair_counts) {
    const std::uint64_t m = match_count_to_richness(2 * pairs);
    best = std::max(best, m);
    if (m < tau) continue;
    const GaussianRational& z = pool.value(static_cast<std::uint32_t>(key >> 32));
    const GaussianRational& c = pool.value(static_cast<std::uint32_t>(key & 0xffffffffULL));
    TorusCoset coset{z, c, {}};
    for (const AffineElement& g : S) {
      if (g.b == c - z * g.a) coset.members.push_back(g);
    }
    if (coset.members.size() != m) {
      throw InternalError("torus coset membership recheck mismatch");
    }
    std::sort(coset.members.begin(), coset.members.end(),
              [](const AffineElement& x, const AffineElement& y) { return lex_less(x, y); });
    out.push_back(std::move(coset));
  }
  std::sort(out.begin(), out.end(), [](const TorusCoset& x, const TorusCoset& y) {
    if (x.members.size() != y.members.size()) return x.members.size() > y.members.size();
    int cz = compare(x.z, y.z);
    if (cz != 0) return cz < 0;
    return lex_less(x.c, y.c);
  });
  if (max_occupancy) *max_occupancy = best;
  return out;
}

inline DetectionReport detect_cosets(std::span<const AffineElement> S, std::uint64_t tau_vertical,
                                     std::uint64_t tau_torus) {
  DetectionReport rep;
  rep.vertical = detect_vertical(S, tau_vertical, &rep.max_vertical);
  rep.torus = detect_torus_cosets(S, tau_torus, &rep.max_nonvertical);
  return rep;
}

struct CosetProfile {
  std::uint64_t max_vertical = 0;     // V
  std::uint64_t max_nonvertical = 0;  // H
};

// Largest vertical-group and line occupancies without materializing members;
// lets callers pick thresholds before running detection proper.
inline CosetProfile coset_size_profile(std::span<const AffineElement> S) {
  CosetProfile prof;
  if (S.empty()) return prof;
  prof.max_vertical = prof.max_nonvertical = 1;
  std::unordered_map<GaussianRational, std::uint64_t, GaussianHash> vertical;
  for (const AffineElement& g : S) {
    prof.max_vertical = std::max(prof.max_vertical, ++vertical[g.a]);
  }
  detail::Interner<GaussianRational, GaussianHash> pool;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;
  std::uint64_t best_pairs = 0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      if (S[i].a == S[j].a) continue;
      GaussianRational z = -((S[j].b - S[i].b) / (S[j].a - S[i].a));
      GaussianRational c = S[i].b + z * S[i].a;
      std::uint64_t key = (static_cast<std::uint64_t>(pool.intern(z)) << 32) | pool.intern(c);
      best_pairs = std::max(best_pairs, ++pair_counts[key]);
    }
  }
  if (best_pairs > 0) {
    prof.max_nonvertical = match_count_to_richness(2 * best_pairs);
  }
  return prof;
}

// Picks the canonical-least member of coset /\ S as the coset representative
// theta and verifies theta^-1 * m lies in the rigid stabiliser of z for every
// member m. S must be canonically sorted.
inline RigidMotion coset_rep_in_SE2(const TorusCoset& coset,
                                    std::span<const RigidMotion> S_sorted) {
  const RigidMotion* theta = nullptr;
  for (const AffineElement& m : coset.members) {
    if (std::binary_search(S_sorted.begin(), S_sorted.end(), m,
                           [](const AffineElement& x, const AffineElement& y) {
                             return lex_less(x, y);
                           })) {
      theta = &m;
      break;
    }
  }
  if (!theta) throw ValidationError("coset_rep_in_SE2: empty intersection with S");
  AffineElement theta_inv = inv(*theta);
  for (const AffineElement& m : coset.members) {
    AffineElement h = mul(theta_inv, m);
    if (!in_torus(h, coset.z)) {
      throw ValidationError("coset_rep_in_SE2: member " + to_string(m) +
                            " does not stabilise z relative to the representative");
    }
    if (!is_rigid(h)) {
      throw ValidationError("coset_rep_in_SE2: member " + to_string(m) +
                            " is not rigid relative to the representative");
    }
  }
  return *theta;
}

}  // namespace congr
