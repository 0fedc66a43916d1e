#pragma once

// Group energies of finite sets in the affine group. E(S) counts quadruples
// with g1*g2^-1 = g3*g4^-1 and is computed from the representation function
// of SS^-1; the O(|S|^4) quadruple definition survives only as a test oracle.

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "congr/affine.hpp"
#include "congr/errors.hpp"
#include "congr/motions.hpp"
#include "congr/point_set.hpp"

namespace congr {

namespace detail {

inline BigInt sum_of_squared_counts(const std::unordered_map<AffineElement, std::uint64_t,
                                                             AffineHash>& counts) {
  unsigned __int128 acc = 0;
  for (const auto& [value, count] : counts) {
    acc += static_cast<unsigned __int128>(count) * count;
  }
  return u128_to_bigint(acc);
}

}  // namespace detail

// Throws unless S is duplicate-free and entirely rigid (|a|^2 = 1).
inline void validate_motion_set(std::span<const AffineElement> S) {
  std::vector<AffineElement> sorted(S.begin(), S.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const AffineElement& x, const AffineElement& y) { return lex_less(x, y); });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i] == sorted[i + 1]) {
      throw ValidationError("motion set contains duplicate element " + to_string(sorted[i]));
    }
  }
  for (const AffineElement& g : S) {
    if (!is_rigid(g)) throw ValidationError("motion set element " + to_string(g) + " is not rigid");
  }
}

struct GroupEnergy {
  BigInt energy;                                               // sum of squared multiplicities
  std::uint64_t total = 0;                                     // = |S|^2
  std::vector<std::pair<AffineElement, std::uint64_t>> reps;   // r_{SS^-1}, canonical order
};

// Representation function of quotients: r(phi) = #{(theta, phi') in S^2 with
// phi' * theta^-1 = phi}, and E(S) = sum r(phi)^2.
inline GroupEnergy group_energy(std::span<const AffineElement> S) {
  if (S.empty()) throw ValidationError("group_energy: empty set");
  std::vector<AffineElement> inverses;
  inverses.reserve(S.size());
  for (const AffineElement& g : S) inverses.push_back(inv(g));

  std::unordered_map<AffineElement, std::uint64_t, AffineHash> counts;
  counts.reserve(S.size() * S.size() / 2 + 8);
  for (const AffineElement& second : S) {
    for (const AffineElement& first_inv : inverses) {
      ++counts[mul(second, first_inv)];
    }
  }

  GroupEnergy out;
  out.energy = detail::sum_of_squared_counts(counts);
  out.total = static_cast<std::uint64_t>(S.size()) * S.size();
  out.reps.assign(counts.begin(), counts.end());
  std::sort(out.reps.begin(), out.reps.end(),
            [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
  return out;
}

// E*(S): quadruples with g1*g2 = g3*g4. Always <= E(S).
inline BigInt star_energy(std::span<const AffineElement> S) {
  if (S.empty()) throw ValidationError("star_energy: empty set");
  std::unordered_map<AffineElement, std::uint64_t, AffineHash> counts;
  counts.reserve(S.size() * S.size() / 2 + 8);
  for (const AffineElement& g : S) {
    for (const AffineElement& h : S) {
      ++counts[mul(g, h)];
    }
  }
  return detail::sum_of_squared_counts(counts);
}

struct Lemma31Report {
  std::uint32_t k = 0;
  std::uint64_t s_size = 0;
  Rational lhs;    // k^6 |S|^4 / (C |P|^7)
  BigInt energy;   // E(S)
  bool holds = false;
};

inline Lemma31Report lemma31_from_energy(std::uint64_t n, std::uint32_t k, std::uint64_t s_size,
                                         const Rational& c_emp, BigInt energy) {
  if (s_size == 0) throw ValidationError("rich-motion set is empty");
  if (sgn(c_emp) <= 0) throw ValidationError("empirical constant must be positive");
  BigInt num = bigint_pow(BigInt(static_cast<unsigned long>(k)), 6) *
               bigint_pow(BigInt(static_cast<unsigned long>(s_size)), 4);
  Rational lhs(num, bigint_pow(BigInt(static_cast<unsigned long>(n)), 7));
  lhs.canonicalize();
  lhs /= c_emp;
  Lemma31Report rep;
  rep.k = k;
  rep.s_size = s_size;
  rep.lhs = lhs;
  rep.energy = std::move(energy);
  rep.holds = rep.lhs <= Rational(rep.energy);
  return rep;
}

// Checks k^6 |S_{>=k}|^4 / (C |P|^7) <= E(S_{>=k}) with the supplied
// empirical constant.
inline Lemma31Report lemma31_report(std::span<const RigidMotion> S, std::uint64_t n,
                                    std::uint32_t k, const Rational& c_emp) {
  if (S.empty()) throw ValidationError("lemma31_report: S_{>=k} is empty");
  return lemma31_from_energy(n, k, S.size(), c_emp, group_energy(S).energy);
}

inline Lemma31Report lemma31_report(const PointSet& P, std::uint32_t k, const Rational& c_emp) {
  std::vector<RigidMotion> S = rich_motions(P, k);
  return lemma31_report(S, P.size(), k, c_emp);
}

}  // namespace congr
