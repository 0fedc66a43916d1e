#pragma once

// Additive, multiplicative, mixed and ratio energies of a planar point set
// read as complex numbers, via exact representation-function multisets. Each
// energy is the sum of squared multiplicities of the relevant pairwise
// combination; the O(n^4) quadruple definitions are test oracles only.

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "congr/affine.hpp"
#include "congr/cosets.hpp"
#include "congr/errors.hpp"
#include "congr/group_energy.hpp"
#include "congr/motions.hpp"
#include "congr/point_set.hpp"

namespace congr {

// A multiset of Gaussian rationals with multiplicities.
class RepFn {
 public:
  RepFn() = default;

  explicit RepFn(std::unordered_map<GaussianRational, std::uint64_t, GaussianHash>&& counts) {
    entries_.assign(counts.begin(), counts.end());
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
    for (const auto& [value, count] : entries_) total_ += count;
  }

  const std::vector<std::pair<GaussianRational, std::uint64_t>>& entries() const {
    return entries_;
  }

  std::uint64_t total() const { return total_; }

  std::uint64_t distinct_values() const { return entries_.size(); }

  BigInt energy() const {
    unsigned __int128 acc = 0;
    for (const auto& [value, count] : entries_) {
      acc += static_cast<unsigned __int128>(count) * count;
    }
    return detail::u128_to_bigint(acc);
  }

  std::uint64_t count_of(const GaussianRational& v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const auto& e, const GaussianRational& x) {
                                 return lex_less(e.first, x);
                               });
    return it != entries_.end() && it->first == v ? it->second : 0;
  }

 private:
  std::vector<std::pair<GaussianRational, std::uint64_t>> entries_;
  std::uint64_t total_ = 0;
};

namespace detail {

using GaussCounts = std::unordered_map<GaussianRational, std::uint64_t, GaussianHash>;

}  // namespace detail

// Multiset {p + q : (p,q) in P^2}.
inline RepFn sum_rep(const PointSet& P) {
  if (P.empty()) throw ValidationError("sum_rep: empty point set");
  detail::GaussCounts counts;
  counts.reserve(P.size() * P.size() / 2 + 8);
  for (const GaussianRational& p : P) {
    for (const GaussianRational& q : P) ++counts[p + q];
  }
  return RepFn(std::move(counts));
}

inline BigInt additive_energy(const PointSet& P) { return sum_rep(P).energy(); }

inline std::uint64_t sumset_size(const PointSet& P) { return sum_rep(P).distinct_values(); }

// Multiset {(p-t)(q-t)}; zeros are counted exactly like any other product.
inline RepFn product_rep(const PointSet& P, const GaussianRational& t = GaussianRational(0)) {
  if (P.empty()) throw ValidationError("product_rep: empty point set");
  std::vector<GaussianRational> shifted;
  shifted.reserve(P.size());
  for (const GaussianRational& p : P) shifted.push_back(p - t);
  detail::GaussCounts counts;
  counts.reserve(P.size() * P.size() / 2 + 8);
  for (const GaussianRational& p : shifted) {
    for (const GaussianRational& q : shifted) ++counts[p * q];
  }
  return RepFn(std::move(counts));
}

inline BigInt multiplicative_energy(const PointSet& P) { return product_rep(P).energy(); }

inline BigInt translated_mult_energy(const PointSet& P, const GaussianRational& t) {
  return product_rep(P, t).energy();
}

// Multiset {q - alpha*p : (p,q) in P^2}; its energy is E_+(P, alpha*P).
inline RepFn mixed_rep(const PointSet& P, const GaussianRational& alpha) {
  if (P.empty()) throw ValidationError("mixed_rep: empty point set");
  detail::GaussCounts counts;
  counts.reserve(P.size() * P.size() / 2 + 8);
  for (const GaussianRational& p : P) {
    GaussianRational ap = alpha * p;
    for (const GaussianRational& q : P) ++counts[q - ap];
  }
  return RepFn(std::move(counts));
}

inline BigInt mixed_additive_energy(const PointSet& P, const GaussianRational& alpha) {
  return mixed_rep(P, alpha).energy();
}

// Identity behind the torus branch: for h stabilising z and q = (g*h)(p),
// the ratio (q - g(z)) / (p - z) equals g.a * h.a. Both sides are computed
// independently and compared exactly.
inline bool lemma45_check(const AffineElement& g, const AffineElement& h,
                          const GaussianRational& z, const GaussianRational& p) {
  if (!in_torus(h, z)) throw ValidationError("lemma45_check: stabiliser violation");
  if (p == z) throw ValidationError("lemma45_check: degenerate p");
  GaussianRational q = act(mul(g, h), p);
  GaussianRational lhs = (q - act(g, z)) / (p - z);
  GaussianRational rhs = g.a * h.a;
  return lhs == rhs;
}

// Multiset {(q - gz) / (p - z) : p, q in P, p != z}.
inline RepFn ratio_energy(const PointSet& P, const GaussianRational& z,
                          const GaussianRational& gz) {
  if (P.empty()) throw ValidationError("ratio_energy: empty point set");
  detail::GaussCounts counts;
  counts.reserve(P.size() * P.size() / 2 + 8);
  for (const GaussianRational& p : P) {
    if (p == z) continue;
    GaussianRational inv_dz = GaussianRational(1) / (p - z);
    for (const GaussianRational& q : P) ++counts[(q - gz) * inv_dz];
  }
  return RepFn(std::move(counts));
}

// Verified lower/upper chains attached to a detected coset of >= k-rich
// motions: the vertical branch bounds the additive energy from below, the
// torus branch bounds the translated multiplicative energies.
struct Prop43Report {
  bool vertical_branch = false;
  std::uint64_t coset_size = 0;
  std::uint32_t k = 0;
  bool member_reps_ok = false;  // every member representation count reached k (or k-1)
  BigInt lower;                 // |coset| k^2, resp. |coset| (k-1)^2
  BigInt middle;                // E_+(P, aP), resp. the ratio energy
  BigInt upper;                 // E_+(P), resp. E_x(P-gz) * E_x(P-z)
  bool lower_le_middle = false;
  bool middle_le_upper = false;  // torus branch compares middle^2 <= upper
  // Torus branch extras.
  BigInt mult_energy_shift_z;
  BigInt mult_energy_shift_gz;
  bool zero_in_p_minus_z = false;
  bool zero_in_p_minus_gz = false;
  // Vertical branch: the statement's cubed-constant reading, reported only.
  Rational stated_cubed_lhs;
  bool stated_cubed_holds = false;

  bool chain_holds() const { return member_reps_ok && lower_le_middle && middle_le_upper; }
};

namespace detail {

inline void check_prop43_preconditions(const PointSet& P,
                                       std::span<const AffineElement> members,
                                       std::span<const RigidMotion> S_sorted, std::uint32_t k) {
  if (k < 2) throw ValidationError("prop43_report: k must be >= 2");
  for (const AffineElement& m : members) {
    if (!std::binary_search(S_sorted.begin(), S_sorted.end(), m,
                            [](const AffineElement& x, const AffineElement& y) {
                              return lex_less(x, y);
                            })) {
      throw ValidationError("prop43_report: coset member " + to_string(m) + " is not in S");
    }
  }
  PointIndex index(P);
  for (const RigidMotion& theta : S_sorted) {
    if (richness(theta, P, index) < k) {
      throw ValidationError("prop43_report: element " + to_string(theta) +
                            " of S is not " + std::to_string(k) + "-rich");
    }
  }
}

}  // namespace detail

inline Prop43Report prop43_report(const PointSet& P, const VerticalCoset& coset,
                                  std::span<const RigidMotion> S_sorted, std::uint32_t k) {
  detail::check_prop43_preconditions(P, coset.members, S_sorted, k);
  Prop43Report rep;
  rep.vertical_branch = true;
  rep.coset_size = coset.members.size();
  rep.k = k;

  // Every member (a, b) of the vertical coset forces >= k pairs with
  // q - a*p = b, all at the same multiset value b.
  RepFn mixed = mixed_rep(P, coset.a);
  rep.member_reps_ok = true;
  for (const AffineElement& m : coset.members) {
    if (mixed.count_of(m.b) < k) rep.member_reps_ok = false;
  }

  rep.lower = BigInt(coset.members.size()) * k * k;
  rep.middle = mixed.energy();
  rep.upper = additive_energy(P);
  rep.lower_le_middle = rep.lower <= rep.middle;
  rep.middle_le_upper = rep.middle <= rep.upper;

  rep.stated_cubed_lhs = Rational(BigInt(coset.members.size()) *
                                      bigint_pow(BigInt(static_cast<unsigned long>(k)), 3),
                                  BigInt(static_cast<unsigned long>(P.size())));
  rep.stated_cubed_lhs.canonicalize();
  rep.stated_cubed_holds = rep.stated_cubed_lhs <= Rational(rep.upper);
  return rep;
}

inline Prop43Report prop43_report(const PointSet& P, const TorusCoset& coset,
                                  std::span<const RigidMotion> S_sorted, std::uint32_t k) {
  detail::check_prop43_preconditions(P, coset.members, S_sorted, k);
  Prop43Report rep;
  rep.vertical_branch = false;
  rep.coset_size = coset.members.size();
  rep.k = k;

  // Each member m sends z to c and contributes >= k-1 ratio representations
  // of its own linear part m.a (pairs with p = z are excluded).
  RepFn ratios = ratio_energy(P, coset.z, coset.c);
  rep.member_reps_ok = true;
  for (const AffineElement& m : coset.members) {
    if (ratios.count_of(m.a) < static_cast<std::uint64_t>(k) - 1) rep.member_reps_ok = false;
  }

  rep.lower = BigInt(coset.members.size()) * (k - 1) * (k - 1);
  rep.middle = ratios.energy();
  rep.mult_energy_shift_z = translated_mult_energy(P, coset.z);
  rep.mult_energy_shift_gz = translated_mult_energy(P, coset.c);
  rep.upper = rep.mult_energy_shift_z * rep.mult_energy_shift_gz;
  rep.lower_le_middle = rep.lower <= rep.middle;
  rep.middle_le_upper = rep.middle * rep.middle <= rep.upper;
  rep.zero_in_p_minus_z = P.contains(coset.z);
  rep.zero_in_p_minus_gz = P.contains(coset.c);
  return rep;
}

}  // namespace congr
