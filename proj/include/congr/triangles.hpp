#pragma once

// Congruence classes of point triples. The key of an ordered triple (p,q,r)
// is the ordered tuple of squared distances (|pq|^2, |qr|^2, |pr|^2); mirror
// images share keys. The class table counts realisations r(t) of every key t
// over the full triple space.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "congr/detail/interner.hpp"
#include "congr/errors.hpp"
#include "congr/point_set.hpp"

namespace congr {

// all_triples ranges over every (p,q,r) in P^3, repeats included, so that the
// realisation counts sum to |P|^3. distinct_points restricts to pairwise
// distinct triples (the normalization matched by the motion-side identity).
enum class TripleConvention { all_triples, distinct_points };

// ordered is the contractual reading of a key; sorted (components in
// nondecreasing order) is exposed for comparison only.
enum class KeyOrder { ordered, sorted };

struct TriangleKey {
  Rational d_pq;
  Rational d_qr;
  Rational d_pr;

  friend bool operator==(const TriangleKey& a, const TriangleKey& b) {
    return a.d_pq == b.d_pq && a.d_qr == b.d_qr && a.d_pr == b.d_pr;
  }
};

inline TriangleKey triangle_key(const GaussianRational& p, const GaussianRational& q,
                                const GaussianRational& r) {
  return TriangleKey{sq_dist(p, q), sq_dist(q, r), sq_dist(p, r)};
}

class ClassTable {
 public:
  std::uint64_t class_count() const { return entries_.size(); }
  std::uint64_t total_triples() const { return total_; }
  TripleConvention convention() const { return conv_; }
  KeyOrder key_order() const { return order_; }

  std::uint64_t max_realisations() const {
    std::uint64_t m = 0;
    for (const Entry& e : entries_) m = std::max(m, e.count);
    return m;
  }

  // Sum of squared realisation counts: the number of 6-tuples whose two
  // triples share a key (the triangle energy).
  BigInt energy() const {
    unsigned __int128 acc = 0;
    for (const Entry& e : entries_) {
      acc += static_cast<unsigned __int128>(e.count) * e.count;
    }
    return detail::u128_to_bigint(acc);
  }

  // Number of classes left when each key's components are put in
  // nondecreasing order (the alternative, non-contractual key reading).
  std::uint64_t sorted_key_class_count() const {
    std::unordered_set<std::uint64_t> merged;
    merged.reserve(entries_.size());
    for (const Entry& e : entries_) {
      merged.insert(pack((e.key >> 42) & kMask, (e.key >> 21) & kMask, e.key & kMask,
                         KeyOrder::sorted));
    }
    return merged.size();
  }

  std::uint64_t count_of(const TriangleKey& key) const {
    std::uint32_t r1, r2, r3;
    if (!rank_of(key.d_pq, r1) || !rank_of(key.d_qr, r2) || !rank_of(key.d_pr, r3)) return 0;
    std::uint64_t packed = pack(r1, r2, r3, order_);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), packed,
                               [](const Entry& e, std::uint64_t k) { return e.key < k; });
    if (it == entries_.end() || it->key != packed) return 0;
    return it->count;
  }

  // Visits (key, count) in canonical key order (lexicographic by the exact
  // rational components).
  template <class F>
  void for_each(F&& f) const {
    for (const Entry& e : entries_) {
      TriangleKey key{dist_sorted_[(e.key >> 42) & kMask], dist_sorted_[(e.key >> 21) & kMask],
                      dist_sorted_[e.key & kMask]};
      f(key, e.count);
    }
  }

  friend ClassTable class_table(const PointSet&, TripleConvention, KeyOrder);

 private:
  static constexpr std::uint64_t kMask = (1u << 21) - 1;

  struct Entry {
    std::uint64_t key;
    std::uint64_t count;
  };

  static std::uint64_t pack(std::uint32_t a, std::uint32_t b, std::uint32_t c, KeyOrder order) {
    if (order == KeyOrder::sorted) {
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) |
           static_cast<std::uint64_t>(c);
  }

  bool rank_of(const Rational& d, std::uint32_t& out) const {
    auto it = rank_map_.find(d);
    if (it == rank_map_.end()) return false;
    out = it->second;
    return true;
  }

  std::vector<Rational> dist_sorted_;  // rank -> value
  std::unordered_map<Rational, std::uint32_t, RationalHash> rank_map_;
  std::vector<Entry> entries_;  // ascending packed key
  std::uint64_t total_ = 0;
  TripleConvention conv_ = TripleConvention::all_triples;
  KeyOrder order_ = KeyOrder::ordered;
};

// Exhaustive class table over the chosen triple space.
inline ClassTable class_table(const PointSet& P,
                              TripleConvention conv = TripleConvention::all_triples,
                              KeyOrder order = KeyOrder::ordered) {
  if (P.empty()) throw ValidationError("class_table: empty point set");
  const std::size_t n = P.size();

  // Pairwise squared distances, interned to dense ids.
  detail::Interner<Rational, RationalHash> dists;
  std::vector<std::uint32_t> D(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    D[i * n + i] = dists.intern(Rational(0));
    for (std::size_t j = 0; j < i; ++j) {
      std::uint32_t id = dists.intern(sq_dist(P[i], P[j]));
      D[i * n + j] = id;
      D[j * n + i] = id;
    }
  }
  if (dists.size() >= (1u << 21)) {
    throw InternalError("class_table: too many distinct distances for packed keys");
  }

  // Ranks in exact rational order make packed-key order canonical.
  std::vector<std::uint32_t> ids(dists.size());
  for (std::uint32_t i = 0; i < dists.size(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    return dists.value(a) < dists.value(b);
  });
  std::vector<std::uint32_t> rank(dists.size());
  for (std::uint32_t r = 0; r < ids.size(); ++r) rank[ids[r]] = r;

  // Replace distance ids by their ranks so packed keys sort canonically.
  for (std::uint32_t& id : D) id = rank[id];

  const bool distinct = conv == TripleConvention::distinct_points;
  std::vector<std::uint64_t> keys;
  keys.reserve(static_cast<std::size_t>(n) * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t* Di = D.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      if (distinct && i == j) continue;
      const std::uint32_t* Dj = D.data() + j * n;
      const std::uint32_t rij = Di[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (distinct && (k == i || k == j)) continue;
        keys.push_back(ClassTable::pack(rij, Dj[k], Di[k], order));
      }
    }
  }
  std::sort(keys.begin(), keys.end());

  ClassTable table;
  table.conv_ = conv;
  table.order_ = order;
  table.total_ = keys.size();
  table.dist_sorted_.reserve(dists.size());
  for (std::uint32_t r = 0; r < ids.size(); ++r) table.dist_sorted_.push_back(dists.value(ids[r]));
  table.rank_map_.reserve(dists.size());
  for (std::uint32_t r = 0; r < ids.size(); ++r) table.rank_map_.emplace(table.dist_sorted_[r], r);
  for (std::size_t b = 0; b < keys.size();) {
    std::size_t e = b;
    while (e < keys.size() && keys[e] == keys[b]) ++e;
    table.entries_.push_back({keys[b], e - b});
    b = e;
  }
  return table;
}

inline BigInt triangle_energy(const ClassTable& table) { return table.energy(); }

inline BigInt triangle_energy(const PointSet& P,
                              TripleConvention conv = TripleConvention::all_triples) {
  return class_table(P, conv).energy();
}

struct CauchySchwarzCheck {
  BigInt lhs;  // (sum of realisations)^2 = |P|^6 under the all-triples convention
  BigInt rhs;  // |T(P)| * triangle energy
  bool holds;
};

inline CauchySchwarzCheck cauchy_schwarz_check(const ClassTable& table) {
  BigInt lhs = BigInt(table.total_triples()) * BigInt(table.total_triples());
  BigInt rhs = BigInt(table.class_count()) * table.energy();
  return CauchySchwarzCheck{lhs, rhs, lhs <= rhs};
}

inline CauchySchwarzCheck cauchy_schwarz_check(const PointSet& P) {
  return cauchy_schwarz_check(class_table(P));
}

inline std::uint64_t distinct_distance_count(const PointSet& P) {
  if (P.size() < 2) throw ValidationError("distinct_distance_count: need at least 2 points");
  std::unordered_set<Rational, RationalHash> seen;
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational d = sq_dist(P[i], P[j]);
      if (sgn(d) != 0) seen.insert(d);
    }
  }
  return seen.size();
}

}  // namespace congr
