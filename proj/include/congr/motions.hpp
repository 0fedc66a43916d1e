#pragma once

// Enumeration of k-rich rigid motions and the richness spectrum.
//
// Every ordered pair of equal-length ordered segments determines exactly one
// orientation-preserving rigid motion, so a motion matching m >= 2 points of
// P is witnessed by exactly m(m-1) segment pairs. Grouping segments by exact
// squared length and aggregating motion keys therefore recovers the whole
// spectrum above richness 2 without ever re-testing a motion against P.
// Richness-1 motions are invisible to segment pairs and irrelevant downstream.
//
// Two interchangeable key representations are used: a reduced integer
// fraction form when the input scales to small integer coordinates, and a
// fully exact interned form otherwise. Both produce identical tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "congr/affine.hpp"
#include "congr/detail/interner.hpp"
#include "congr/errors.hpp"
#include "congr/point_set.hpp"

namespace congr {

// The unique orientation-preserving motion sending segment (p,q) to (p2,q2).
inline RigidMotion motion_between(const GaussianRational& p, const GaussianRational& q,
                                  const GaussianRational& p2, const GaussianRational& q2) {
  if (p == q) throw ValidationError("motion_between: degenerate segment");
  if (sq_dist(p, q) != sq_dist(p2, q2)) {
    throw ValidationError("motion_between: incongruent segments");
  }
  GaussianRational rot = (q2 - p2) / (q - p);
  return RigidMotion(rot, p2 - rot * p);
}

inline std::uint32_t richness(const RigidMotion& theta, const PointSet& P,
                              const PointIndex& index) {
  std::uint32_t m = 0;
  for (const GaussianRational& p : P) {
    if (index.contains(act(theta, p))) ++m;
  }
  return m;
}

inline std::uint32_t richness(const RigidMotion& theta, const PointSet& P) {
  return richness(theta, P, PointIndex(P));
}

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t v) {
  auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (s > 0 && s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

}  // namespace detail

// Solves c = m(m-1) for integer m >= 2. Any other value of c indicates a bug
// in the enumeration and is surfaced loudly.
inline std::uint32_t match_count_to_richness(std::uint64_t c) {
  std::uint64_t s = detail::isqrt_u64(1 + 4 * c);
  std::uint64_t m = (1 + s) / 2;
  if (m < 2 || m * (m - 1) != c) {
    throw InternalError("match count " + std::to_string(c) + " is not of the form m(m-1)");
  }
  return static_cast<std::uint32_t>(m);
}

class MotionTable {
 public:
  std::uint64_t motion_count() const {
    return int_path_ ? int_table_.size() : pair_table_.size();
  }

  std::uint64_t total_matches() const { return total_; }

  template <class F>
  void for_each_match_count(F&& f) const {
    if (int_path_) {
      for (const auto& [key, count] : int_table_) f(count);
    } else {
      for (const auto& [key, count] : pair_table_) f(count);
    }
  }

  // Motions whose match count is at least min_match, in canonical order.
  std::vector<std::pair<RigidMotion, std::uint64_t>> motions_with_match_at_least(
      std::uint64_t min_match) const {
    std::vector<std::pair<RigidMotion, std::uint64_t>> out;
    if (int_path_) {
      for (const auto& [key, count] : int_table_) {
        if (count >= min_match) out.emplace_back(materialize(key), count);
      }
    } else {
      for (const auto& [key, count] : pair_table_) {
        if (count < min_match) continue;
        const GaussianRational& rot = pool_[key >> 32];
        const GaussianRational& trans = pool_[key & 0xffffffffULL];
        out.emplace_back(RigidMotion(rot, trans), count);
      }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return lex_less(x.first, y.first); });
    return out;
  }

  std::vector<std::pair<RigidMotion, std::uint64_t>> all_motions() const {
    return motions_with_match_at_least(2);
  }

  friend MotionTable enumerate_motions(const PointSet&);

 private:
  struct IntKey {
    std::int64_t rre, rim, tre, tim, den;
    bool operator==(const IntKey&) const = default;
  };

  struct IntKeyHash {
    std::size_t operator()(const IntKey& k) const noexcept {
      std::size_t h = detail::hash_combine(static_cast<std::size_t>(k.rre),
                                           static_cast<std::size_t>(k.rim));
      h = detail::hash_combine(h, static_cast<std::size_t>(k.tre));
      h = detail::hash_combine(h, static_cast<std::size_t>(k.tim));
      return detail::hash_combine(h, static_cast<std::size_t>(k.den));
    }
  };

  RigidMotion materialize(const IntKey& k) const {
    Rational rre(BigInt(k.rre), BigInt(k.den));
    Rational rim(BigInt(k.rim), BigInt(k.den));
    rre.canonicalize();
    rim.canonicalize();
    BigInt tden = BigInt(k.den) * scale_;
    Rational tre(BigInt(k.tre), tden);
    Rational tim(BigInt(k.tim), tden);
    tre.canonicalize();
    tim.canonicalize();
    return RigidMotion(GaussianRational(rre, rim), GaussianRational(tre, tim));
  }

  std::unordered_map<IntKey, std::uint64_t, IntKeyHash> int_table_;
  BigInt scale_ = 1;  // points were premultiplied by this in the integer path
  std::unordered_map<std::uint64_t, std::uint64_t> pair_table_;  // rot_id<<32 | trans_id
  std::vector<GaussianRational> pool_;
  bool int_path_ = true;
  std::uint64_t total_ = 0;
};

namespace detail {

// Integer coordinates this large keep every intermediate of the fast path
// within int64 (max magnitude ~ 3 * 8 * B^3 < 2^63 for B = 2.5e5).
inline constexpr std::int64_t kIntPathCoordBound = 250000;

struct ScaledInts {
  std::vector<std::int64_t> x, y;
  BigInt scale;
};

inline bool try_scale_to_ints(const PointSet& P, ScaledInts& out) {
  BigInt lcm(1);
  for (const GaussianRational& p : P) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), mpq_denref(p.re.get_mpq_t()));
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), mpq_denref(p.im.get_mpq_t()));
  }
  out.scale = lcm;
  out.x.reserve(P.size());
  out.y.reserve(P.size());
  BigInt tmp, q;
  for (const GaussianRational& p : P) {
    for (int c = 0; c < 2; ++c) {
      const Rational& r = c == 0 ? p.re : p.im;
      mpz_divexact(q.get_mpz_t(), lcm.get_mpz_t(), mpq_denref(r.get_mpq_t()));
      tmp = q * BigInt(mpq_numref(r.get_mpq_t()));
      if (mpz_cmpabs_ui(tmp.get_mpz_t(), kIntPathCoordBound) > 0) return false;
      (c == 0 ? out.x : out.y).push_back(tmp.get_si());
    }
  }
  return true;
}

}  // namespace detail

// Builds the table of every rigid motion matching at least two points of P,
// keyed exactly, with matchCount(theta) = m(m-1) where m is the richness.
inline MotionTable enumerate_motions(const PointSet& P) {
  if (P.size() < 2) throw ValidationError("enumerate_motions: need at least 2 points");
  const std::size_t n = P.size();
  MotionTable table;

  detail::ScaledInts si;
  if (detail::try_scale_to_ints(P, si)) {
    table.int_path_ = true;
    table.scale_ = si.scale;
    // Ordered segments bucketed by squared length, then grouped by difference
    // vector; the rotation part depends only on the pair of difference
    // vectors, the translation on the pair of start points.
    struct DiffClass {
      std::int64_t dx, dy;
      std::vector<std::uint32_t> starts;
    };
    std::unordered_map<std::int64_t, std::unordered_map<std::uint64_t, DiffClass>> buckets;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::int64_t dx = si.x[j] - si.x[i];
        std::int64_t dy = si.y[j] - si.y[i];
        std::int64_t len = dx * dx + dy * dy;
        std::uint64_t dkey = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(dx)) << 32) |
                             static_cast<std::uint32_t>(dy);
        DiffClass& dc = buckets[len][dkey];
        dc.dx = dx;
        dc.dy = dy;
        dc.starts.push_back(i);
      }
    }
    auto& tab = table.int_table_;
    for (const auto& [len, classes] : buckets) {
      for (const auto& [ka, ca] : classes) {
        for (const auto& [kb, cb] : classes) {
          // rot = vb * conj(va) / len
          const std::int64_t rre = cb.dx * ca.dx + cb.dy * ca.dy;
          const std::int64_t rim = cb.dy * ca.dx - cb.dx * ca.dy;
          for (std::uint32_t ia : ca.starts) {
            const std::int64_t rpx = rre * si.x[ia] - rim * si.y[ia];
            const std::int64_t rpy = rre * si.y[ia] + rim * si.x[ia];
            for (std::uint32_t ib : cb.starts) {
              const std::int64_t tre = len * si.x[ib] - rpx;
              const std::int64_t tim = len * si.y[ib] - rpy;
              std::int64_t g = std::gcd(std::gcd(rre < 0 ? -rre : rre, rim < 0 ? -rim : rim),
                                        std::gcd(std::gcd(tre < 0 ? -tre : tre, tim < 0 ? -tim : tim), len));
              ++tab[MotionTable::IntKey{rre / g, rim / g, tre / g, tim / g, len / g}];
              ++table.total_;
            }
          }
        }
      }
    }
    return table;
  }

  // Exact path: the same aggregation over interned Gaussian rationals.
  table.int_path_ = false;
  detail::Interner<GaussianRational, GaussianHash> pool;
  detail::Interner<Rational, RationalHash> lens;
  struct Segment {
    std::uint32_t start;
    std::uint32_t diff_id;
  };
  std::vector<std::vector<Segment>> buckets;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      GaussianRational d = P[j] - P[i];
      std::uint32_t len_id = lens.intern(d.norm_sq());
      if (len_id == buckets.size()) buckets.emplace_back();
      buckets[len_id].push_back({i, pool.intern(d)});
    }
  }
  std::unordered_map<std::uint64_t, GaussianRational> rot_point_memo;
  auto& tab = table.pair_table_;
  for (std::vector<Segment>& segs : buckets) {
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.diff_id < b.diff_id; });
    // Iterate over maximal runs sharing a difference vector.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;  // (begin, end)
    for (std::uint32_t b = 0; b < segs.size();) {
      std::uint32_t e = b;
      while (e < segs.size() && segs[e].diff_id == segs[b].diff_id) ++e;
      runs.emplace_back(b, e);
      b = e;
    }
    for (auto [ab, ae] : runs) {
      const GaussianRational& va = pool.value(segs[ab].diff_id);
      for (auto [bb, be] : runs) {
        GaussianRational rot = pool.value(segs[bb].diff_id) / va;
        const std::uint64_t rot_id = pool.intern(rot);
        for (std::uint32_t s = ab; s < ae; ++s) {
          const std::uint32_t ia = segs[s].start;
          auto [it, fresh] = rot_point_memo.try_emplace((rot_id << 32) | ia);
          if (fresh) it->second = pool.value(static_cast<std::uint32_t>(rot_id)) * P[ia];
          const GaussianRational& rp = it->second;
          for (std::uint32_t t = bb; t < be; ++t) {
            GaussianRational trans = P[segs[t].start] - rp;
            ++tab[(rot_id << 32) | pool.intern(trans)];
            ++table.total_;
          }
        }
      }
    }
  }
  table.pool_.reserve(pool.size());
  for (std::uint32_t id = 0; id < pool.size(); ++id) table.pool_.push_back(pool.value(id));
  return table;
}

struct SpectrumEntry {
  std::uint32_t k;
  std::uint64_t count;
};

class RichnessSpectrum {
 public:
  RichnessSpectrum() = default;

  explicit RichnessSpectrum(const MotionTable& table) {
    std::unordered_map<std::uint32_t, std::uint64_t> exact;
    table.for_each_match_count([&](std::uint64_t c) { ++exact[match_count_to_richness(c)]; });
    exact_.reserve(exact.size());
    for (const auto& [k, count] : exact) exact_.push_back({k, count});
    std::sort(exact_.begin(), exact_.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.k < b.k; });
    const std::uint32_t top = exact_.empty() ? 1 : exact_.back().k;
    at_least_.assign(top + 2, 0);
    for (auto it = exact_.rbegin(); it != exact_.rend(); ++it) {
      at_least_[it->k] += it->count;
    }
    for (std::uint32_t k = top; k-- > 0;) at_least_[k] += at_least_[k + 1];
  }

  const std::vector<SpectrumEntry>& exact() const { return exact_; }

  std::uint64_t exactly(std::uint32_t k) const {
    auto it = std::lower_bound(exact_.begin(), exact_.end(), k,
                               [](const SpectrumEntry& e, std::uint32_t v) { return e.k < v; });
    return it != exact_.end() && it->k == k ? it->count : 0;
  }

  // |S_{>=k}|: number of motions that are at least k-rich (k >= 2).
  std::uint64_t at_least(std::uint32_t k) const {
    if (k < 2) throw ValidationError("richness threshold must be >= 2");
    return k < at_least_.size() ? at_least_[k] : 0;
  }

  std::uint32_t max_richness() const { return exact_.empty() ? 0 : exact_.back().k; }

  // Sum over k >= from_k of |S_{>=k}| k^2 (the rigid-motion side of the
  // triangle-energy bookkeeping; diagnostic only).
  BigInt weighted_cumulative_k2(std::uint32_t from_k = 3) const {
    BigInt acc(0);
    for (std::uint32_t k = std::max(from_k, 2u); k <= max_richness(); ++k) {
      acc += BigInt(at_least_[k]) * k * k;
    }
    return acc;
  }

 private:
  std::vector<SpectrumEntry> exact_;       // ascending k, nonzero counts only
  std::vector<std::uint64_t> at_least_;    // index k -> |S_{>=k}|
};

inline RichnessSpectrum spectrum(const MotionTable& table) { return RichnessSpectrum(table); }

inline RichnessSpectrum spectrum(const PointSet& P) {
  return RichnessSpectrum(enumerate_motions(P));
}

// Largest value of |S_{>=k}| k^2 / |P|^3 over all k: the observed constant in
// the rich-motions counting bound for this particular set.
inline Rational guth_katz_ratio(const RichnessSpectrum& sp, std::uint64_t n) {
  if (sp.max_richness() < 2) throw ValidationError("guth_katz_ratio: empty spectrum");
  BigInt n3 = bigint_pow(BigInt(static_cast<unsigned long>(n)), 3);
  Rational best(0);
  for (std::uint32_t k = 2; k <= sp.max_richness(); ++k) {
    std::uint64_t al = sp.at_least(k);
    if (al == 0) continue;
    Rational r(BigInt(al) * k * k, n3);
    r.canonicalize();
    if (r > best) best = r;
  }
  return best;
}

inline Rational guth_katz_ratio(const PointSet& P) {
  return guth_katz_ratio(spectrum(P), P.size());
}

// All k with |P| >= k >= |P|/(3CM) and |S_{>=k}| >= |P|/(3M), ascending.
// Empty results are valid for adversarial M, C.
inline std::vector<std::uint32_t> good_ks(const RichnessSpectrum& sp, std::uint64_t n,
                                          const Rational& M, const Rational& C) {
  if (sgn(M) <= 0 || sgn(C) <= 0) throw ValidationError("good_ks: M and C must be positive");
  Rational window_floor = Rational(static_cast<unsigned long>(n)) / (3 * C * M);
  BigInt lo_big = rational_ceil(window_floor);
  std::uint64_t lo = 2;
  if (lo_big > 2) {
    if (lo_big > static_cast<unsigned long>(n)) return {};
    lo = mpz_get_ui(lo_big.get_mpz_t());
  }
  Rational need = Rational(static_cast<unsigned long>(n)) / (3 * M);
  std::vector<std::uint32_t> out;
  for (std::uint64_t k = lo; k <= n; ++k) {
    Rational have(static_cast<unsigned long>(sp.at_least(static_cast<std::uint32_t>(k))));
    if (have >= need) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

inline std::vector<std::uint32_t> good_ks(const PointSet& P, const Rational& M,
                                          const Rational& C) {
  return good_ks(spectrum(P), P.size(), M, C);
}

// Number of 6-tuples (p,q,r,p',q',r') with p,q,r pairwise distinct such that
// some rigid motion carries (p,q,r) to (p',q',r'): sum of |S_=k| k(k-1)(k-2).
// Exact because two distinct points determine the motion.
inline BigInt se2_triple_energy(const RichnessSpectrum& sp) {
  BigInt acc(0);
  for (const SpectrumEntry& e : sp.exact()) {
    acc += BigInt(e.count) * e.k * (e.k - 1) * (e.k - 2);
  }
  return acc;
}

inline BigInt se2_triple_energy(const PointSet& P) {
  if (P.size() < 3) throw ValidationError("se2_triple_energy: need at least 3 points");
  return se2_triple_energy(spectrum(P));
}

// S_{>=k}: the motions that are at least k-rich, canonically ordered.
inline std::vector<RigidMotion> rich_motions(const MotionTable& table, std::uint32_t k) {
  if (k < 2) throw ValidationError("rich_motions: k must be >= 2");
  auto pairs = table.motions_with_match_at_least(static_cast<std::uint64_t>(k) * (k - 1));
  std::vector<RigidMotion> out;
  out.reserve(pairs.size());
  for (auto& [motion, count] : pairs) out.push_back(std::move(motion));
  return out;
}

inline std::vector<RigidMotion> rich_motions(const PointSet& P, std::uint32_t k) {
  return rich_motions(enumerate_motions(P), k);
}

}  // namespace congr
