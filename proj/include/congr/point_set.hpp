#pragma once

// A finite planar point set: deduplicated, stored in canonical lexicographic
// order (re, then im). All analysis entry points take one of these.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "congr/gaussian.hpp"

namespace congr {

class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<GaussianRational> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end(),
              [](const GaussianRational& a, const GaussianRational& b) { return lex_less(a, b); });
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const GaussianRational& operator[](std::size_t i) const { return pts_[i]; }

  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  const std::vector<GaussianRational>& points() const { return pts_; }

  bool contains(const GaussianRational& p) const {
    return std::binary_search(
        pts_.begin(), pts_.end(), p,
        [](const GaussianRational& a, const GaussianRational& b) { return lex_less(a, b); });
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.pts_ == b.pts_; }

 private:
  std::vector<GaussianRational> pts_;
};

// Hash-based point -> index lookup for the hot membership tests.
class PointIndex {
 public:
  explicit PointIndex(const PointSet& ps) {
    map_.reserve(ps.size());
    for (std::uint32_t i = 0; i < ps.size(); ++i) map_.emplace(ps[i], i);
  }

  std::optional<std::uint32_t> find(const GaussianRational& p) const {
    auto it = map_.find(p);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const GaussianRational& p) const { return map_.count(p) != 0; }

 private:
  std::unordered_map<GaussianRational, std::uint32_t, GaussianHash> map_;
};

}  // namespace congr
