#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace congr::detail {

// Assigns dense ids to exact values so hot counting loops work on PODs.
// Node-based map keeps value addresses stable.
template <class T, class Hash>
class Interner {
 public:
  std::uint32_t intern(const T& v) {
    auto [it, inserted] = ids_.try_emplace(v, static_cast<std::uint32_t>(by_id_.size()));
    if (inserted) by_id_.push_back(&it->first);
    return it->second;
  }

  std::optional<std::uint32_t> find(const T& v) const {
    auto it = ids_.find(v);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const T& value(std::uint32_t id) const { return *by_id_[id]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(by_id_.size()); }
  void reserve(std::size_t n) { ids_.reserve(n); by_id_.reserve(n); }

 private:
  std::unordered_map<T, std::uint32_t, Hash> ids_;
  std::vector<const T*> by_id_;
};

}  // namespace congr::detail
