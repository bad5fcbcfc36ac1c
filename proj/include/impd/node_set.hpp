#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "impd/graph.hpp"

namespace impd {

/// Sorted, duplicate-free set of node ids. The tag keeps leader seeds and
/// follower deactivations from being mixed up by accident.
template <class Tag>
class NodeSubset {
 public:
  NodeSubset() = default;
  NodeSubset(std::initializer_list<NodeId> ids) : members_(ids) { canonicalize(); }
  explicit NodeSubset(std::vector<NodeId> ids) : members_(std::move(ids)) { canonicalize(); }

  template <class OtherTag>
  explicit NodeSubset(const NodeSubset<OtherTag>& other) : members_(other.members().begin(), other.members().end()) {}

  std::span<const NodeId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  void insert(NodeId v) {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) members_.insert(it, v);
  }
  void erase(NodeId v) {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it != members_.end() && *it == v) members_.erase(it);
  }

  NodeSubset with(NodeId v) const {
    NodeSubset s = *this;
    s.insert(v);
    return s;
  }
  NodeSubset without(NodeId v) const {
    NodeSubset s = *this;
    s.erase(v);
    return s;
  }

  template <class OtherTag>
  bool is_subset_of(const NodeSubset<OtherTag>& other) const {
    return std::includes(other.members().begin(), other.members().end(), members_.begin(), members_.end());
  }

  /// Space separated ids, e.g. "0 3 7".
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(members_[k]);
    }
    return out;
  }

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;
  friend auto operator<=>(const NodeSubset& a, const NodeSubset& b) { return a.members_ <=> b.members_; }

 private:
  void canonicalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<NodeId> members_;
};

struct SeedTag;
struct DeactivationTag;
struct InfluencedTag;
using SeedSet = NodeSubset<SeedTag>;
using DeactivationSet = NodeSubset<DeactivationTag>;
using InfluencedSet = NodeSubset<InfluencedTag>;

struct NodeSubsetHash {
  template <class Tag>
  std::size_t operator()(const NodeSubset<Tag>& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (NodeId v : s.members()) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

}  // namespace impd
