#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "lcd/graph.hpp"

namespace lcd {

/// Sparse node -> score map. Zero entries are never stored.
class SparseVec {
 public:
  using Entry = std::pair<NodeId, double>;

  SparseVec() = default;
  static SparseVec from_dense(std::span<const double> values);

  double get(NodeId v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0.0 : it->second;
  }
  void set(NodeId v, double value);
  void add(NodeId v, double delta) { set(v, get(v) + delta); }
  void erase(NodeId v) { entries_.erase(v); }

  bool contains(NodeId v) const { return entries_.count(v) != 0; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double sum() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Entries ordered by node id, for deterministic iteration.
  std::vector<Entry> sorted_entries() const;
  std::vector<NodeId> support() const;
  std::vector<double> to_dense(NodeId n) const;

 private:
  std::unordered_map<NodeId, double> entries_;
};

}  // namespace lcd
