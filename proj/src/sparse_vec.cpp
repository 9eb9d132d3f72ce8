#include "lcd/sparse_vec.hpp"

#include <algorithm>

namespace lcd {

SparseVec SparseVec::from_dense(std::span<const double> values) {
  SparseVec out;
  for (std::size_t i = 0; i < values.size(); ++i) out.set(static_cast<NodeId>(i), values[i]);
  return out;
}

void SparseVec::set(NodeId v, double value) {
  if (value == 0.0) {
    entries_.erase(v);
  } else {
    entries_[v] = value;
  }
}

double SparseVec::sum() const {
  double total = 0.0;
  for (const auto& [v, x] : sorted_entries()) total += x;
  return total;
}

std::vector<SparseVec::Entry> SparseVec::sorted_entries() const {
  std::vector<Entry> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> SparseVec::support() const {
  std::vector<NodeId> out;
  out.reserve(entries_.size());
  for (const auto& [v, x] : entries_) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> SparseVec::to_dense(NodeId n) const {
  std::vector<double> out(n, 0.0);
  for (const auto& [v, x] : entries_) out[v] = x;
  return out;
}

}  // namespace lcd
