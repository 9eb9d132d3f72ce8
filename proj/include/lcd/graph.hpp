#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lcd {

using NodeId = std::uint32_t;
using RawId = std::uint64_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in compressed row layout.
///
/// Neighbor lists are sorted ascending, symmetric, and free of self-loops and
/// duplicates. The degree sum equals total_volume() == 2 * num_edges().
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on nodes [0, n) from an arbitrary edge list. Edges are
  /// symmetrized; self-loops and repeated edges are discarded.
  static Graph from_edges(NodeId n, std::span<const Edge> edges);

  NodeId num_nodes() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::uint64_t num_edges() const { return adjacency_.size() / 2; }
  std::uint64_t total_volume() const { return adjacency_.size(); }

  std::uint32_t degree(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool contains(NodeId v) const { return v < num_nodes(); }
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> adjacency() const { return adjacency_; }

  /// Adopts prebuilt CSR arrays after validating every invariant.
  static Graph from_csr(std::vector<std::uint64_t> offsets, std::vector<NodeId> adjacency);

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

/// Bijection between external labels and dense node ids.
///
/// For a graph loaded from disk the labels are the raw dataset ids; for a
/// subgraph they are the node ids of the parent graph.
class IdMap {
 public:
  /// Returns the dense id for `label`, assigning the next one if unseen.
  NodeId intern(RawId label);

  std::optional<NodeId> find(RawId label) const;
  RawId label(NodeId v) const { return dense_to_raw_[v]; }
  std::size_t size() const { return dense_to_raw_.size(); }
  std::span<const RawId> labels() const { return dense_to_raw_; }

  /// Result of relabeling a graph whose labels come from `outer` through this
  /// map: label(v) becomes outer.label(label(v)).
  IdMap compose(const IdMap& outer) const;

 private:
  std::unordered_map<RawId, NodeId> raw_to_dense_;
  std::vector<RawId> dense_to_raw_;
};

struct LabeledGraph {
  Graph graph;
  IdMap ids;
};

/// Reads a whitespace-delimited "u v [w]" edge list; '#' lines are comments.
/// Node ids are assigned in first-seen order; a third column is ignored.
LabeledGraph load_edge_list(const std::filesystem::path& path);

/// Same parser over an in-memory buffer; `source` names it in error messages.
LabeledGraph parse_edge_list(std::string_view text, std::string_view source = "<memory>");

/// Connected component labels (0-based, in order of smallest member id).
std::vector<NodeId> connected_components(const Graph& g, NodeId* num_components = nullptr);

bool is_connected(const Graph& g);

/// Largest connected component, densely relabeled in ascending parent order.
/// Equal-size components are decided by the smallest raw label they contain.
LabeledGraph extract_lcc(const Graph& g, const IdMap& ids);

/// Induced subgraph on `nodes`. Subgraph id i corresponds to nodes[i]; the
/// returned map's labels are parent node ids.
LabeledGraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Unweighted BFS distances from `source`; unreachable nodes get UINT32_MAX.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

}  // namespace lcd
