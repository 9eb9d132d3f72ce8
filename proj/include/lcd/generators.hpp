#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lcd/graph.hpp"

namespace lcd {

/// Synthetic instance with planted ground truth, labeled by dense ids.
struct SyntheticDataset {
  NodeId num_nodes = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<RawId>> communities;

  Graph graph() const { return Graph::from_edges(num_nodes, edges); }
  /// Writes edges.txt and communities.txt in SNAP layout.
  void write(const std::filesystem::path& dir) const;
};

/// Cliques 0..count-1 of `size` nodes, clique i bridged to clique i+1 by one
/// edge and the last bridged back to the first. Each clique is a community.
SyntheticDataset ring_of_cliques(std::size_t count, std::size_t size);

/// Cliques bridged in a line. Consecutive runs of `per_community` cliques
/// form one community (per_community = count gives one end-to-end community).
SyntheticDataset path_of_cliques(std::size_t count, std::size_t size, std::size_t per_community);

/// Two cliques of `size` joined by a single edge; each clique is a community.
SyntheticDataset two_cliques(std::size_t size);

/// Stochastic block model with equal blocks; deterministic for a given seed.
SyntheticDataset planted_partition(std::size_t blocks, std::size_t block_size, double p_in, double p_out,
                                   std::uint64_t seed);

}  // namespace lcd
