#pragma once

#include <span>
#include <vector>

#include "lcd/graph.hpp"

namespace lcd {

/// Minimum-conductance prefix of a node ordering.
struct SweepResult {
  std::vector<NodeId> best_prefix;
  double best_conductance = 0.0;
  std::vector<double> profile;  // profile[i] = conductance of the first i+1 nodes
  std::size_t prefix_index = 0; // index into profile of the first minimum
};

/// cut(C, V\C) / min(vol(C), vol(V\C)). C must be a nonempty proper subset.
double conductance(const Graph& g, std::span<const NodeId> members);

/// Sweeps `order`, considering prefixes of length 1 .. min(|order|, n-1).
/// Running cut and volume are updated per node, so the cost is O(vol(order)).
/// Ties go to the shortest prefix.
SweepResult sweep(const Graph& g, std::span<const NodeId> order);

/// Sweep of an ordering of subgraph nodes, given in parent ids, with cut and
/// volume taken from the parent graph.
SweepResult sweep_in_parent(const Graph& parent, std::span<const NodeId> order);

/// |C ∩ T| / |T|.
double precision(std::span<const NodeId> found, std::span<const NodeId> truth);

/// Harmonic mean of precision and recall; 0 when both vanish.
double f1_score(double precision, double recall);
double f1(std::span<const NodeId> found, std::span<const NodeId> truth);

/// |C ∩ T| for duplicate-free inputs.
std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace lcd
