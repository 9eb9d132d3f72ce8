#pragma once

#include <span>
#include <unordered_set>
#include <vector>

#include "lcd/extract.hpp"
#include "lcd/sparse_vec.hpp"
#include "lcd/sweep.hpp"

namespace lcd {

/// Seeds in push order; the original seed is always first.
class SeedStack {
 public:
  explicit SeedStack(NodeId seed) : order_{seed}, members_{seed} {}

  bool contains(NodeId v) const { return members_.count(v) != 0; }
  void push(NodeId v) {
    if (members_.insert(v).second) order_.push_back(v);
  }
  std::size_t size() const { return order_.size(); }
  std::span<const NodeId> order() const { return order_; }

 private:
  std::vector<NodeId> order_;
  std::unordered_set<NodeId> members_;
};

/// z = Ā^3 e_S for the current stack.
SparseVec stack_walk_scores(const Graph& g, const SeedStack& stack);

/// Appends up to `count` non-members with the largest positive z = Ā^3 e_S,
/// largest first; ties go to the smaller id.
SeedStack augment_step(const Graph& g, SeedStack stack, std::size_t count);

struct LemonEasyOptions {
  int rounds = 10;              // r
  std::size_t augment_size = 5; // f
  ExtractionSpec extraction = ExtractionSpec::adaptive_spec();
  bool parent_sweep = false;    // score prefixes with parent-graph cut/volume
};

struct LemonEasyLocal {
  SeedStack stack;
  std::vector<NodeId> order;  // stack followed by the remaining nodes
};

/// Seed-stack growth on an already extracted graph: for j = 0..rounds push
/// the top j * augment_size nodes of Ā^3 e_{S_j}; then append every other
/// node by descending final score.
LemonEasyLocal lemoneasy_order(const Graph& g, NodeId seed, int rounds, std::size_t augment_size);

struct LemonEasyResult {
  SweepResult sweep;        // prefix in parent ids
  std::vector<NodeId> stack;  // parent ids
  std::size_t subgraph_nodes = 0;
};

/// Extracts a subgraph around `seed`, grows the seed stack on it and sweeps
/// the stack order.
LemonEasyResult lemoneasy(const Graph& g, NodeId seed, const LemonEasyOptions& options = {});

}  // namespace lcd
