#include "lcd/lemoneasy.hpp"

#include <algorithm>
#include <stdexcept>

#include "lcd/diffusion.hpp"

namespace lcd {

SparseVec stack_walk_scores(const Graph& g, const SeedStack& stack) {
  return kwalk_vector(g, indicator(stack.order()), 3, WalkMatrix::normalized);
}

namespace {

std::vector<NodeId> ranked_candidates(const SparseVec& z, const SeedStack& stack) {
  std::vector<SparseVec::Entry> candidates;
  for (const auto& entry : z) {
    if (entry.second > 0.0 && !stack.contains(entry.first)) candidates.push_back(entry);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  std::vector<NodeId> out;
  out.reserve(candidates.size());
  for (const auto& [v, score] : candidates) out.push_back(v);
  return out;
}

}  // namespace

SeedStack augment_step(const Graph& g, SeedStack stack, std::size_t count) {
  if (count == 0) return stack;
  auto ranked = ranked_candidates(stack_walk_scores(g, stack), stack);
  if (ranked.size() > count) ranked.resize(count);
  for (NodeId v : ranked) stack.push(v);
  return stack;
}

LemonEasyLocal lemoneasy_order(const Graph& g, NodeId seed, int rounds, std::size_t augment_size) {
  if (rounds < 0) throw std::invalid_argument("lemoneasy: rounds must be non-negative");
  if (augment_size < 1) throw std::invalid_argument("lemoneasy: augment size must be at least 1");
  if (!g.contains(seed)) throw std::invalid_argument("lemoneasy: seed id out of range");

  SeedStack stack(seed);
  for (int j = 0; j <= rounds; ++j) stack = augment_step(g, std::move(stack), static_cast<std::size_t>(j) * augment_size);

  LemonEasyLocal out{stack, {}};
  out.order.assign(stack.order().begin(), stack.order().end());
  const auto z = stack_walk_scores(g, stack);
  std::vector<NodeId> rest;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (!stack.contains(v)) rest.push_back(v);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](NodeId a, NodeId b) { return z.get(a) > z.get(b); });
  out.order.insert(out.order.end(), rest.begin(), rest.end());
  return out;
}

LemonEasyResult lemoneasy(const Graph& g, NodeId seed, const LemonEasyOptions& options) {
  auto extraction = extract(g, seed, options.extraction);
  const auto& sub = extraction.subgraph;
  auto local = lemoneasy_order(sub, extraction.seed_local, options.rounds, options.augment_size);

  auto to_parent = [&](std::span<const NodeId> ids) {
    std::vector<NodeId> out;
    out.reserve(ids.size());
    for (NodeId v : ids) out.push_back(static_cast<NodeId>(extraction.id_map.label(v)));
    return out;
  };

  LemonEasyResult out;
  out.subgraph_nodes = sub.num_nodes();
  out.stack = to_parent(local.stack.order());
  if (options.parent_sweep) {
    out.sweep = sweep_in_parent(g, to_parent(local.order));
  } else {
    out.sweep = sweep(sub, local.order);
    out.sweep.best_prefix = to_parent(out.sweep.best_prefix);
  }
  return out;
}

}  // namespace lcd
