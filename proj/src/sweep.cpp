#include "lcd/sweep.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "lcd/extract.hpp"

namespace lcd {

double conductance(const Graph& g, std::span<const NodeId> members) {
  if (members.empty()) throw std::invalid_argument("conductance: empty set");
  std::vector<char> inside(g.num_nodes(), 0);
  std::size_t distinct = 0;
  std::uint64_t volume = 0;
  for (NodeId v : members) {
    if (!g.contains(v)) throw std::invalid_argument("conductance: node id out of range");
    if (inside[v]) continue;
    inside[v] = 1;
    ++distinct;
    volume += g.degree(v);
  }
  if (distinct == g.num_nodes()) throw std::invalid_argument("conductance: set covers the whole graph");
  std::uint64_t cut = 0;
  for (NodeId v : members) {
    if (!inside[v]) continue;
    for (NodeId u : g.neighbors(v)) cut += inside[u] ? 0 : 1;
    inside[v] = 2;  // count each member once even if listed twice
  }
  const auto denom = std::min(volume, g.total_volume() - volume);
  if (denom == 0) {
    if (cut == 0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(cut) / static_cast<double>(denom);
}

SweepResult sweep(const Graph& g, std::span<const NodeId> order) {
  if (order.empty()) throw std::invalid_argument("sweep: empty order");
  const std::size_t limit = std::min<std::size_t>(order.size(), g.num_nodes() - 1);
  if (limit == 0) throw std::invalid_argument("sweep: graph has a single node");

  std::unordered_set<NodeId> inside;
  inside.reserve(limit * 2);
  SweepResult out;
  out.profile.reserve(limit);
  std::uint64_t volume = 0;
  std::int64_t cut = 0;
  const auto total = g.total_volume();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId v = order[i];
    if (!g.contains(v)) throw std::invalid_argument("sweep: node id out of range");
    if (!inside.insert(v).second) throw std::invalid_argument("sweep: duplicate node in order");
    if (i >= limit) continue;  // validated but never scored
    std::int64_t internal = 0;
    for (NodeId u : g.neighbors(v)) internal += inside.count(u);
    cut += static_cast<std::int64_t>(g.degree(v)) - 2 * internal;
    volume += g.degree(v);
    const auto denom = std::min(volume, total - volume);
    double phi;
    if (denom == 0) {
      phi = cut == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      phi = static_cast<double>(cut) / static_cast<double>(denom);
    }
    out.profile.push_back(phi);
    if (phi < best) {
      best = phi;
      out.prefix_index = i;
    }
  }
  out.best_conductance = best;
  out.best_prefix.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(out.prefix_index + 1));
  return out;
}

SweepResult sweep_in_parent(const Graph& parent, std::span<const NodeId> order) {
  return sweep(parent, order);
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::unordered_set<NodeId> small(a.begin(), a.end());
  std::size_t common = 0;
  for (NodeId v : b) common += small.count(v);
  return common;
}

double precision(std::span<const NodeId> found, std::span<const NodeId> truth) {
  if (found.empty()) throw std::invalid_argument("precision: empty output set");
  return static_cast<double>(intersection_size(found, truth)) / static_cast<double>(found.size());
}

double f1_score(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double f1(std::span<const NodeId> found, std::span<const NodeId> truth) {
  if (truth.empty()) throw std::invalid_argument("f1: empty ground truth");
  const double p = found.empty() ? 0.0 : precision(found, truth);
  return f1_score(p, recall(found, truth));
}

}  // namespace lcd
