#include "lcd/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace lcd {

SeedDistribution SeedDistribution::degree_weighted(const Graph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  SeedDistribution s;
  s.mode = SeedWeighting::degree;
  s.seeds.assign(seeds.begin(), seeds.end());
  double volume = 0.0;
  for (NodeId v : seeds) {
    if (!g.contains(v)) throw std::invalid_argument("seed id out of range");
    volume += g.degree(v);
  }
  if (volume == 0.0) throw std::invalid_argument("seed set has zero volume");
  for (NodeId v : seeds) s.weights.push_back(g.degree(v) / volume);
  return s;
}

SeedDistribution SeedDistribution::uniform(std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set is empty");
  SeedDistribution s;
  s.mode = SeedWeighting::uniform;
  s.seeds.assign(seeds.begin(), seeds.end());
  s.weights.assign(seeds.size(), 1.0 / static_cast<double>(seeds.size()));
  return s;
}

SparseVec SeedDistribution::to_vector() const {
  SparseVec out;
  for (std::size_t i = 0; i < seeds.size(); ++i) out.add(seeds[i], weights[i]);
  return out;
}

SparseVec indicator(std::span<const NodeId> nodes) {
  SparseVec out;
  for (NodeId v : nodes) out.set(v, 1.0);
  return out;
}

SparseVec apply_walk(const Graph& g, const SparseVec& x, WalkMatrix matrix) {
  std::vector<double> acc(g.num_nodes(), 0.0);
  std::vector<char> touched(g.num_nodes(), 0);
  std::vector<NodeId> hit;
  auto bump = [&](NodeId u, double value) {
    if (!touched[u]) {
      touched[u] = 1;
      hit.push_back(u);
    }
    acc[u] += value;
  };
  for (const auto& [v, value] : x.sorted_entries()) {
    if (!g.contains(v)) throw std::invalid_argument("vector entry outside graph");
    const double dv = g.degree(v);
    if (matrix == WalkMatrix::transition) {
      if (dv == 0.0) throw std::invalid_argument("transition walk from a zero-degree node");
      for (NodeId u : g.neighbors(v)) bump(u, value / dv);
    } else {
      const double sv = std::sqrt(dv + 1.0);
      bump(v, value / (dv + 1.0));
      for (NodeId u : g.neighbors(v)) bump(u, value / (sv * std::sqrt(g.degree(u) + 1.0)));
    }
  }
  std::sort(hit.begin(), hit.end());
  SparseVec out;
  for (NodeId u : hit) out.set(u, acc[u]);
  return out;
}

SparseVec kwalk_vector(const Graph& g, const SparseVec& start, int k, WalkMatrix matrix) {
  if (k < 0) throw std::invalid_argument("walk length must be non-negative");
  SparseVec x = start;
  for (int step = 0; step < k; ++step) x = apply_walk(g, x, matrix);
  return x;
}

SparseVec kwalk_vector(const Graph& g, const SeedDistribution& seeds, int k, WalkMatrix matrix) {
  return kwalk_vector(g, seeds.to_vector(), k, matrix);
}

PushResult ppr_push(const Graph& g, const SeedDistribution& seeds, double alpha, double epsilon,
                    const PushObserver& observer) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

  PushResult out;
  out.residual = seeds.to_vector();
  std::deque<NodeId> queue;
  std::unordered_set<NodeId> queued;
  auto over = [&](NodeId v) { return out.residual.get(v) >= epsilon * g.degree(v); };
  for (const auto& [v, mass] : out.residual.sorted_entries()) {
    if (g.degree(v) == 0) throw std::invalid_argument("PageRank seed has zero degree");
    if (over(v) && queued.insert(v).second) queue.push_back(v);
  }

  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    queued.erase(u);
    const double mass = out.residual.get(u);
    if (!(mass >= epsilon * g.degree(u))) continue;

    out.estimate.add(u, (1.0 - alpha) * mass);
    out.residual.erase(u);
    const double share = alpha * mass / g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      out.residual.add(v, share);
      if (over(v) && queued.insert(v).second) queue.push_back(v);
    }
    ++out.pushes;
    if (observer) observer(out.estimate, out.residual);
  }
  return out;
}

namespace {

// Taylor weights e^{-t} t^k / k! for k = 0..count-1, computed in log space.
std::vector<double> heat_kernel_weights(double t, int count) {
  std::vector<double> c(static_cast<std::size_t>(count), 0.0);
  if (t == 0.0) {
    c[0] = 1.0;
    return c;
  }
  const double log_t = std::log(t);
  for (int k = 0; k < count; ++k) c[k] = std::exp(-t + k * log_t - std::lgamma(k + 1.0));
  return c;
}

}  // namespace

int heat_kernel_taylor_degree(double t, double epsilon) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat kernel t must be non-negative");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int horizon = static_cast<int>(std::ceil(4.0 * t)) + 64;
  auto c = heat_kernel_weights(t, horizon + 1);
  // tail[N] = sum_{k > N} c_k, accumulated from the small end.
  std::vector<double> tail(c.size(), 0.0);
  for (int k = horizon - 1; k >= 0; --k) tail[k] = tail[k + 1] + c[k + 1];
  for (int n = 0; n <= horizon; ++n) {
    if (tail[n] < epsilon / 2.0) return n;
  }
  throw std::invalid_argument("heat kernel t too large for the Taylor horizon");
}

HeatKernelResult hk_push(const Graph& g, const SeedDistribution& seeds, double t, double epsilon) {
  HeatKernelResult out;
  const int degree = heat_kernel_taylor_degree(t, epsilon);
  out.taylor_degree = degree;
  auto c = heat_kernel_weights(t, degree + 1);

  if (degree == 0) {
    for (std::size_t i = 0; i < seeds.seeds.size(); ++i) out.estimate.add(seeds.seeds[i], c[0] * seeds.weights[i]);
    return out;
  }

  // psi[j] = sum_{m=0}^{N-j} c_{j+m} / c_j: how much a unit of level-j residual
  // can still contribute to the truncated series.
  std::vector<double> psi(static_cast<std::size_t>(degree) + 1, 1.0);
  for (int j = degree - 1; j >= 0; --j) psi[j] = 1.0 + t / (j + 1) * psi[j + 1];
  // Levels 0..N-1 hold residual; level N flows straight into the estimate.
  std::vector<double> threshold(static_cast<std::size_t>(degree));
  for (int j = 0; j < degree; ++j) threshold[j] = epsilon / (2.0 * degree * psi[j]);

  std::vector<SparseVec> residual(static_cast<std::size_t>(degree));
  std::deque<std::pair<NodeId, int>> queue;
  std::unordered_set<std::uint64_t> queued;
  auto key = [degree](NodeId v, int j) { return static_cast<std::uint64_t>(v) * (degree + 1) + j; };
  auto maybe_enqueue = [&](NodeId v, int j) {
    if (residual[j].get(v) >= threshold[j] * g.degree(v) && queued.insert(key(v, j)).second)
      queue.emplace_back(v, j);
  };

  for (std::size_t i = 0; i < seeds.seeds.size(); ++i) {
    if (g.degree(seeds.seeds[i]) == 0) throw std::invalid_argument("heat kernel seed has zero degree");
    residual[0].add(seeds.seeds[i], c[0] * seeds.weights[i]);
  }
  for (NodeId v : seeds.seeds) maybe_enqueue(v, 0);

  while (!queue.empty()) {
    auto [v, j] = queue.front();
    queue.pop_front();
    queued.erase(key(v, j));
    const double mass = residual[j].get(v);
    if (mass == 0.0) continue;
    out.estimate.add(v, mass);
    residual[j].erase(v);
    const double update = t / (j + 1) * mass / g.degree(v);
    if (j + 1 == degree) {
      for (NodeId u : g.neighbors(v)) out.estimate.add(u, update);
    } else {
      for (NodeId u : g.neighbors(v)) {
        residual[j + 1].add(u, update);
        maybe_enqueue(u, j + 1);
      }
    }
    ++out.pushes;
  }
  return out;
}

SparseVec degree_normalize(const Graph& g, const SparseVec& v, bool plus_one) {
  SparseVec out;
  for (const auto& [u, score] : v) {
    const double d = g.degree(u) + (plus_one ? 1.0 : 0.0);
    if (d == 0.0) throw std::invalid_argument("degree_normalize: zero-degree node in support");
    out.set(u, score / d);
  }
  return out;
}

namespace {

auto by_score_then_id() {
  return [](const SparseVec::Entry& a, const SparseVec::Entry& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  };
}

}  // namespace

std::vector<NodeId> top_k(const SparseVec& v, std::size_t k) {
  if (k == 0) throw std::invalid_argument("top_k: k must be at least 1");
  std::vector<SparseVec::Entry> entries(v.begin(), v.end());
  const auto keep = std::min(k, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep), entries.end(),
                    by_score_then_id());
  std::vector<NodeId> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(entries[i].first);
  return out;
}

std::vector<NodeId> rank_support(const SparseVec& v) {
  if (v.empty()) return {};
  return top_k(v, v.support_size());
}

DiffusionSpec DiffusionSpec::kwalk(int k) {
  DiffusionSpec s;
  s.kind = DiffusionKind::kwalk;
  s.k = k;
  s.validate();
  return s;
}

DiffusionSpec DiffusionSpec::ppr(double alpha, double epsilon) {
  DiffusionSpec s;
  s.kind = DiffusionKind::ppr;
  s.alpha = alpha;
  s.epsilon = epsilon;
  s.validate();
  return s;
}

DiffusionSpec DiffusionSpec::hk(double t, double epsilon) {
  DiffusionSpec s;
  s.kind = DiffusionKind::hk;
  s.t = t;
  s.epsilon = epsilon;
  s.validate();
  return s;
}

void DiffusionSpec::validate() const {
  switch (kind) {
    case DiffusionKind::kwalk:
      if (k < 0) throw std::invalid_argument("k-walk length must be non-negative");
      break;
    case DiffusionKind::ppr:
      if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
      if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
      break;
    case DiffusionKind::hk:
      if (!(t >= 0.0)) throw std::invalid_argument("t must be non-negative");
      if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
      break;
  }
}

std::string DiffusionSpec::name() const {
  std::ostringstream out;
  switch (kind) {
    case DiffusionKind::kwalk: out << "kwalk" << k; break;
    case DiffusionKind::ppr: out << "ppr(alpha=" << alpha << ";eps=" << epsilon << ")"; break;
    case DiffusionKind::hk: out << "hk(t=" << t << ";eps=" << epsilon << ")"; break;
  }
  return out.str();
}

SparseVec diffuse(const Graph& g, NodeId seed, const DiffusionSpec& spec) {
  spec.validate();
  if (!g.contains(seed)) throw std::invalid_argument("seed id out of range");
  const NodeId seeds[] = {seed};
  switch (spec.kind) {
    case DiffusionKind::kwalk:
      return kwalk_vector(g, indicator(seeds), spec.k, WalkMatrix::normalized);
    case DiffusionKind::ppr:
      return ppr_push(g, SeedDistribution::degree_weighted(g, seeds), spec.alpha, spec.epsilon).estimate;
    case DiffusionKind::hk:
      return hk_push(g, SeedDistribution::degree_weighted(g, seeds), spec.t, spec.epsilon).estimate;
  }
  return {};
}

}  // namespace lcd
