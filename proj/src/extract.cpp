#include "lcd/extract.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lcd/diffusion.hpp"
#include "lcd/sweep.hpp"

namespace lcd {

ExtractionSpec ExtractionSpec::kwalk_spec(int k) {
  ExtractionSpec s;
  s.method = ExtractionMethod::kwalk;
  s.k = k;
  return s;
}

ExtractionSpec ExtractionSpec::ppr_spec(double alpha, double epsilon) {
  ExtractionSpec s;
  s.method = ExtractionMethod::ppr;
  s.alpha = alpha;
  s.epsilon = epsilon;
  return s;
}

ExtractionSpec ExtractionSpec::adaptive_spec(std::optional<double> degree_estimate, double alpha) {
  ExtractionSpec s;
  s.method = ExtractionMethod::ppr_adaptive;
  s.degree_estimate = degree_estimate;
  s.alpha = alpha;
  return s;
}

void ExtractionSpec::validate() const {
  if (target_nodes < 1) throw std::invalid_argument("target_nodes must be at least 1");
  if (method == ExtractionMethod::kwalk && k < 0) throw std::invalid_argument("k must be non-negative");
  if (method != ExtractionMethod::kwalk && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (method == ExtractionMethod::ppr && !(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (degree_estimate && !(*degree_estimate > 0.0)) throw std::invalid_argument("degree estimate must be positive");
}

std::string ExtractionSpec::name() const {
  std::ostringstream out;
  switch (method) {
    case ExtractionMethod::kwalk: out << "kwalk" << k; break;
    case ExtractionMethod::ppr: out << "ppr"; break;
    case ExtractionMethod::ppr_adaptive: out << "ppr-d"; break;
  }
  return out.str();
}

std::size_t adaptive_target_nodes(NodeId n, std::size_t target_nodes) {
  if (n >= target_nodes) return target_nodes;
  return (static_cast<std::size_t>(n) + 4) / 5;
}

PageRankParams adaptive_ppr_params(NodeId n, std::size_t target_nodes, double degree_estimate, double alpha) {
  if (target_nodes < 1) throw std::invalid_argument("target_nodes must be at least 1");
  if (!(degree_estimate > 0.0)) throw std::invalid_argument("degree estimate must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const auto nodes = static_cast<double>(adaptive_target_nodes(n, target_nodes));
  const double volume = nodes * degree_estimate;
  return {alpha, 1.0 / ((1.0 - alpha) * volume)};
}

PageRankParams adaptive_ppr_params(const Graph& g, std::size_t target_nodes, double degree_estimate,
                                   double alpha) {
  return adaptive_ppr_params(g.num_nodes(), target_nodes, degree_estimate, alpha);
}

double average_degree(const Graph& g) {
  if (g.num_nodes() == 0) return 0.0;
  return static_cast<double>(g.total_volume()) / g.num_nodes();
}

ExtractionResult extract(const Graph& g, NodeId seed, const ExtractionSpec& spec) {
  spec.validate();
  if (!g.contains(seed)) throw std::invalid_argument("extract: seed id out of range");

  ExtractionResult out;
  SparseVec scores;
  const NodeId seeds[] = {seed};
  switch (spec.method) {
    case ExtractionMethod::kwalk:
      out.k = spec.k;
      scores = kwalk_vector(g, indicator(seeds), spec.k, WalkMatrix::normalized);
      break;
    case ExtractionMethod::ppr:
    case ExtractionMethod::ppr_adaptive: {
      PageRankParams params{spec.alpha, spec.epsilon};
      if (spec.method == ExtractionMethod::ppr_adaptive) {
        params = adaptive_ppr_params(g, spec.target_nodes, spec.degree_estimate.value_or(average_degree(g)),
                                     spec.alpha);
      }
      out.alpha = params.alpha;
      out.epsilon = params.epsilon;
      // The adaptive epsilon bounds the residual of the unscaled system
      // (I - alpha P) y = p0, y = x / (1 - alpha); in the scaled push that is
      // a tolerance of epsilon (1 - alpha), giving output volume ~ N* x d.
      out.push_tolerance = spec.method == ExtractionMethod::ppr_adaptive ? params.epsilon * (1.0 - params.alpha)
                                                                           : params.epsilon;
      scores = ppr_push(g, SeedDistribution::degree_weighted(g, seeds), params.alpha, out.push_tolerance).estimate;
      break;
    }
  }

  out.nodes = scores.empty() ? std::vector<NodeId>{}
                             : top_k(degree_normalize(g, scores, spec.normalize_plus_one), spec.target_nodes);
  if (std::find(out.nodes.begin(), out.nodes.end(), seed) == out.nodes.end()) {
    out.nodes.push_back(seed);
    out.seed_forced = true;
  }
  auto sub = induced_subgraph(g, out.nodes);
  out.subgraph = std::move(sub.graph);
  out.id_map = std::move(sub.ids);
  out.seed_local = *out.id_map.find(seed);
  return out;
}

double recall(std::span<const NodeId> found, std::span<const NodeId> truth) {
  if (truth.empty()) throw std::invalid_argument("recall: empty ground truth");
  return static_cast<double>(intersection_size(found, truth)) / static_cast<double>(truth.size());
}

}  // namespace lcd
