#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcd/graph.hpp"

namespace lcd {

enum class ExtractionMethod { kwalk, ppr, ppr_adaptive };

struct ExtractionSpec {
  ExtractionMethod method = ExtractionMethod::ppr_adaptive;
  int k = 3;                      // kwalk
  double alpha = 0.99;            // ppr, ppr_adaptive
  double epsilon = 1e-4;          // ppr
  std::size_t target_nodes = 3000;
  // Estimated average community degree; the graph's average degree if unset.
  std::optional<double> degree_estimate;
  // Normalize scores by d(v)+1 instead of d(v).
  bool normalize_plus_one = false;

  static ExtractionSpec kwalk_spec(int k);
  static ExtractionSpec ppr_spec(double alpha = 0.99, double epsilon = 1e-4);
  static ExtractionSpec adaptive_spec(std::optional<double> degree_estimate = std::nullopt,
                                      double alpha = 0.99);

  void validate() const;
  std::string name() const;
};

struct ExtractionResult {
  std::vector<NodeId> nodes;  // parent ids in diffusion-rank order
  Graph subgraph;
  IdMap id_map;               // subgraph id -> parent id
  NodeId seed_local = 0;      // the seed's id inside `subgraph`
  bool seed_forced = false;   // seed was appended after missing the ranking
  // Resolved parameters.
  int k = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double push_tolerance = 0.0;  // threshold handed to ppr_push
};

struct PageRankParams {
  double alpha;
  double epsilon;
};

/// Target node count used by the adaptive rule: target_nodes when the graph
/// has at least that many nodes, otherwise ceil(n / 5).
std::size_t adaptive_target_nodes(NodeId n, std::size_t target_nodes);

/// Chooses epsilon so that 1 / (epsilon (1 - alpha)) equals the desired edge
/// volume N* x degree_estimate. epsilon is the accuracy of the unscaled
/// system (I - alpha P) y = p0; extract() therefore pushes the scaled vector
/// x = (1 - alpha) y at tolerance epsilon (1 - alpha).
PageRankParams adaptive_ppr_params(NodeId n, std::size_t target_nodes, double degree_estimate,
                                   double alpha = 0.99);
PageRankParams adaptive_ppr_params(const Graph& g, std::size_t target_nodes, double degree_estimate,
                                   double alpha = 0.99);

/// 2m / n.
double average_degree(const Graph& g);

/// Diffuses from `seed`, degree-normalizes, keeps the top target_nodes and
/// builds the induced subgraph. The seed is always part of the result.
ExtractionResult extract(const Graph& g, NodeId seed, const ExtractionSpec& spec);

/// |C ∩ T| / |C|.
double recall(std::span<const NodeId> found, std::span<const NodeId> truth);

}  // namespace lcd
