#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lcd/graph.hpp"
#include "lcd/sparse_vec.hpp"

namespace lcd {

enum class SeedWeighting { degree, uniform };

/// Initial probability distribution over a seed set.
struct SeedDistribution {
  std::vector<NodeId> seeds;
  std::vector<double> weights;  // sums to 1
  SeedWeighting mode = SeedWeighting::degree;

  /// weight(v) = d(v) / vol(S).
  static SeedDistribution degree_weighted(const Graph& g, std::span<const NodeId> seeds);
  /// weight(v) = 1 / |S|.
  static SeedDistribution uniform(std::span<const NodeId> seeds);

  SparseVec to_vector() const;
};

/// Unnormalized indicator e_S.
SparseVec indicator(std::span<const NodeId> nodes);

enum class WalkMatrix {
  transition,  // P = A D^{-1}, column stochastic
  normalized,  // (D+I)^{-1/2} (A+I) (D+I)^{-1/2}
};

/// Exact product M^k v for the chosen walk matrix.
SparseVec kwalk_vector(const Graph& g, const SparseVec& start, int k, WalkMatrix matrix);
SparseVec kwalk_vector(const Graph& g, const SeedDistribution& seeds, int k, WalkMatrix matrix);

/// One multiply by the chosen walk matrix.
SparseVec apply_walk(const Graph& g, const SparseVec& x, WalkMatrix matrix);

struct PushResult {
  SparseVec estimate;
  SparseVec residual;
  std::size_t pushes = 0;
};

/// Called after every push with the current estimate and residual.
using PushObserver = std::function<void(const SparseVec& estimate, const SparseVec& residual)>;

/// Personalized PageRank (1-alpha) sum_k alpha^k P^k p0 by residual push.
///
/// A node is pushed while r(v) >= epsilon * d(v), in FIFO order. On return
/// every node has r(v) < epsilon * d(v), and estimate + ppr(residual) equals
/// the exact vector, so ||D^{-1}(ppr - estimate)||_inf < epsilon.
PushResult ppr_push(const Graph& g, const SeedDistribution& seeds, double alpha, double epsilon,
                    const PushObserver& observer = {});

struct HeatKernelResult {
  SparseVec estimate;
  int taylor_degree = 0;
  std::size_t pushes = 0;
};

/// Smallest N with e^{-t} sum_{k>N} t^k/k! < epsilon / 2.
int heat_kernel_taylor_degree(double t, double epsilon);

/// Heat kernel e^{-t} sum_k t^k/k! P^k p0 by residual push over the truncated
/// Taylor series, with ||D^{-1}(hk - estimate)||_inf < epsilon.
HeatKernelResult hk_push(const Graph& g, const SeedDistribution& seeds, double t, double epsilon);

/// score(v) / d(v), or score(v) / (d(v) + 1) when `plus_one` is set.
SparseVec degree_normalize(const Graph& g, const SparseVec& v, bool plus_one = false);

/// Up to k support nodes by descending score; ties go to the smaller id.
std::vector<NodeId> top_k(const SparseVec& v, std::size_t k);

/// Every support node by descending score; ties go to the smaller id.
std::vector<NodeId> rank_support(const SparseVec& v);

enum class DiffusionKind { kwalk, ppr, hk };

/// Which diffusion to run plus its parameters. Only the fields relevant to
/// `kind` are meaningful; the factories validate ranges.
struct DiffusionSpec {
  DiffusionKind kind = DiffusionKind::ppr;
  int k = 3;
  double alpha = 0.99;
  double t = 4.0;
  double epsilon = 1e-4;

  static DiffusionSpec kwalk(int k);
  static DiffusionSpec ppr(double alpha, double epsilon);
  static DiffusionSpec hk(double t, double epsilon);

  void validate() const;
  std::string name() const;
};

/// Runs `spec` from a single seed node. k-walks use the normalized matrix
/// on e_seed; PPR and HK use the degree-weighted seed distribution.
SparseVec diffuse(const Graph& g, NodeId seed, const DiffusionSpec& spec);

}  // namespace lcd
