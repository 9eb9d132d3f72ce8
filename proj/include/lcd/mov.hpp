#pragma once

#include <span>
#include <vector>

#include "lcd/graph.hpp"
#include "lcd/sweep.hpp"

namespace lcd {

/// Dense seed vector s with s^T D 1 = 0 and s^T D s = 1.
struct MovSeedVector {
  std::vector<double> values;
};

/// Locally-biased Fiedler vector: minimizer of x^T L x subject to
/// x^T D x = 1, x^T D 1 = 0 and a seed-correlation floor (x^T D s)^2 >= kappa.
/// The floor is implied by the shift gamma and reported as kappa_achieved.
struct MovSolution {
  std::vector<double> x;
  double gamma = 0.0;
  double kappa_achieved = 0.0;
  std::size_t solver_iterations = 0;
  double residual_norm = 0.0;  // ||(L - gamma D)x - beta D s|| / ||beta D s||
};

struct MovOptions {
  double gamma = 0.0;  // must stay below the generalized Fiedler value
  double tolerance = 1e-8;
  std::size_t max_iterations = 0;  // 0 means 10 n
};

MovSeedVector mov_seed_vector(const Graph& g, std::span<const NodeId> seeds);

/// Solves (L - gamma D) x = beta D s on the D-orthogonal complement of the
/// constant vector by conjugate gradients, then fixes the scale so that
/// x^T D x = 1 and the sign so that x^T D s > 0.
///
/// Throws std::invalid_argument for disconnected graphs and AlgorithmError
/// when the iteration does not converge (gamma too close to lambda_2).
MovSolution mov_solve(const Graph& g, const MovSeedVector& s, const MovOptions& options = {});

/// Sweep over the nodes ordered by descending MOV score.
SweepResult mov_cluster(const Graph& g, std::span<const NodeId> seeds, const MovOptions& options = {});

}  // namespace lcd
