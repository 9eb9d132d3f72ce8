#include "lcd/mov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lcd/errors.hpp"

namespace lcd {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Removes the component along the unit vector `u`.
void deflate(std::vector<double>& v, std::span<const double> u) {
  const double c = dot(v, u);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
}

}  // namespace

MovSeedVector mov_seed_vector(const Graph& g, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("mov_seed_vector: empty seed set");
  std::vector<char> in_seed(g.num_nodes(), 0);
  double vol_s = 0.0;
  for (NodeId v : seeds) {
    if (!g.contains(v)) throw std::invalid_argument("mov_seed_vector: seed id out of range");
    if (in_seed[v]) continue;
    in_seed[v] = 1;
    vol_s += g.degree(v);
  }
  const double vol_g = static_cast<double>(g.total_volume());
  const double vol_rest = vol_g - vol_s;
  if (vol_s == 0.0 || vol_rest == 0.0)
    throw std::invalid_argument("mov_seed_vector: seeds must be a proper subset with positive volume");

  const double scale = std::sqrt(vol_s * vol_rest / vol_g);
  MovSeedVector s;
  s.values.resize(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) s.values[v] = in_seed[v] ? scale / vol_s : -scale / vol_rest;

  double d_one = 0.0;
  double d_norm = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    d_one += g.degree(v) * s.values[v];
    d_norm += g.degree(v) * s.values[v] * s.values[v];
  }
  if (std::abs(d_one) > 1e-10 * scale * 2.0 || std::abs(d_norm - 1.0) > 1e-10)
    throw AlgorithmError("mov_seed_vector: constructed vector violates its normalization");
  return s;
}

MovSolution mov_solve(const Graph& g, const MovSeedVector& s, const MovOptions& options) {
  const NodeId n = g.num_nodes();
  if (s.values.size() != n) throw std::invalid_argument("mov_solve: seed vector size mismatch");
  if (n < 2 || !is_connected(g)) throw std::invalid_argument("mov_solve: graph must be connected with n >= 2");

  // Work with y = D^{1/2} x so the operator D^{-1/2}(L - gamma D)D^{-1/2}
  // is symmetric; its null direction is D^{1/2} 1.
  std::vector<double> sqrt_d(n), inv_sqrt_d(n), null_dir(n);
  double d_min = g.degree(0), d_max = g.degree(0);
  for (NodeId v = 0; v < n; ++v) {
    sqrt_d[v] = std::sqrt(static_cast<double>(g.degree(v)));
    inv_sqrt_d[v] = 1.0 / sqrt_d[v];
    null_dir[v] = sqrt_d[v];
    d_min = std::min<double>(d_min, g.degree(v));
    d_max = std::max<double>(d_max, g.degree(v));
  }
  const double null_norm = std::sqrt(dot(null_dir, null_dir));
  for (auto& u : null_dir) u /= null_norm;

  auto apply = [&](const std::vector<double>& y, std::vector<double>& out) {
    for (NodeId v = 0; v < n; ++v) {
      double acc = (1.0 - options.gamma) * y[v];
      for (NodeId u : g.neighbors(v)) acc -= inv_sqrt_d[v] * inv_sqrt_d[u] * y[u];
      out[v] = acc;
    }
    deflate(out, null_dir);
  };

  std::vector<double> rhs(n);
  for (NodeId v = 0; v < n; ++v) rhs[v] = sqrt_d[v] * s.values[v];
  deflate(rhs, null_dir);
  const double rhs_norm = std::sqrt(dot(rhs, rhs));
  if (rhs_norm == 0.0) throw std::invalid_argument("mov_solve: seed vector is orthogonal to every direction");

  const double cg_tol = 0.1 * options.tolerance * std::sqrt(d_min / d_max);
  const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * static_cast<std::size_t>(n);

  std::vector<double> y(n, 0.0), r = rhs, p = rhs, q(n);
  double rr = dot(r, r);
  std::size_t iterations = 0;
  while (std::sqrt(rr) > cg_tol * rhs_norm) {
    if (iterations == cap) {
      std::ostringstream msg;
      msg << "mov_solve: no convergence after " << cap << " iterations (gamma=" << options.gamma << ")";
      throw AlgorithmError(msg.str());
    }
    apply(p, q);
    const double curvature = dot(p, q);
    if (!(curvature > 0.0)) throw AlgorithmError("mov_solve: operator not positive definite; gamma >= lambda_2");
    const double step = rr / curvature;
    for (NodeId v = 0; v < n; ++v) {
      y[v] += step * p[v];
      r[v] -= step * q[v];
    }
    deflate(r, null_dir);
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    for (NodeId v = 0; v < n; ++v) p[v] = r[v] + beta * p[v];
    rr = rr_next;
    ++iterations;
  }

  MovSolution out;
  out.gamma = options.gamma;
  out.solver_iterations = iterations;
  out.x.resize(n);
  for (NodeId v = 0; v < n; ++v) out.x[v] = inv_sqrt_d[v] * y[v];

  // Enforce x^T D 1 = 0 and x^T D x = 1 exactly.
  double d_one = 0.0;
  for (NodeId v = 0; v < n; ++v) d_one += g.degree(v) * out.x[v];
  const double shift = d_one / static_cast<double>(g.total_volume());
  for (auto& xv : out.x) xv -= shift;
  double d_norm = 0.0, d_seed = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    d_norm += g.degree(v) * out.x[v] * out.x[v];
    d_seed += g.degree(v) * out.x[v] * s.values[v];
  }
  const double scale = (d_seed < 0.0 ? -1.0 : 1.0) / std::sqrt(d_norm);
  for (auto& xv : out.x) xv *= scale;
  out.kappa_achieved = (d_seed * scale) * (d_seed * scale);

  // KKT residual in the original variables with the best-fitting beta.
  std::vector<double> lhs(n), ds(n);
  for (NodeId v = 0; v < n; ++v) {
    double acc = (g.degree(v) - options.gamma * g.degree(v)) * out.x[v];
    for (NodeId u : g.neighbors(v)) acc -= out.x[u];
    lhs[v] = acc;
    ds[v] = g.degree(v) * s.values[v];
  }
  const double beta = dot(ds, lhs) / dot(ds, ds);
  double res = 0.0;
  for (NodeId v = 0; v < n; ++v) res += (lhs[v] - beta * ds[v]) * (lhs[v] - beta * ds[v]);
  out.residual_norm = std::sqrt(res) / (std::abs(beta) * std::sqrt(dot(ds, ds)));
  if (!(out.residual_norm <= options.tolerance)) {
    std::ostringstream msg;
    msg << "mov_solve: residual " << out.residual_norm << " above tolerance " << options.tolerance;
    throw AlgorithmError(msg.str());
  }
  return out;
}

SweepResult mov_cluster(const Graph& g, std::span<const NodeId> seeds, const MovOptions& options) {
  auto solution = mov_solve(g, mov_seed_vector(g, seeds), options);
  std::vector<NodeId> order(g.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return solution.x[a] > solution.x[b]; });
  return sweep(g, order);
}

}  // namespace lcd
