#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvlet/graph.hpp"

namespace curvlet {

inline constexpr double unreachable_distance = std::numeric_limits<double>::infinity();

struct ProbabilityMeasure {
  std::vector<std::pair<int, double>> support;  // (node, mass), masses > 0, nodes distinct

  // Checks distinct nodes, positive masses, total mass 1 within 1e-12.
  void validate() const;
};

// Lazy neighborhood measure: mass alpha at i itself, the remaining 1 - alpha
// spread over the neighbors proportionally to edge weight (or uniformly when
// uniform is set). alpha = 1 is the point mass; alpha < 1 on an isolated node
// is an error.
ProbabilityMeasure node_measure(const Graph& g, int i, double alpha, bool uniform = false);

// Dijkstra under current edge weights; unreachable nodes get +infinity.
std::vector<double> shortest_path_distances(const Graph& g, int source);
// Early-exit variant: stops once every target is settled. Non-target entries
// may be left at +infinity.
std::vector<double> shortest_path_distances(const Graph& g, int source, const std::vector<int>& targets);

// cost(r, c) = shortest-path distance from mu.support[r] to nu.support[c].
// Throws std::domain_error if any required pair is unreachable.
Eigen::MatrixXd support_distances(const Graph& g, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

struct TransportPlan {
  struct Entry {
    int source;  // node id from mu's support
    int target;  // node id from nu's support
    double mass;
  };
  std::vector<Entry> entries;
  double cost;
};

struct TransportResult {
  double cost;
  TransportPlan plan;
};

// Exact W1 via the transportation network simplex over the support bipartite
// graph. cost(r, c) pairs mu.support[r] with nu.support[c] and must be finite.
// The returned plan is an optimal vertex of the transportation polytope.
TransportResult wasserstein1_exact(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                                   const Eigen::MatrixXd& cost);

struct SinkhornParams {
  double reg = 0.01;     // entropic regularization strength
  int max_iter = 10000;  // iteration cap before giving up
  double tol = 1e-4;     // L1 marginal residual target
};

class SinkhornError : public std::runtime_error {
public:
  SinkhornError(const std::string& msg, int iterations, double last_residual)
      : std::runtime_error(msg), iterations(iterations), last_residual(last_residual) {}
  int iterations;
  double last_residual;
};

// Log-domain Sinkhorn followed by marginal-correction rounding, so the
// returned plan is exactly feasible and its cost upper-bounds the exact W1.
// Throws SinkhornError when the marginal residual does not reach tol within
// max_iter iterations.
TransportResult wasserstein1_sinkhorn(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                                      const Eigen::MatrixXd& cost, const SinkhornParams& params = {});

}  // namespace curvlet
