#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "curvlet/curvature.hpp"
#include "curvlet/graph.hpp"

namespace curvlet {

struct CbedConfig {
  double target_kappa_upper = 0.7;
  int max_iterations = 50;
  int cuts_per_iteration = 1;
  std::uint64_t seed = 0;
  // When set, removals that would disconnect the graph are skipped; if every
  // candidate in an iteration is blocked, the run stops with a guard note.
  bool connectivity_guard = false;
  CurvatureConfig curvature;
  // Unit-weight graphs refresh only curvatures within 2 hops of a removal
  // (provably sufficient there); this forces the full refresh for cross-checks.
  bool full_refresh_only = false;
};

enum class CbedStop { target_reached, iteration_cap };

struct CbedReport {
  int iterations = 0;
  std::vector<std::pair<int, int>> removed_edges;
  // Max curvature observed at each refresh; length = iterations + 1 (the
  // final entry is recomputed on the resulting graph). -inf when no edges.
  std::vector<double> kappa_max_trajectory;
  CbedStop terminated_by = CbedStop::target_reached;
  std::string guard_note;  // non-empty only when the connectivity guard intervened
};

// Common neighbors of the endpoints, i.e. the third vertices of triangles
// containing the edge.
std::vector<int> supporting_triangles(const Graph& g, int i, int j);

// Iteratively lowers the maximum curvature: each iteration refreshes all
// curvatures, selects the max-curvature edge (ties: smallest (i,j)), and
// cuts_per_iteration times picks one of its supporting triangles uniformly at
// random and removes one of that triangle's two other edges uniformly at
// random; an edge with no triangle left is removed itself. Stops when the max
// curvature is at or below target_kappa_upper or after max_iterations.
// Deterministic given (graph, config, seed).
std::pair<Graph, CbedReport> cbed_run(const Graph& g, const CbedConfig& cfg);

}  // namespace curvlet
