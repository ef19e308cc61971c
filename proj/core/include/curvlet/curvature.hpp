#pragma once

#include <optional>
#include <vector>

#include "curvlet/graph.hpp"
#include "curvlet/transport.hpp"

namespace curvlet {

enum class W1Solver { exact, sinkhorn };

struct CurvatureConfig {
  double alpha = 0.0;                  // laziness of the node measures
  W1Solver solver = W1Solver::exact;
  SinkhornParams sinkhorn;             // used when solver == sinkhorn
  bool uniform_masses = false;         // ignore edge weights when spreading neighbor mass
  int workers = 0;                     // 0: resolve from environment / hardware
};

// kappa(i,j) = 1 - W1(m_i, m_j) / d_s(i,j) with d_s the shortest-path
// distance between the endpoints (which can undercut the direct edge weight
// on reweighted graphs).
struct EdgeCurvatureDetail {
  double kappa;
  double w1;
  double distance;
};

EdgeCurvatureDetail edge_curvature_detail(const Graph& g, int i, int j, const CurvatureConfig& cfg = {});
double edge_curvature(const Graph& g, int i, int j, const CurvatureConfig& cfg = {});

// Values indexed by the graph's canonical edge order.
struct CurvatureMap {
  std::vector<double> kappa;
  std::optional<std::vector<double>> normalized;

  double min() const;
  double max() const;
};

// Edge-parallel; results are merged in edge order, so output is deterministic
// for the exact solver regardless of worker count.
CurvatureMap all_curvatures(const Graph& g, const CurvatureConfig& cfg = {});

// Fills normalized with kappa / max|kappa| (all-zero maps stay zero), which
// keeps sign, zeros, and ordering, mapping onto [-1, 1].
CurvatureMap normalize_curvatures(CurvatureMap map);

// One discrete Ricci-flow update: new weight d_s(i,j) * (1 - kappa(i,j)) per
// edge, computed under the incoming weights. On unweighted graphs this equals
// the homophilic zeta transform edge-wise.
std::vector<double> ricci_flow_step(const Graph& g, const CurvatureConfig& cfg = {});

// Lower bound -2 * (1 - a_ij/d_i - a_ij/d_j)_+ with weighted degrees and no
// self-loop, 0 when either endpoint has (weighted) degree <= 1. Never positive.
double jost_lower_bound(const Graph& g, int i, int j);

// Upper bound (# triangles on the edge) / max(d_i, d_j), weighted degrees.
double triangle_upper_bound(const Graph& g, int i, int j);

struct HistogramBin {
  double left;
  double right;
  long count;
};

// Equal-width bins spanning [min, max] of the values (degenerate ranges get a
// single unit-width bin); the last bin is right-closed.
std::vector<HistogramBin> curvature_histogram(const CurvatureMap& map, int bins);

}  // namespace curvlet
