#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "curvlet/curvature.hpp"
#include "curvlet/graph.hpp"

namespace curvlet {

enum class ZetaKind { hom, het };

// Homophilic transform 1 - kappa: maps [-2, 1] onto [0, 3], decreasing.
double zeta_hom(double kappa);

// Heterophilic transform (1 + kappa_tilde) / 2 on normalized curvature:
// maps [-1, 1] onto [0, 1], increasing. Inputs outside [-1, 1] (beyond a tiny
// rounding slack) are a domain error.
double zeta_het(double kappa_tilde);

// L_kappa = I - D~^{-1/2} (A o zeta + I) D~^{-1/2}, where A o zeta replaces
// each edge weight by its zeta value and D~ holds the row sums of
// (A o zeta + I). Self-loops keep weight 1 regardless of zeta. Symmetric PSD.
Eigen::MatrixXd curvature_laplacian(const Graph& g, const std::vector<double>& zeta_weights);

struct ReweightedGraph {
  // Base topology with zeta values as edge weights; edges whose zeta value is
  // ~0 cannot be carried (weights must stay positive) and are dropped here.
  Graph graph;
  std::vector<double> zeta_weights;             // per input edge, input edge order
  Eigen::MatrixXd laplacian;                    // includes zero-weight edges (as zeros)
  CurvatureMap curvature;                       // curvature of the input graph
  std::vector<std::pair<int, int>> zero_weight_edges;
};

// Computes curvature on g (normalizing it for the het variant), applies the
// zeta transform, and assembles the curvature-enhanced Laplacian.
ReweightedGraph reweight_pipeline(const Graph& g, ZetaKind kind, const CurvatureConfig& cfg = {});

}  // namespace curvlet
