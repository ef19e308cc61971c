#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvlet {

// Undirected simple weighted graph. Edges are stored canonically with u < v
// and sorted lexicographically, so edge indices are stable and deterministic.
struct Edge {
  int u;
  int v;
  double w;
};

class Graph {
public:
  // Dense n x n matrices are only materialized up to this node count; larger
  // graphs must use the polynomial (Chebyshev) code paths.
  static constexpr int dense_cap = 5000;

  Graph() = default;

  // Validates: ids in range, no self-loops, no duplicates, weights > 0.
  static Graph from_edges(int n, std::vector<Edge> edges);
  static Graph from_pairs(int n, const std::vector<std::pair<int, int>>& edges);  // unit weights

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_[id]; }

  // Neighbors sorted by node id, paired with the edge weight.
  const std::vector<std::pair<int, double>>& neighbors(int i) const;
  int degree(int i) const;
  double weighted_degree(int i) const;  // sum of incident edge weights, no self-loop term

  bool has_edge(int i, int j) const;
  std::optional<std::size_t> find_edge(int i, int j) const;
  double edge_weight(int i, int j) const;  // throws std::invalid_argument if absent

  // Derived graphs (the graph itself is immutable).
  Graph with_weights(const std::vector<double>& weights) const;  // one per edge, in edge order
  Graph without_edges(const std::vector<std::pair<int, int>>& remove) const;
  Graph with_labels(std::vector<int> labels) const;
  Graph with_features(Eigen::MatrixXd features) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const;
  int class_count() const;  // max label + 1; requires labels

  bool has_features() const { return features_.size() > 0; }
  const Eigen::MatrixXd& features() const;

  bool is_connected() const;

  // Dense operators. A is the weighted adjacency; the normalized forms add a
  // unit self-loop to every node: A_hat = D~^{-1/2} (A + I) D~^{-1/2} with
  // D~ = diag(row sums of A + I), and L_hat = I - A_hat.
  Eigen::MatrixXd adjacency_matrix() const;
  Eigen::MatrixXd normalized_adjacency() const;
  Eigen::MatrixXd normalized_laplacian() const;
  // No-self-loop variant I - D^{-1/2} A D^{-1/2}; requires min degree >= 1.
  Eigen::MatrixXd normalized_laplacian_no_loops() const;

private:
  void check_node(int i) const;
  void check_dense_cap() const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
  std::vector<int> labels_;        // empty when absent
  Eigen::MatrixXd features_;       // 0x0 when absent
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
};

// Dense symmetric eigendecomposition; rejects matrices that are not symmetric
// within 1e-10 (max abs entry of M - M^T).
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& m);

// Structural statistics.
std::vector<int> common_neighbors(const Graph& g, int i, int j);
int triangle_count(const Graph& g, int i, int j);        // edge must exist
double clustering_coefficient(const Graph& g, int i);    // 0 when degree < 2
double homophily_measure(const Graph& g);                // labels required; isolated nodes excluded

// Deterministic generators.
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_complete(int n);
Graph make_star(int leaves);                   // node 0 is the hub
Graph make_complete_bipartite(int a, int b);
Graph make_double_star(int leaves_a, int leaves_b);  // hubs 0-1 joined, leaves attached

struct SbmParams {
  std::vector<int> block_sizes;
  double p_in;
  double p_out;
};

// Stochastic block model; labels are block ids. Same seed, same edge set.
Graph make_sbm(const SbmParams& params, std::uint64_t seed);

Graph make_erdos_renyi(int n, double p, std::uint64_t seed);

// Two groups of block_size nodes each, labeled 0 and 1, joined by random
// cross-group edges (probability p_out) with n_pockets planted same-label
// cliques of pocket_size nodes alternating between the groups. Resamples
// until connected. A low-homophily instance whose triangles sit inside the
// pockets, so triangle-destroying edge drops remove mostly same-label edges.
Graph make_planted_pocket_graph(int block_size, double p_out, int n_pockets, int pocket_size,
                                std::uint64_t seed);

struct LabeledPartition {
  std::vector<int> labels;
  std::vector<bool> train_mask;
};

// Per-class split: floor(train_fraction * class size), at least 1 per class,
// members chosen by seeded shuffle. Every class is represented in the train set.
LabeledPartition stratified_partition(const Graph& g, double train_fraction, std::uint64_t seed);

}  // namespace curvlet
