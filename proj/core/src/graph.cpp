#include "curvlet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "curvlet/rng.hpp"

namespace curvlet {

namespace {

void shuffle_ints(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.next_below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("Graph: node count must be non-negative");
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("Graph: edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    if (e.u == e.v) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(e.u));
    if (!(e.w > 0.0)) throw std::invalid_argument("Graph: edge weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw std::invalid_argument("Graph: duplicate edge (" + std::to_string(edges[i].u) + ", " +
                                  std::to_string(edges[i].v) + ")");

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (const auto& e : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
    g.adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
  }
  for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());
  return g;
}

Graph Graph::from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v] : edges) list.push_back({u, v, 1.0});
  return from_edges(n, std::move(list));
}

void Graph::check_node(int i) const {
  if (i < 0 || i >= n_) throw std::invalid_argument("Graph: node " + std::to_string(i) + " out of range");
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int i) const {
  check_node(i);
  return adjacency_[static_cast<std::size_t>(i)];
}

int Graph::degree(int i) const { return static_cast<int>(neighbors(i).size()); }

double Graph::weighted_degree(int i) const {
  double sum = 0.0;
  for (const auto& [j, w] : neighbors(i)) {
    (void)j;
    sum += w;
  }
  return sum;
}

bool Graph::has_edge(int i, int j) const { return find_edge(i, j).has_value(); }

std::optional<std::size_t> Graph::find_edge(int i, int j) const {
  check_node(i);
  check_node(j);
  if (i == j) return std::nullopt;
  if (i > j) std::swap(i, j);
  const Edge probe{i, j, 1.0};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  if (it == edges_.end() || it->u != i || it->v != j) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

double Graph::edge_weight(int i, int j) const {
  const auto id = find_edge(i, j);
  if (!id)
    throw std::invalid_argument("Graph: no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  return edges_[*id].w;
}

Graph Graph::with_weights(const std::vector<double>& weights) const {
  if (weights.size() != edges_.size())
    throw std::invalid_argument("Graph: expected " + std::to_string(edges_.size()) + " weights, got " +
                                std::to_string(weights.size()));
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].w = weights[i];
  Graph g = from_edges(n_, std::move(edges));
  g.labels_ = labels_;
  g.features_ = features_;
  return g;
}

Graph Graph::without_edges(const std::vector<std::pair<int, int>>& remove) const {
  std::unordered_set<long long> drop;
  for (auto [u, v] : remove) {
    if (!has_edge(u, v))
      throw std::invalid_argument("Graph: cannot remove absent edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    drop.insert(static_cast<long long>(u) * n_ + v);
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const auto& e : edges_)
    if (!drop.count(static_cast<long long>(e.u) * n_ + e.v)) kept.push_back(e);
  Graph g = from_edges(n_, std::move(kept));
  g.labels_ = labels_;
  g.features_ = features_;
  return g;
}

Graph Graph::with_labels(std::vector<int> labels) const {
  if (static_cast<int>(labels.size()) != n_)
    throw std::invalid_argument("Graph: label vector length must equal node count");
  for (int c : labels)
    if (c < 0) throw std::invalid_argument("Graph: labels must be non-negative class ids");
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::with_features(Eigen::MatrixXd features) const {
  if (features.rows() != n_)
    throw std::invalid_argument("Graph: feature row count must equal node count");
  Graph g = *this;
  g.features_ = std::move(features);
  return g;
}

const std::vector<int>& Graph::labels() const {
  if (!has_labels()) throw std::logic_error("Graph: labels not set");
  return labels_;
}

int Graph::class_count() const {
  const auto& lab = labels();
  if (lab.empty()) return 0;
  return *std::max_element(lab.begin(), lab.end()) + 1;
}

const Eigen::MatrixXd& Graph::features() const {
  if (!has_features()) throw std::logic_error("Graph: features not set");
  return features_;
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (const auto& [j, w] : adjacency_[static_cast<std::size_t>(i)]) {
      (void)w;
      if (!seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++visited;
        queue.push_back(j);
      }
    }
  }
  return visited == n_;
}

void Graph::check_dense_cap() const {
  if (n_ > dense_cap)
    throw std::length_error("Graph: " + std::to_string(n_) +
                            " nodes exceeds the dense materialization cap (" + std::to_string(dense_cap) +
                            "); use the Chebyshev construction instead");
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  check_dense_cap();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& e : edges_) {
    a(e.u, e.v) = e.w;
    a(e.v, e.u) = e.w;
  }
  return a;
}

Eigen::MatrixXd Graph::normalized_adjacency() const {
  check_dense_cap();
  Eigen::MatrixXd a = adjacency_matrix();
  a.diagonal().array() += 1.0;
  Eigen::VectorXd dinv_sqrt(n_);
  for (int i = 0; i < n_; ++i) dinv_sqrt(i) = 1.0 / std::sqrt(a.row(i).sum());
  return dinv_sqrt.asDiagonal() * a * dinv_sqrt.asDiagonal();
}

Eigen::MatrixXd Graph::normalized_laplacian() const {
  Eigen::MatrixXd l = -normalized_adjacency();
  l.diagonal().array() += 1.0;
  return l;
}

Eigen::MatrixXd Graph::normalized_laplacian_no_loops() const {
  check_dense_cap();
  Eigen::MatrixXd a = adjacency_matrix();
  Eigen::VectorXd dinv_sqrt(n_);
  for (int i = 0; i < n_; ++i) {
    const double d = a.row(i).sum();
    if (d <= 0.0)
      throw std::invalid_argument("Graph: node " + std::to_string(i) +
                                  " is isolated; the no-self-loop Laplacian needs min degree 1");
    dinv_sqrt(i) = 1.0 / std::sqrt(d);
  }
  Eigen::MatrixXd l = -(dinv_sqrt.asDiagonal() * a * dinv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigendecompose: matrix must be square");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw std::invalid_argument("eigendecompose: matrix is not symmetric (max asymmetry " +
                                std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecompose: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<int> common_neighbors(const Graph& g, int i, int j) {
  const auto& ni = g.neighbors(i);
  const auto& nj = g.neighbors(j);
  std::vector<int> common;
  auto a = ni.begin();
  auto b = nj.begin();
  while (a != ni.end() && b != nj.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      common.push_back(a->first);
      ++a;
      ++b;
    }
  }
  return common;
}

int triangle_count(const Graph& g, int i, int j) {
  if (!g.has_edge(i, j))
    throw std::invalid_argument("triangle_count: no edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  return static_cast<int>(common_neighbors(g, i, j).size());
}

double clustering_coefficient(const Graph& g, int i) {
  const int d = g.degree(i);
  if (d < 2) return 0.0;
  long triangles = 0;
  for (const auto& [j, w] : g.neighbors(i)) {
    (void)w;
    triangles += triangle_count(g, i, j);
  }
  return static_cast<double>(triangles) / (static_cast<double>(d) * (d - 1));
}

double homophily_measure(const Graph& g) {
  const auto& labels = g.labels();
  double sum = 0.0;
  int included = 0;
  for (int i = 0; i < g.node_count(); ++i) {
    const auto& nb = g.neighbors(i);
    if (nb.empty()) continue;
    int same = 0;
    for (const auto& [j, w] : nb) {
      (void)w;
      if (labels[static_cast<std::size_t>(j)] == labels[static_cast<std::size_t>(i)]) ++same;
    }
    sum += static_cast<double>(same) / static_cast<double>(nb.size());
    ++included;
  }
  if (included == 0) throw std::invalid_argument("homophily_measure: graph has no edges");
  return sum / included;
}

Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("make_path: need at least 1 node");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_pairs(n, edges);
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("make_cycle: need at least 3 nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_pairs(n, edges);
}

Graph make_complete(int n) {
  if (n < 1) throw std::invalid_argument("make_complete: need at least 1 node");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_pairs(n, edges);
}

Graph make_star(int leaves) {
  if (leaves < 1) throw std::invalid_argument("make_star: need at least 1 leaf");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_pairs(leaves + 1, edges);
}

Graph make_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("make_complete_bipartite: both sides need nodes");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  return Graph::from_pairs(a + b, edges);
}

Graph make_double_star(int leaves_a, int leaves_b) {
  if (leaves_a < 0 || leaves_b < 0) throw std::invalid_argument("make_double_star: negative leaf count");
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int next = 2;
  for (int i = 0; i < leaves_a; ++i) edges.emplace_back(0, next++);
  for (int i = 0; i < leaves_b; ++i) edges.emplace_back(1, next++);
  return Graph::from_pairs(next, edges);
}

Graph make_sbm(const SbmParams& params, std::uint64_t seed) {
  if (params.block_sizes.empty()) throw std::invalid_argument("make_sbm: need at least one block");
  for (int b : params.block_sizes)
    if (b < 1) throw std::invalid_argument("make_sbm: block sizes must be positive");
  if (params.p_in < 0.0 || params.p_in > 1.0 || params.p_out < 0.0 || params.p_out > 1.0)
    throw std::invalid_argument("make_sbm: probabilities must lie in [0, 1]");

  std::vector<int> block_of;
  for (std::size_t b = 0; b < params.block_sizes.size(); ++b)
    block_of.insert(block_of.end(), static_cast<std::size_t>(params.block_sizes[b]), static_cast<int>(b));
  const int n = static_cast<int>(block_of.size());

  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double p = block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(j)]
                           ? params.p_in
                           : params.p_out;
      if (rng.next_double() < p) edges.emplace_back(i, j);
    }
  return Graph::from_pairs(n, edges).with_labels(std::move(block_of));
}

Graph make_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_erdos_renyi: need at least 1 node");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_erdos_renyi: probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_double() < p) edges.emplace_back(i, j);
  return Graph::from_pairs(n, edges);
}

Graph make_planted_pocket_graph(int block_size, double p_out, int n_pockets, int pocket_size,
                                std::uint64_t seed) {
  if (block_size < 1) throw std::invalid_argument("make_planted_pocket_graph: block_size must be positive");
  if (p_out < 0.0 || p_out > 1.0)
    throw std::invalid_argument("make_planted_pocket_graph: p_out must lie in [0, 1]");
  if (n_pockets < 0 || pocket_size < 0 || pocket_size > block_size)
    throw std::invalid_argument("make_planted_pocket_graph: invalid pocket shape");

  const int n = 2 * block_size;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (int i = block_size; i < n; ++i) labels[static_cast<std::size_t>(i)] = 1;

  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::unordered_set<long long> edge_keys;
    std::vector<std::pair<int, int>> edges;
    auto add = [&](int u, int v) {
      if (u > v) std::swap(u, v);
      if (edge_keys.insert(static_cast<long long>(u) * n + v).second) edges.emplace_back(u, v);
    };
    for (int u = 0; u < block_size; ++u)
      for (int v = block_size; v < n; ++v)
        if (rng.next_double() < p_out) add(u, v);
    for (int pk = 0; pk < n_pockets; ++pk) {
      const int base = (pk % 2 == 0) ? 0 : block_size;
      std::vector<int> side(static_cast<std::size_t>(block_size));
      std::iota(side.begin(), side.end(), base);
      shuffle_ints(side, rng);
      for (int i = 0; i < pocket_size; ++i)
        for (int j = i + 1; j < pocket_size; ++j)
          add(side[static_cast<std::size_t>(i)], side[static_cast<std::size_t>(j)]);
    }
    Graph g = Graph::from_pairs(n, edges).with_labels(labels);
    if (g.is_connected()) return g;
  }
  throw std::runtime_error("make_planted_pocket_graph: no connected sample in 1000 attempts (p_out too small?)");
}

LabeledPartition stratified_partition(const Graph& g, double train_fraction, std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction > 1.0)
    throw std::invalid_argument("stratified_partition: train_fraction must lie in (0, 1]");
  const auto& labels = g.labels();
  const int classes = g.class_count();
  std::vector<std::vector<int>> members(static_cast<std::size_t>(classes));
  for (int i = 0; i < g.node_count(); ++i)
    members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);

  Rng rng(seed);
  std::vector<bool> train(static_cast<std::size_t>(g.node_count()), false);
  for (auto& group : members) {
    if (group.empty()) continue;
    shuffle_ints(group, rng);
    const auto take = std::max<std::size_t>(
        1, static_cast<std::size_t>(train_fraction * static_cast<double>(group.size())));
    for (std::size_t i = 0; i < take && i < group.size(); ++i)
      train[static_cast<std::size_t>(group[i])] = true;
  }
  return {labels, std::move(train)};
}

}  // namespace curvlet
