#include "curvlet/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvlet/threading.hpp"

namespace curvlet {

EdgeCurvatureDetail edge_curvature_detail(const Graph& g, int i, int j, const CurvatureConfig& cfg) {
  if (!g.has_edge(i, j))
    throw std::invalid_argument("edge_curvature: no edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  const ProbabilityMeasure mu = node_measure(g, i, cfg.alpha, cfg.uniform_masses);
  const ProbabilityMeasure nu = node_measure(g, j, cfg.alpha, cfg.uniform_masses);
  const Eigen::MatrixXd cost = support_distances(g, mu, nu);
  const double ds = shortest_path_distances(g, i, std::vector<int>{j})[static_cast<std::size_t>(j)];

  const TransportResult res = cfg.solver == W1Solver::exact
                                  ? wasserstein1_exact(mu, nu, cost)
                                  : wasserstein1_sinkhorn(mu, nu, cost, cfg.sinkhorn);
  return {1.0 - res.cost / ds, res.cost, ds};
}

double edge_curvature(const Graph& g, int i, int j, const CurvatureConfig& cfg) {
  return edge_curvature_detail(g, i, j, cfg).kappa;
}

double CurvatureMap::min() const {
  if (kappa.empty()) throw std::invalid_argument("CurvatureMap: empty");
  return *std::min_element(kappa.begin(), kappa.end());
}

double CurvatureMap::max() const {
  if (kappa.empty()) throw std::invalid_argument("CurvatureMap: empty");
  return *std::max_element(kappa.begin(), kappa.end());
}

CurvatureMap all_curvatures(const Graph& g, const CurvatureConfig& cfg) {
  CurvatureMap map;
  map.kappa.assign(g.edge_count(), 0.0);
  parallel_for(g.edge_count(), cfg.workers, [&](std::size_t e) {
    const Edge& edge = g.edge(e);
    map.kappa[e] = edge_curvature(g, edge.u, edge.v, cfg);
  });
  return map;
}

CurvatureMap normalize_curvatures(CurvatureMap map) {
  double max_abs = 0.0;
  for (double k : map.kappa) max_abs = std::max(max_abs, std::abs(k));
  std::vector<double> normalized(map.kappa.size(), 0.0);
  if (max_abs > 0.0)
    for (std::size_t e = 0; e < map.kappa.size(); ++e) normalized[e] = map.kappa[e] / max_abs;
  map.normalized = std::move(normalized);
  return map;
}

std::vector<double> ricci_flow_step(const Graph& g, const CurvatureConfig& cfg) {
  std::vector<double> weights(g.edge_count(), 0.0);
  parallel_for(g.edge_count(), cfg.workers, [&](std::size_t e) {
    const Edge& edge = g.edge(e);
    const EdgeCurvatureDetail d = edge_curvature_detail(g, edge.u, edge.v, cfg);
    weights[e] = d.distance * (1.0 - d.kappa);
  });
  return weights;
}

double jost_lower_bound(const Graph& g, int i, int j) {
  const double a = g.edge_weight(i, j);
  const double di = g.weighted_degree(i);
  const double dj = g.weighted_degree(j);
  if (di <= 1.0 || dj <= 1.0) return 0.0;
  return -2.0 * std::max(0.0, 1.0 - a / di - a / dj);
}

double triangle_upper_bound(const Graph& g, int i, int j) {
  const int triangles = triangle_count(g, i, j);
  return static_cast<double>(triangles) / std::max(g.weighted_degree(i), g.weighted_degree(j));
}

std::vector<HistogramBin> curvature_histogram(const CurvatureMap& map, int bins) {
  if (bins < 1) throw std::invalid_argument("curvature_histogram: need at least 1 bin");
  if (map.kappa.empty()) throw std::invalid_argument("curvature_histogram: empty curvature map");
  const double lo = map.min(), hi = map.max();
  if (!(hi > lo)) {
    HistogramBin only{lo - 0.5, lo + 0.5, static_cast<long>(map.kappa.size())};
    return {only};
  }
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  const double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b)
    out[static_cast<std::size_t>(b)] = {lo + b * width, lo + (b + 1) * width, 0};
  for (double k : map.kappa) {
    int b = static_cast<int>((k - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

}  // namespace curvlet
