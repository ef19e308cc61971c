#include "curvlet/reweight.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvlet {

double zeta_hom(double kappa) {
  if (kappa > 1.0 + 1e-9)
    throw std::domain_error("zeta_hom: curvature " + std::to_string(kappa) + " above 1");
  return 1.0 - std::min(kappa, 1.0);
}

double zeta_het(double kappa_tilde) {
  if (kappa_tilde < -1.0 - 1e-9 || kappa_tilde > 1.0 + 1e-9)
    throw std::domain_error("zeta_het: normalized curvature " + std::to_string(kappa_tilde) +
                            " outside [-1, 1]");
  return (1.0 + std::clamp(kappa_tilde, -1.0, 1.0)) / 2.0;
}

Eigen::MatrixXd curvature_laplacian(const Graph& g, const std::vector<double>& zeta_weights) {
  if (zeta_weights.size() != g.edge_count())
    throw std::invalid_argument("curvature_laplacian: expected one zeta weight per edge");
  for (double z : zeta_weights)
    if (!(z >= 0.0)) throw std::invalid_argument("curvature_laplacian: zeta weights must be non-negative");

  const int n = g.node_count();
  if (n > Graph::dense_cap)
    throw std::length_error("curvature_laplacian: node count exceeds the dense materialization cap");
  Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    weighted(edge.u, edge.v) = zeta_weights[e];
    weighted(edge.v, edge.u) = zeta_weights[e];
  }
  weighted.diagonal().array() += 1.0;
  Eigen::VectorXd dinv_sqrt(n);
  for (int i = 0; i < n; ++i) dinv_sqrt(i) = 1.0 / std::sqrt(weighted.row(i).sum());
  Eigen::MatrixXd l = -(dinv_sqrt.asDiagonal() * weighted * dinv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

ReweightedGraph reweight_pipeline(const Graph& g, ZetaKind kind, const CurvatureConfig& cfg) {
  ReweightedGraph out;
  CurvatureMap map = all_curvatures(g, cfg);
  if (kind == ZetaKind::het) map = normalize_curvatures(std::move(map));

  out.zeta_weights.resize(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    out.zeta_weights[e] =
        kind == ZetaKind::hom ? zeta_hom(map.kappa[e]) : zeta_het((*map.normalized)[e]);

  out.laplacian = curvature_laplacian(g, out.zeta_weights);

  // The Graph invariant requires strictly positive weights, so edges whose
  // zeta weight vanished are dropped from the carried graph and reported.
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (out.zeta_weights[e] > 1e-12)
      kept.push_back({edge.u, edge.v, out.zeta_weights[e]});
    else
      out.zero_weight_edges.emplace_back(edge.u, edge.v);
  }
  out.graph = Graph::from_edges(g.node_count(), std::move(kept));
  if (g.has_labels()) out.graph = out.graph.with_labels(g.labels());
  if (g.has_features()) out.graph = out.graph.with_features(g.features());
  out.curvature = std::move(map);
  return out;
}

}  // namespace curvlet
