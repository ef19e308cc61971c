#include "curvlet/edge_drop.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "curvlet/rng.hpp"
#include "curvlet/threading.hpp"

namespace curvlet {

std::vector<int> supporting_triangles(const Graph& g, int i, int j) {
  if (!g.has_edge(i, j))
    throw std::invalid_argument("supporting_triangles: no edge (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
  return common_neighbors(g, i, j);
}

namespace {

// Nodes within the given hop count of any seed, in the given graph.
std::vector<char> nodes_within_hops(const Graph& g, const std::vector<int>& seeds, int hops) {
  std::vector<int> depth(static_cast<std::size_t>(g.node_count()), -1);
  std::deque<int> queue;
  for (int s : seeds)
    if (depth[static_cast<std::size_t>(s)] < 0) {
      depth[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    if (depth[static_cast<std::size_t>(x)] == hops) continue;
    for (const auto& [y, w] : g.neighbors(x)) {
      (void)w;
      if (depth[static_cast<std::size_t>(y)] < 0) {
        depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<char> in(static_cast<std::size_t>(g.node_count()), 0);
  for (int i = 0; i < g.node_count(); ++i)
    if (depth[static_cast<std::size_t>(i)] >= 0) in[static_cast<std::size_t>(i)] = 1;
  return in;
}

bool removal_disconnects(const Graph& g, int u, int v) {
  // (u, v) is a bridge iff v is unreachable from u without crossing the edge.
  std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::deque<int> queue{u};
  seen[static_cast<std::size_t>(u)] = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (const auto& [y, w] : g.neighbors(x)) {
      (void)w;
      if (x == u && y == v) continue;
      if (x == v && y == u) continue;
      if (seen[static_cast<std::size_t>(y)]) continue;
      if (y == v) return false;
      seen[static_cast<std::size_t>(y)] = 1;
      queue.push_back(y);
    }
  }
  return true;
}

}  // namespace

std::pair<Graph, CbedReport> cbed_run(const Graph& g, const CbedConfig& cfg) {
  if (g.node_count() == 0) throw std::invalid_argument("cbed_run: empty graph");
  if (cfg.max_iterations < 1) throw std::invalid_argument("cbed_run: max_iterations must be positive");
  if (cfg.cuts_per_iteration < 1)
    throw std::invalid_argument("cbed_run: cuts_per_iteration must be positive");
  if (cfg.target_kappa_upper > 1.0)
    throw std::invalid_argument("cbed_run: target above 1 is unreachable by definition");

  bool unit_weights = true;
  for (const auto& e : g.edges())
    if (e.w != 1.0) {
      unit_weights = false;
      break;
    }
  // Removing edges never changes remaining weights, so a unit-weight input
  // stays unit-weight; only then is the 2-hop refresh exact (measures touch
  // direct neighbors, distances between supports ride on paths of <= 3 edges).
  const bool incremental = unit_weights && !cfg.full_refresh_only;

  Rng rng(cfg.seed);
  Graph current = g;
  CbedReport report;

  std::vector<double> kappa;
  Graph before = current;               // graph the previous refresh saw
  std::vector<double> kappa_before;
  std::vector<int> last_removal_nodes;  // endpoints of the removals since then
  bool first_refresh = true;

  while (true) {
    if (first_refresh) {
      first_refresh = false;
      kappa = all_curvatures(current, cfg.curvature).kappa;
    } else if (!incremental) {
      kappa = all_curvatures(current, cfg.curvature).kappa;
    } else {
      const std::vector<char> dirty = nodes_within_hops(before, last_removal_nodes, 2);
      kappa.assign(current.edge_count(), 0.0);
      std::vector<std::size_t> refresh;
      for (std::size_t e = 0; e < current.edge_count(); ++e) {
        const Edge& edge = current.edge(e);
        if (dirty[static_cast<std::size_t>(edge.u)] || dirty[static_cast<std::size_t>(edge.v)])
          refresh.push_back(e);
        else
          kappa[e] = kappa_before[*before.find_edge(edge.u, edge.v)];
      }
      parallel_for(refresh.size(), cfg.curvature.workers, [&](std::size_t r) {
        const Edge& edge = current.edge(refresh[r]);
        kappa[refresh[r]] = edge_curvature(current, edge.u, edge.v, cfg.curvature);
      });
    }
    before = current;
    kappa_before = kappa;
    last_removal_nodes.clear();

    double kappa_max = -std::numeric_limits<double>::infinity();
    std::size_t max_edge = 0;
    for (std::size_t e = 0; e < kappa.size(); ++e)
      if (kappa[e] > kappa_max) {
        kappa_max = kappa[e];
        max_edge = e;  // edges are sorted, so the first max is the smallest (i, j)
      }
    report.kappa_max_trajectory.push_back(kappa_max);

    if (kappa_max <= cfg.target_kappa_upper) {
      report.terminated_by = CbedStop::target_reached;
      break;
    }
    if (report.iterations >= cfg.max_iterations) {
      report.terminated_by = CbedStop::iteration_cap;
      break;
    }

    const int ti = current.edge(max_edge).u;
    const int tj = current.edge(max_edge).v;
    int removed_this_iteration = 0;
    bool guard_stop = false;
    for (int cut = 0; cut < cfg.cuts_per_iteration; ++cut) {
      const std::vector<int> triangles = supporting_triangles(current, ti, tj);
      int ru, rv;
      bool target_edge_fallback = false;
      if (!triangles.empty()) {
        const int third = triangles[static_cast<std::size_t>(rng.next_below(triangles.size()))];
        const bool first_side = rng.next_below(2) == 0;
        ru = first_side ? ti : tj;
        rv = third;
      } else {
        ru = ti;
        rv = tj;
        target_edge_fallback = true;
      }
      if (cfg.connectivity_guard && removal_disconnects(current, ru, rv)) {
        // Triangle edges always have the 2-path through the triangle, so only
        // the fallback can be blocked, and it is the sole candidate.
        report.guard_note = "connectivity guard: removing (" + std::to_string(ru) + ", " +
                            std::to_string(rv) + ") would disconnect the graph; stopped";
        guard_stop = true;
        break;
      }
      current = current.without_edges({{ru, rv}});
      report.removed_edges.emplace_back(std::min(ru, rv), std::max(ru, rv));
      last_removal_nodes.push_back(ru);
      last_removal_nodes.push_back(rv);
      ++removed_this_iteration;
      if (target_edge_fallback) break;  // the refreshed max edge is gone
    }

    if (guard_stop) {
      if (removed_this_iteration == 0) {
        report.terminated_by = CbedStop::iteration_cap;
        return {current, report};
      }
      // fall through to one final refresh so the trajectory covers the removals
      ++report.iterations;
      std::vector<double> final_kappa = all_curvatures(current, cfg.curvature).kappa;
      double final_max = -std::numeric_limits<double>::infinity();
      for (double kv : final_kappa) final_max = std::max(final_max, kv);
      report.kappa_max_trajectory.push_back(final_max);
      report.terminated_by =
          final_max <= cfg.target_kappa_upper ? CbedStop::target_reached : CbedStop::iteration_cap;
      return {current, report};
    }
    ++report.iterations;
  }

  return {current, report};
}

}  // namespace curvlet
