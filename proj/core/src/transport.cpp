#include "curvlet/transport.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_set>

namespace curvlet {

void ProbabilityMeasure::validate() const {
  if (support.empty()) throw std::invalid_argument("ProbabilityMeasure: empty support");
  double total = 0.0;
  std::unordered_set<int> seen;
  for (const auto& [node, mass] : support) {
    if (!(mass > 0.0)) throw std::invalid_argument("ProbabilityMeasure: masses must be positive");
    if (!seen.insert(node).second)
      throw std::invalid_argument("ProbabilityMeasure: duplicate support node " + std::to_string(node));
    total += mass;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("ProbabilityMeasure: masses sum to " + std::to_string(total) +
                                ", expected 1");
}

ProbabilityMeasure node_measure(const Graph& g, int i, double alpha, bool uniform) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("node_measure: alpha must lie in [0, 1]");
  const auto& nb = g.neighbors(i);
  ProbabilityMeasure m;
  if (alpha == 1.0) {
    m.support.emplace_back(i, 1.0);
    return m;
  }
  if (nb.empty())
    throw std::invalid_argument("node_measure: node " + std::to_string(i) +
                                " is isolated; alpha < 1 has no neighbors to carry mass");
  if (alpha > 0.0) m.support.emplace_back(i, alpha);
  if (uniform) {
    const double share = (1.0 - alpha) / static_cast<double>(nb.size());
    for (const auto& [j, w] : nb) {
      (void)w;
      m.support.emplace_back(j, share);
    }
  } else {
    double total = 0.0;
    for (const auto& [j, w] : nb) {
      (void)j;
      total += w;
    }
    for (const auto& [j, w] : nb) m.support.emplace_back(j, (1.0 - alpha) * w / total);
  }
  return m;
}

namespace {

std::vector<double> dijkstra(const Graph& g, int source, const std::vector<int>* targets) {
  std::vector<double> dist(static_cast<std::size_t>(g.node_count()), unreachable_distance);
  std::vector<char> settled(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<char> wanted;
  int remaining = 0;
  if (targets) {
    wanted.assign(static_cast<std::size_t>(g.node_count()), 0);
    for (int t : *targets)
      if (!wanted[static_cast<std::size_t>(t)]) {
        wanted[static_cast<std::size_t>(t)] = 1;
        ++remaining;
      }
  }

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, i] = heap.top();
    heap.pop();
    if (settled[static_cast<std::size_t>(i)]) continue;
    settled[static_cast<std::size_t>(i)] = 1;
    if (targets && wanted[static_cast<std::size_t>(i)] && --remaining == 0) break;
    for (const auto& [j, w] : g.neighbors(i)) {
      const double nd = d + w;
      if (nd < dist[static_cast<std::size_t>(j)]) {
        dist[static_cast<std::size_t>(j)] = nd;
        heap.emplace(nd, j);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> shortest_path_distances(const Graph& g, int source) {
  return dijkstra(g, source, nullptr);
}

std::vector<double> shortest_path_distances(const Graph& g, int source, const std::vector<int>& targets) {
  return dijkstra(g, source, &targets);
}

Eigen::MatrixXd support_distances(const Graph& g, const ProbabilityMeasure& mu,
                                  const ProbabilityMeasure& nu) {
  std::vector<int> targets;
  targets.reserve(nu.support.size());
  for (const auto& [node, mass] : nu.support) {
    (void)mass;
    targets.push_back(node);
  }
  Eigen::MatrixXd cost(static_cast<Eigen::Index>(mu.support.size()),
                       static_cast<Eigen::Index>(nu.support.size()));
  for (std::size_t r = 0; r < mu.support.size(); ++r) {
    const auto dist = shortest_path_distances(g, mu.support[r].first, targets);
    for (std::size_t c = 0; c < nu.support.size(); ++c) {
      const double d = dist[static_cast<std::size_t>(targets[c])];
      if (!std::isfinite(d))
        throw std::domain_error("support_distances: nodes " + std::to_string(mu.support[r].first) +
                                " and " + std::to_string(targets[c]) + " are disconnected");
      cost(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d;
    }
  }
  return cost;
}

namespace {

void check_instance(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                    const Eigen::MatrixXd& cost) {
  mu.validate();
  nu.validate();
  if (cost.rows() != static_cast<Eigen::Index>(mu.support.size()) ||
      cost.cols() != static_cast<Eigen::Index>(nu.support.size()))
    throw std::invalid_argument("wasserstein1: cost matrix shape does not match the supports");
  if (!cost.allFinite()) throw std::domain_error("wasserstein1: cost matrix contains non-finite entries");
}

TransportPlan assemble_plan(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                            const std::vector<std::tuple<int, int, double>>& entries,
                            const Eigen::MatrixXd& cost) {
  TransportPlan plan;
  double total = 0.0;
  for (const auto& [r, c, f] : entries) {
    total += f * cost(r, c);
    plan.entries.push_back({mu.support[static_cast<std::size_t>(r)].first,
                            nu.support[static_cast<std::size_t>(c)].first, f});
  }
  std::sort(plan.entries.begin(), plan.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  plan.cost = total;
  return plan;
}

}  // namespace

TransportResult wasserstein1_exact(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                                   const Eigen::MatrixXd& cost) {
  check_instance(mu, nu, cost);
  const int m = static_cast<int>(mu.support.size());
  const int k = static_cast<int>(nu.support.size());

  // Transportation simplex. Basis arcs always form a spanning tree of the
  // bipartite support graph (sources 0..m-1, targets m..m+k-1).
  std::vector<double> flow(static_cast<std::size_t>(m) * k, 0.0);
  std::vector<char> in_basis(static_cast<std::size_t>(m) * k, 0);
  std::vector<std::pair<int, int>> basis;  // (row, col)
  basis.reserve(static_cast<std::size_t>(m + k - 1));
  const auto at = [k](int r, int c) { return static_cast<std::size_t>(r) * k + c; };

  {  // northwest-corner start: one arc per step, advancing one index per step
    std::vector<double> rem_a(static_cast<std::size_t>(m)), rem_b(static_cast<std::size_t>(k));
    for (int r = 0; r < m; ++r) rem_a[static_cast<std::size_t>(r)] = mu.support[static_cast<std::size_t>(r)].second;
    for (int c = 0; c < k; ++c) rem_b[static_cast<std::size_t>(c)] = nu.support[static_cast<std::size_t>(c)].second;
    int r = 0, c = 0;
    while (true) {
      const double f = std::min(rem_a[static_cast<std::size_t>(r)], rem_b[static_cast<std::size_t>(c)]);
      flow[at(r, c)] = f;
      in_basis[at(r, c)] = 1;
      basis.emplace_back(r, c);
      rem_a[static_cast<std::size_t>(r)] -= f;
      rem_b[static_cast<std::size_t>(c)] -= f;
      if (r == m - 1 && c == k - 1) break;
      if (r < m - 1 &&
          (rem_a[static_cast<std::size_t>(r)] <= rem_b[static_cast<std::size_t>(c)] || c == k - 1))
        ++r;
      else
        ++c;
    }
  }

  const int nodes = m + k;
  std::vector<std::vector<std::pair<int, int>>> tree(static_cast<std::size_t>(nodes));  // (other node, basis arc id)
  std::vector<double> potential(static_cast<std::size_t>(nodes));
  std::vector<int> order(static_cast<std::size_t>(nodes)), parent_node(static_cast<std::size_t>(nodes)),
      parent_arc(static_cast<std::size_t>(nodes));

  const long max_pivots = 1000L * nodes + 1000L;
  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots)
      throw std::logic_error("wasserstein1_exact: pivot limit exceeded (degenerate cycling?)");

    for (auto& t : tree) t.clear();
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const auto [r, c] = basis[a];
      tree[static_cast<std::size_t>(r)].emplace_back(m + c, static_cast<int>(a));
      tree[static_cast<std::size_t>(m + c)].emplace_back(r, static_cast<int>(a));
    }

    // potentials via tree traversal from source 0: u_r + v_c = cost(r, c)
    {
      std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
      int head = 0, tail = 0;
      order[static_cast<std::size_t>(tail++)] = 0;
      seen[0] = 1;
      potential[0] = 0.0;
      while (head < tail) {
        const int x = order[static_cast<std::size_t>(head++)];
        for (const auto& [y, arc] : tree[static_cast<std::size_t>(x)]) {
          if (seen[static_cast<std::size_t>(y)]) continue;
          seen[static_cast<std::size_t>(y)] = 1;
          const auto [r, c] = basis[static_cast<std::size_t>(arc)];
          potential[static_cast<std::size_t>(y)] = cost(r, c) - potential[static_cast<std::size_t>(x)];
          order[static_cast<std::size_t>(tail++)] = y;
        }
      }
      if (tail != nodes) throw std::logic_error("wasserstein1_exact: basis lost the spanning tree");
    }

    // entering arc: most negative reduced cost, first in row-major order
    int enter_r = -1, enter_c = -1;
    double best = -1e-12;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < k; ++c) {
        if (in_basis[at(r, c)]) continue;
        const double reduced =
            cost(r, c) - potential[static_cast<std::size_t>(r)] - potential[static_cast<std::size_t>(m + c)];
        if (reduced < best) {
          best = reduced;
          enter_r = r;
          enter_c = c;
        }
      }
    if (enter_r < 0) break;  // optimal

    // unique tree path from target node (m + enter_c) back to source enter_r
    {
      std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
      int head = 0, tail = 0;
      const int start = m + enter_c;
      order[static_cast<std::size_t>(tail++)] = start;
      seen[static_cast<std::size_t>(start)] = 1;
      parent_node[static_cast<std::size_t>(start)] = -1;
      while (head < tail) {
        const int x = order[static_cast<std::size_t>(head++)];
        if (x == enter_r) break;
        for (const auto& [y, arc] : tree[static_cast<std::size_t>(x)]) {
          if (seen[static_cast<std::size_t>(y)]) continue;
          seen[static_cast<std::size_t>(y)] = 1;
          parent_node[static_cast<std::size_t>(y)] = x;
          parent_arc[static_cast<std::size_t>(y)] = arc;
          order[static_cast<std::size_t>(tail++)] = y;
        }
      }

      // walk enter_r -> ... -> m+enter_c; arcs at odd positions from the
      // entering arc lose flow, even positions gain
      std::vector<int> minus_arcs, plus_arcs;
      bool minus = true;
      for (int x = enter_r; parent_node[static_cast<std::size_t>(x)] != -1;
           x = parent_node[static_cast<std::size_t>(x)]) {
        (minus ? minus_arcs : plus_arcs).push_back(parent_arc[static_cast<std::size_t>(x)]);
        minus = !minus;
      }

      double theta = std::numeric_limits<double>::infinity();
      int leave = -1;
      for (int arc : minus_arcs) {
        const auto [r, c] = basis[static_cast<std::size_t>(arc)];
        const double f = flow[at(r, c)];
        if (f < theta - 1e-15 ||
            (std::abs(f - theta) <= 1e-15 && (leave < 0 || basis[static_cast<std::size_t>(arc)] <
                                                               basis[static_cast<std::size_t>(leave)]))) {
          theta = f;
          leave = arc;
        }
      }
      if (leave < 0) throw std::logic_error("wasserstein1_exact: no leaving arc");

      for (int arc : minus_arcs) {
        const auto [r, c] = basis[static_cast<std::size_t>(arc)];
        flow[at(r, c)] = std::max(0.0, flow[at(r, c)] - theta);
      }
      for (int arc : plus_arcs) {
        const auto [r, c] = basis[static_cast<std::size_t>(arc)];
        flow[at(r, c)] += theta;
      }
      const auto [lr, lc] = basis[static_cast<std::size_t>(leave)];
      in_basis[at(lr, lc)] = 0;
      flow[at(lr, lc)] = 0.0;
      basis[static_cast<std::size_t>(leave)] = {enter_r, enter_c};
      in_basis[at(enter_r, enter_c)] = 1;
      flow[at(enter_r, enter_c)] = theta;
    }
  }

  std::vector<std::tuple<int, int, double>> entries;
  for (const auto& [r, c] : basis)
    if (flow[at(r, c)] > 1e-15) entries.emplace_back(r, c, flow[at(r, c)]);
  TransportPlan plan = assemble_plan(mu, nu, entries, cost);
  return {plan.cost, std::move(plan)};
}

namespace {

double log_sum_exp(const Eigen::VectorXd& x) {
  const double m = x.maxCoeff();
  return m + std::log((x.array() - m).exp().sum());
}

}  // namespace

TransportResult wasserstein1_sinkhorn(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                                      const Eigen::MatrixXd& cost, const SinkhornParams& params) {
  check_instance(mu, nu, cost);
  if (!(params.reg > 0.0)) throw std::invalid_argument("wasserstein1_sinkhorn: reg must be positive");
  if (params.max_iter < 1) throw std::invalid_argument("wasserstein1_sinkhorn: max_iter must be positive");

  const Eigen::Index m = cost.rows(), k = cost.cols();
  Eigen::VectorXd a(m), b(k);
  for (Eigen::Index r = 0; r < m; ++r) a(r) = mu.support[static_cast<std::size_t>(r)].second;
  for (Eigen::Index c = 0; c < k; ++c) b(c) = nu.support[static_cast<std::size_t>(c)].second;

  const double reg = params.reg;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(m), g = Eigen::VectorXd::Zero(k);
  Eigen::MatrixXd plan(m, k);
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int it = 1; it <= params.max_iter; ++it) {
    for (Eigen::Index r = 0; r < m; ++r)
      f(r) = reg * std::log(a(r)) - reg * log_sum_exp((g - cost.row(r).transpose()) / reg);
    for (Eigen::Index c = 0; c < k; ++c)
      g(c) = reg * std::log(b(c)) - reg * log_sum_exp((f - cost.col(c)) / reg);

    plan = (((-cost).colwise() + f).rowwise() + g.transpose()) / reg;
    plan = plan.array().exp();
    residual = (plan.rowwise().sum() - a).cwiseAbs().sum() + (plan.colwise().sum().transpose() - b).cwiseAbs().sum();
    if (residual <= params.tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw SinkhornError("wasserstein1_sinkhorn: marginal residual " + std::to_string(residual) +
                            " above tol after " + std::to_string(params.max_iter) + " iterations",
                        params.max_iter, residual);

  // marginal-correction rounding: scale rows then columns into the feasible
  // box, then add the rank-one correction that restores both marginals
  for (Eigen::Index r = 0; r < m; ++r) {
    const double rs = plan.row(r).sum();
    if (rs > a(r)) plan.row(r) *= a(r) / rs;
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    const double cs = plan.col(c).sum();
    if (cs > b(c)) plan.col(c) *= b(c) / cs;
  }
  Eigen::VectorXd err_r = a - plan.rowwise().sum();
  Eigen::VectorXd err_c = b - plan.colwise().sum().transpose();
  const double missing = err_r.cwiseAbs().sum();
  if (missing > 0.0) plan += (err_r * err_c.transpose()) / missing;

  std::vector<std::tuple<int, int, double>> entries;
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      if (plan(r, c) > 1e-15)
        entries.emplace_back(static_cast<int>(r), static_cast<int>(c), plan(r, c));
  TransportPlan rounded = assemble_plan(mu, nu, entries, cost);
  return {rounded.cost, std::move(rounded)};
}

}  // namespace curvlet
