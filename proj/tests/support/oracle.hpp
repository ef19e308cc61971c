#pragma once

#include <Eigen/Dense>
#include <vector>

#include "curvlet/graph.hpp"
#include "curvlet/transport.hpp"

namespace curvlet::testing {

// Brute-force W1 by enumerating every basic feasible solution of the
// transportation polytope (spanning trees of the complete bipartite graph,
// flows recovered by leaf stripping). Exponential; keep supports <= 4.
double oracle_w1(const std::vector<double>& a, const std::vector<double>& b,
                 const Eigen::MatrixXd& cost);

// Same, with the cost matrix taken from shortest-path distances in g.
double oracle_w1(const Graph& g, const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

}  // namespace curvlet::testing
