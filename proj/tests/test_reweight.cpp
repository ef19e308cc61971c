#include <algorithm>
#include <cmath>

#include "curvlet/graph.hpp"
#include "curvlet/reweight.hpp"
#include "doctest.h"

using namespace curvlet;

TEST_CASE("zeta transforms") {
  SUBCASE("homophilic is 1 - kappa, decreasing on [-2, 1]") {
    CHECK(zeta_hom(-2.0) == doctest::Approx(3.0));
    CHECK(zeta_hom(0.0) == doctest::Approx(1.0));
    CHECK(zeta_hom(1.0) == doctest::Approx(0.0));
    CHECK(zeta_hom(1.0 + 5e-10) == 0.0);  // rounding slack clamps
    CHECK_THROWS_AS(zeta_hom(1.1), std::domain_error);
  }
  SUBCASE("heterophilic is (1 + kappa_tilde) / 2, increasing on [-1, 1]") {
    CHECK(zeta_het(-1.0) == doctest::Approx(0.0));
    CHECK(zeta_het(0.0) == doctest::Approx(0.5));
    CHECK(zeta_het(1.0) == doctest::Approx(1.0));
    CHECK(zeta_het(1.0 + 5e-10) == 1.0);
    CHECK(zeta_het(-1.0 - 5e-10) == 0.0);
    CHECK_THROWS_AS(zeta_het(1.5), std::domain_error);
    CHECK_THROWS_AS(zeta_het(-1.5), std::domain_error);
    for (double k = -1.0; k <= 1.0; k += 0.125) CHECK(zeta_het(k) <= 1.0);  // never above unit weight
  }
}

TEST_CASE("curvature laplacian") {
  SUBCASE("K2 with zeta 0.5") {
    const Graph k2 = make_path(2);
    const Eigen::MatrixXd l = curvature_laplacian(k2, {0.5});
    Eigen::MatrixXd expected(2, 2);
    expected << 1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, 1.0 / 3.0;
    CHECK((l - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("zeta 1 reduces to the plain normalized laplacian") {
    const Graph g = make_erdos_renyi(10, 0.5, 6);
    const std::vector<double> ones(g.edge_count(), 1.0);
    CHECK((curvature_laplacian(g, ones) - g.normalized_laplacian()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("zero zeta keeps the self-loop only") {
    const Graph k2 = make_path(2);
    const Eigen::MatrixXd l = curvature_laplacian(k2, {0.0});
    CHECK(l.cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("symmetric PSD with spectrum in [0, 2]") {
    const Graph g = make_double_star(3, 2);
    const auto map = all_curvatures(g);
    std::vector<double> zeta;
    for (double k : map.kappa) zeta.push_back(zeta_hom(k));
    const Eigen::MatrixXd l = curvature_laplacian(g, zeta);
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    const auto decomp = eigendecompose(l);
    CHECK(decomp.eigenvalues.minCoeff() >= -1e-9);
    CHECK(decomp.eigenvalues.maxCoeff() <= 2.0 + 1e-9);
  }
  SUBCASE("validation") {
    const Graph k2 = make_path(2);
    CHECK_THROWS_AS(curvature_laplacian(k2, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(curvature_laplacian(k2, {-0.1}), std::invalid_argument);
  }
}

TEST_CASE("reweight pipeline") {
  SUBCASE("homophilic: weights are 1 - kappa") {
    const Graph k3 = make_complete(3);
    const ReweightedGraph rw = reweight_pipeline(k3, ZetaKind::hom);
    REQUIRE(rw.zeta_weights.size() == 3);
    for (double z : rw.zeta_weights) CHECK(z == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rw.graph.edge_count() == 3);
    CHECK(rw.graph.edge(0).w == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(rw.curvature.normalized.has_value());
    CHECK((rw.laplacian - curvature_laplacian(k3, rw.zeta_weights)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rw.zero_weight_edges.empty());
  }
  SUBCASE("heterophilic: normalized curvature drives the weights") {
    const Graph ds = make_double_star(2, 2);
    const ReweightedGraph rw = reweight_pipeline(ds, ZetaKind::het);
    REQUIRE(rw.curvature.normalized.has_value());
    const auto& norm = *rw.curvature.normalized;
    for (std::size_t e = 0; e < ds.edge_count(); ++e)
      CHECK(rw.zeta_weights[e] == doctest::Approx((1.0 + norm[e]) / 2.0).epsilon(1e-12));
    // the hub bridge normalizes to -1, so its heterophilic weight vanishes
    REQUIRE(rw.zero_weight_edges.size() == 1);
    CHECK(rw.zero_weight_edges[0] == std::pair<int, int>{0, 1});
    CHECK(rw.graph.edge_count() == ds.edge_count() - 1);
    CHECK_FALSE(rw.graph.has_edge(0, 1));
    // the laplacian still covers all nodes; dropped edges contribute zero
    CHECK(rw.laplacian.rows() == ds.node_count());
    const auto decomp = eigendecompose(rw.laplacian);
    CHECK(decomp.eigenvalues.minCoeff() >= -1e-9);
  }
  SUBCASE("labels and features survive") {
    const Graph g = make_complete(3).with_labels({0, 1, 1}).with_features(Eigen::MatrixXd::Ones(3, 2));
    const ReweightedGraph rw = reweight_pipeline(g, ZetaKind::hom);
    CHECK(rw.graph.has_labels());
    CHECK(rw.graph.has_features());
    CHECK(rw.graph.labels() == std::vector<int>{0, 1, 1});
  }
  SUBCASE("homophilic weights never exceed 3 and heterophilic stay within [0, 1]") {
    const Graph g = make_erdos_renyi(12, 0.4, 9);
    const ReweightedGraph hom = reweight_pipeline(g, ZetaKind::hom);
    for (double z : hom.zeta_weights) {
      CHECK(z >= 0.0);
      CHECK(z <= 3.0 + 1e-12);
    }
    const ReweightedGraph het = reweight_pipeline(g, ZetaKind::het);
    for (double z : het.zeta_weights) {
      CHECK(z >= 0.0);
      CHECK(z <= 1.0 + 1e-12);
    }
  }
}
