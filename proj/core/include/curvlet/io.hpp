#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "curvlet/curvature.hpp"
#include "curvlet/dynamics.hpp"
#include "curvlet/graph.hpp"

namespace curvlet {

// File-format violations; messages name the file and 1-based line number.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shortest-round-trip style fixed formatting ("%.17g"): equal doubles always
// produce equal bytes, which is what makes reruns byte-comparable.
std::string format_double(double value);

// Edge list: one edge per line, "i j [weight]", '#' starts a comment, blank
// lines ignored. Node count is max id + 1. one_based shifts ids down by 1.
Graph read_edge_list(const std::string& path, bool one_based = false);
void write_edge_list(const std::string& path, const Graph& g);

// Labels CSV: "node_id,label" per line; optional header (detected by a
// non-numeric first field). Every node in [0, n) must be covered exactly once.
std::vector<int> read_labels_csv(const std::string& path, int n, bool one_based = false);

// Features CSV: one row per node, comma-separated reals, optional header.
Eigen::MatrixXd read_features_csv(const std::string& path, int n);

// "i j kappa [kappa_tilde]" per edge, graph edge order.
void write_curvature_edge_list(const std::string& path, const Graph& g, const CurvatureMap& map);

// CSV "bin_left,bin_right,count".
void write_histogram_csv(const std::string& path, const std::vector<HistogramBin>& bins);

// Coordinate text: comment header "# rows cols nnz", then "row col value" for
// every nonzero entry in row-major order.
void write_matrix_coordinate(const std::string& path, const Eigen::MatrixXd& m);

// CSV "step,energy".
void write_energy_csv(const std::string& path, const EnergyTrace& trace);

}  // namespace curvlet
