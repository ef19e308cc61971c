#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "curvlet/curvature.hpp"
#include "curvlet/io.hpp"
#include "doctest.h"

using namespace curvlet;
namespace fs = std::filesystem;

namespace {

// per-process scratch directory, removed on exit
class TempDir {
public:
  TempDir() {
    root_ = fs::temp_directory_path() / ("curvlet_io_test_" + std::to_string(::getpid()));
    fs::create_directories(root_);
  }
  ~TempDir() { fs::remove_all(root_); }
  std::string path(const std::string& name) const { return (root_ / name).string(); }

private:
  fs::path root_;
};

TempDir& tmp() {
  static TempDir dir;
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::string p = tmp().path(name);
  std::ofstream out(p);
  out << content;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Fn>
std::string parse_error_message(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& err) {
    return err.what();
  }
  return {};
}

}  // namespace

TEST_CASE("double formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.0) == "-2");
  for (double v : {1.0 / 3.0, 0.1, -2.5e-17, 1e300, 6.02e23, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("edge list round trip") {
  const Graph g = Graph::from_edges(4, {{0, 1, 1.0 / 3.0}, {1, 2, 0.1}, {2, 3, 1.0}});
  const std::string p = tmp().path("round_trip.txt");
  write_edge_list(p, g);
  const Graph back = read_edge_list(p);
  REQUIRE(back.node_count() == 4);
  REQUIRE(back.edge_count() == 3);
  for (std::size_t e = 0; e < 3; ++e) {
    CHECK(back.edge(e).u == g.edge(e).u);
    CHECK(back.edge(e).v == g.edge(e).v);
    CHECK(back.edge(e).w == g.edge(e).w);  // %.17g makes this bitwise
  }
}

TEST_CASE("edge list parsing") {
  SUBCASE("comments, blanks, and default weights") {
    const std::string p = write_file("edges_ok.txt",
                                     "# a comment line\n"
                                     "\n"
                                     "0 1\n"
                                     "1 2 0.25   # trailing comment\n"
                                     "  3 1  \n");
    const Graph g = read_edge_list(p);
    CHECK(g.node_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.edge_weight(0, 1) == 1.0);
    CHECK(g.edge_weight(1, 2) == 0.25);
    CHECK(g.edge_weight(1, 3) == 1.0);
  }
  SUBCASE("one-based ids shift down") {
    const std::string p = write_file("edges_1b.txt", "1 2\n2 3\n");
    const Graph g = read_edge_list(p, true);
    CHECK(g.node_count() == 3);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
  }
  SUBCASE("errors carry the file and line") {
    CHECK(parse_error_message([] { read_edge_list(tmp().path("missing.txt")); })
              .find("cannot open for reading") != std::string::npos);

    const std::string one_field = write_file("edges_1f.txt", "0 1\n7\n");
    std::string msg = parse_error_message([&] { read_edge_list(one_field); });
    CHECK(msg.find("edges_1f.txt:2") != std::string::npos);
    CHECK(msg.find("1 fields") != std::string::npos);

    const std::string four_fields = write_file("edges_4f.txt", "0 1 1.0 extra\n");
    CHECK(parse_error_message([&] { read_edge_list(four_fields); }).find("4 fields") !=
          std::string::npos);

    const std::string bad_id = write_file("edges_badid.txt", "0 x\n");
    msg = parse_error_message([&] { read_edge_list(bad_id); });
    CHECK(msg.find("expected an integer") != std::string::npos);

    const std::string negative = write_file("edges_neg.txt", "0 -2\n");
    CHECK(parse_error_message([&] { read_edge_list(negative); }).find("negative node id") !=
          std::string::npos);

    const std::string zero_one_based = write_file("edges_zero1b.txt", "0 1\n");
    CHECK(parse_error_message([&] { read_edge_list(zero_one_based, true); })
              .find(">= 1 with --one-based") != std::string::npos);

    const std::string self_loop = write_file("edges_loop.txt", "3 3\n");
    CHECK(parse_error_message([&] { read_edge_list(self_loop); }).find("self-loop") !=
          std::string::npos);

    const std::string dup = write_file("edges_dup.txt", "0 1\n2 3\n1 0 2.5\n");
    msg = parse_error_message([&] { read_edge_list(dup); });
    CHECK(msg.find("edges_dup.txt:3") != std::string::npos);
    CHECK(msg.find("duplicate edge (0, 1)") != std::string::npos);
    CHECK(msg.find("first seen on line 1") != std::string::npos);

    const std::string zero_weight = write_file("edges_w0.txt", "0 1 0\n");
    CHECK(parse_error_message([&] { read_edge_list(zero_weight); })
              .find("weight must be positive") != std::string::npos);

    const std::string neg_weight = write_file("edges_wneg.txt", "0 1 -0.5\n");
    CHECK(parse_error_message([&] { read_edge_list(neg_weight); })
              .find("weight must be positive") != std::string::npos);

    const std::string bad_weight = write_file("edges_wbad.txt", "0 1 banana\n");
    CHECK(parse_error_message([&] { read_edge_list(bad_weight); }).find("expected a number") !=
          std::string::npos);
  }
}

TEST_CASE("labels csv") {
  SUBCASE("with and without header") {
    const std::string with = write_file("labels_h.csv", "node_id,label\n0,1\n1,0\n2,1\n");
    CHECK(read_labels_csv(with, 3) == std::vector<int>{1, 0, 1});
    const std::string without = write_file("labels_nh.csv", "0,1\n1,0\n2,1\n");
    CHECK(read_labels_csv(without, 3) == std::vector<int>{1, 0, 1});
  }
  SUBCASE("one-based node ids") {
    const std::string p = write_file("labels_1b.csv", "1,4\n2,2\n");
    CHECK(read_labels_csv(p, 2, true) == std::vector<int>{4, 2});
  }
  SUBCASE("errors") {
    const std::string wide = write_file("labels_wide.csv", "0,1,9\n");
    CHECK(parse_error_message([&] { read_labels_csv(wide, 1); }).find("expected 'node_id,label'") !=
          std::string::npos);

    const std::string out_of_range = write_file("labels_oor.csv", "0,1\n5,0\n");
    CHECK(parse_error_message([&] { read_labels_csv(out_of_range, 2); })
              .find("outside [0, 2)") != std::string::npos);

    const std::string negative = write_file("labels_negl.csv", "0,-1\n1,0\n");
    CHECK(parse_error_message([&] { read_labels_csv(negative, 2); })
              .find("labels must be non-negative") != std::string::npos);

    const std::string twice = write_file("labels_twice.csv", "0,1\n0,2\n");
    CHECK(parse_error_message([&] { read_labels_csv(twice, 1); }).find("labeled twice") !=
          std::string::npos);

    const std::string gap = write_file("labels_gap.csv", "0,1\n2,0\n");
    CHECK(parse_error_message([&] { read_labels_csv(gap, 3); }).find("node 1 has no label") !=
          std::string::npos);
  }
}

TEST_CASE("features csv") {
  SUBCASE("with and without header") {
    const std::string with = write_file("feat_h.csv", "f0,f1\n1.5, -2\n0,3.25\n");
    const Eigen::MatrixXd m = read_features_csv(with, 2);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 0) == 1.5);
    CHECK(m(0, 1) == -2.0);
    CHECK(m(1, 1) == 3.25);
    const std::string without = write_file("feat_nh.csv", "1,2\n3,4\n");
    CHECK(read_features_csv(without, 2)(1, 0) == 3.0);
  }
  SUBCASE("errors") {
    const std::string ragged = write_file("feat_ragged.csv", "1,2\n3\n");
    CHECK(parse_error_message([&] { read_features_csv(ragged, 2); })
              .find("expected 2 columns, got 1") != std::string::npos);

    const std::string short_file = write_file("feat_short.csv", "1,2\n");
    CHECK(parse_error_message([&] { read_features_csv(short_file, 3); })
              .find("expected 3 feature rows, got 1") != std::string::npos);

    const std::string bad = write_file("feat_bad.csv", "1,2\n3,x\n");
    CHECK(parse_error_message([&] { read_features_csv(bad, 2); }).find("expected a number") !=
          std::string::npos);
  }
}

TEST_CASE("curvature edge list writer") {
  const Graph g = Graph::from_pairs(3, {{0, 1}, {1, 2}});
  CurvatureMap map;
  map.kappa = {0.5, -0.25};

  const std::string plain = tmp().path("curv_plain.txt");
  write_curvature_edge_list(plain, g, map);
  CHECK(slurp(plain) == "0 1 0.5\n1 2 -0.25\n");

  map.normalized = std::vector<double>{1.0, -0.5};
  const std::string with_norm = tmp().path("curv_norm.txt");
  write_curvature_edge_list(with_norm, g, map);
  CHECK(slurp(with_norm) == "0 1 0.5 1\n1 2 -0.25 -0.5\n");

  map.kappa.pop_back();
  CHECK_THROWS_AS(write_curvature_edge_list(tmp().path("curv_bad.txt"), g, map),
                  std::invalid_argument);
}

TEST_CASE("histogram, energy, and matrix writers") {
  const std::string hist = tmp().path("hist.csv");
  write_histogram_csv(hist, {{-1.0, 0.0, 2}, {0.0, 1.0, 3}});
  CHECK(slurp(hist) == "bin_left,bin_right,count\n-1,0,2\n0,1,3\n");

  EnergyTrace trace;
  trace.energy = {0.5, 0.125};
  const std::string energy = tmp().path("energy.csv");
  write_energy_csv(energy, trace);
  CHECK(slurp(energy) == "step,energy\n0,0.5\n1,0.125\n");

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  m(0, 0) = 1.5;
  m(1, 2) = -2.0;
  const std::string coord = tmp().path("matrix.txt");
  write_matrix_coordinate(coord, m);
  CHECK(slurp(coord) == "# 2 3 2\n0 0 1.5\n1 2 -2\n");
}

TEST_CASE("write failures name the path") {
  const std::string bad = tmp().path("no_such_dir") + "/out.txt";
  try {
    write_energy_csv(bad, EnergyTrace{});
    FAIL("expected runtime_error");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find("cannot open for writing") != std::string::npos);
  }
}
