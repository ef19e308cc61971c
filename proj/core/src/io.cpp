#include "curvlet/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace curvlet {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string location(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.erase(0, 1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.pop_back();
    fields.push_back(field);
  }
  return fields;
}

bool try_parse_long(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtol(tok.c_str(), &end, 10);
  return errno == 0 && end == tok.c_str() + tok.size();
}

bool try_parse_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tok.c_str(), &end);
  return errno == 0 && end == tok.c_str() + tok.size();
}

long parse_long(const std::string& tok, const std::string& path, std::size_t line) {
  long v;
  if (!try_parse_long(tok, v))
    throw ParseError(location(path, line) + ": expected an integer, got '" + tok + "'");
  return v;
}

double parse_double(const std::string& tok, const std::string& path, std::size_t line) {
  double v;
  if (!try_parse_double(tok, v))
    throw ParseError(location(path, line) + ": expected a number, got '" + tok + "'");
  return v;
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

Graph read_edge_list(const std::string& path, bool one_based) {
  std::ifstream in = open_for_read(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<Edge> edges;
  std::unordered_map<long long, std::size_t> seen;  // canonical key -> first line
  int max_id = -1;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3)
      throw ParseError(location(path, lineno) + ": expected 'i j [weight]', got " +
                       std::to_string(tokens.size()) + " fields");
    long u = parse_long(tokens[0], path, lineno);
    long v = parse_long(tokens[1], path, lineno);
    if (one_based) {
      if (u < 1 || v < 1)
        throw ParseError(location(path, lineno) + ": ids must be >= 1 with --one-based");
      --u;
      --v;
    }
    if (u < 0 || v < 0) throw ParseError(location(path, lineno) + ": negative node id");
    if (u == v) throw ParseError(location(path, lineno) + ": self-loop at node " + std::to_string(u));
    double w = 1.0;
    if (tokens.size() == 3) {
      w = parse_double(tokens[2], path, lineno);
      if (!(w > 0.0)) throw ParseError(location(path, lineno) + ": edge weight must be positive");
    }
    long a = std::min(u, v), b = std::max(u, v);
    const long long key = a * 2000000000LL + b;
    const auto [it, inserted] = seen.emplace(key, lineno);
    if (!inserted)
      throw ParseError(location(path, lineno) + ": duplicate edge (" + std::to_string(a) + ", " +
                       std::to_string(b) + "), first seen on line " + std::to_string(it->second));
    edges.push_back({static_cast<int>(a), static_cast<int>(b), w});
    max_id = std::max(max_id, static_cast<int>(b));
  }
  return Graph::from_edges(max_id + 1, std::move(edges));
}

void write_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out = open_for_write(path);
  for (const auto& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  finish_write(out, path);
}

std::vector<int> read_labels_csv(const std::string& path, int n, bool one_based) {
  std::ifstream in = open_for_read(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  bool first_content = true;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (first_content) {
      first_content = false;
      long probe;
      if (!fields.empty() && !try_parse_long(fields[0], probe)) continue;  // header row
    }
    if (fields.size() != 2)
      throw ParseError(location(path, lineno) + ": expected 'node_id,label', got " +
                       std::to_string(fields.size()) + " fields");
    long node = parse_long(fields[0], path, lineno);
    const long label = parse_long(fields[1], path, lineno);
    if (one_based) {
      if (node < 1) throw ParseError(location(path, lineno) + ": ids must be >= 1 with --one-based");
      --node;
    }
    if (node < 0 || node >= n)
      throw ParseError(location(path, lineno) + ": node " + std::to_string(node) +
                       " outside [0, " + std::to_string(n) + ")");
    if (label < 0) throw ParseError(location(path, lineno) + ": labels must be non-negative");
    if (labels[static_cast<std::size_t>(node)] != -1)
      throw ParseError(location(path, lineno) + ": node " + std::to_string(node) + " labeled twice");
    labels[static_cast<std::size_t>(node)] = static_cast<int>(label);
  }
  for (int i = 0; i < n; ++i)
    if (labels[static_cast<std::size_t>(i)] == -1)
      throw ParseError(path + ": node " + std::to_string(i) + " has no label");
  return labels;
}

Eigen::MatrixXd read_features_csv(const std::string& path, int n) {
  std::ifstream in = open_for_read(path);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<double>> rows;
  bool first_content = true;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (first_content) {
      first_content = false;
      double probe;
      if (!fields.empty() && !try_parse_double(fields[0], probe)) continue;  // header row
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f, path, lineno));
    if (!rows.empty() && rows.front().size() != row.size())
      throw ParseError(location(path, lineno) + ": expected " + std::to_string(rows.front().size()) +
                       " columns, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (static_cast<int>(rows.size()) != n)
    throw ParseError(path + ": expected " + std::to_string(n) + " feature rows, got " +
                     std::to_string(rows.size()));
  Eigen::MatrixXd features(n, rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (int i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < features.cols(); ++j)
      features(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return features;
}

void write_curvature_edge_list(const std::string& path, const Graph& g, const CurvatureMap& map) {
  if (map.kappa.size() != g.edge_count())
    throw std::invalid_argument("write_curvature_edge_list: map does not match the graph");
  std::ofstream out = open_for_write(path);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << edge.u << ' ' << edge.v << ' ' << format_double(map.kappa[e]);
    if (map.normalized) out << ' ' << format_double((*map.normalized)[e]);
    out << '\n';
  }
  finish_write(out, path);
}

void write_histogram_csv(const std::string& path, const std::vector<HistogramBin>& bins) {
  std::ofstream out = open_for_write(path);
  out << "bin_left,bin_right,count\n";
  for (const auto& b : bins)
    out << format_double(b.left) << ',' << format_double(b.right) << ',' << b.count << '\n';
  finish_write(out, path);
}

void write_matrix_coordinate(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out = open_for_write(path);
  std::size_t nnz = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0.0) ++nnz;
  out << "# " << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0.0) out << r << ' ' << c << ' ' << format_double(m(r, c)) << '\n';
  finish_write(out, path);
}

void write_energy_csv(const std::string& path, const EnergyTrace& trace) {
  std::ofstream out = open_for_write(path);
  out << "step,energy\n";
  for (std::size_t i = 0; i < trace.energy.size(); ++i)
    out << i << ',' << format_double(trace.energy[i]) << '\n';
  finish_write(out, path);
}

}  // namespace curvlet
