#include "topoflux/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "topoflux/errors.hpp"
#include "topoflux/rng.hpp"

namespace topoflux {

SyntheticCycle generate_synthetic_cycle(int n, int ambient_dim, double noise_half_width,
                                        std::uint64_t seed) {
  if (n < 1) throw ConfigError("synthetic cycle needs n >= 1");
  if (ambient_dim < 2) throw ConfigError("synthetic cycle needs ambient_dim >= 2");
  std::mt19937_64 rng = make_rng(derive_seed(seed, "synthetic-cycle"));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> noise(-noise_half_width, noise_half_width);

  SyntheticCycle out;
  out.points = Eigen::MatrixXd::Zero(n, ambient_dim);
  out.angles.resize(n);
  for (int i = 0; i < n; ++i) {
    const double theta = angle(rng);
    out.angles[i] = theta;
    out.points(i, 0) = std::cos(theta);
    out.points(i, 1) = std::sin(theta);
  }
  if (noise_half_width > 0.0) {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < ambient_dim; ++c) out.points(i, c) += noise(rng);
  }
  return out;
}

Eigen::MatrixXd generate_gaussian_cloud(int n, int d, std::uint64_t seed) {
  if (n < 1) throw ConfigError("gaussian cloud needs n >= 1");
  if (d < 1) throw ConfigError("gaussian cloud needs d >= 1");
  std::mt19937_64 rng = make_rng(derive_seed(seed, "gaussian-cloud"));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd cloud(n, d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) cloud(i, c) = gauss(rng);
  return cloud;
}

NoisyCircle generate_noisy_circle(int n, double sigma, std::uint64_t seed) {
  if (n < 3) throw ConfigError("noisy circle needs n >= 3");
  std::mt19937_64 rng = make_rng(derive_seed(seed, "noisy-circle"));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> radial(0.0, sigma);
  NoisyCircle out;
  out.points.resize(n, 2);
  out.angles.resize(n);
  for (int i = 0; i < n; ++i) {
    const double theta = angle(rng);
    const double r = 1.0 + radial(rng);
    out.angles[i] = theta;
    out.points(i, 0) = r * std::cos(theta);
    out.points(i, 1) = r * std::sin(theta);
  }
  return out;
}

namespace {

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
  while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
  if (begin == end) return false;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

Eigen::MatrixXd load_point_csv(const std::string& path, bool center) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], row[c])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first_content) {  // header row
        first_content = false;
        continue;
      }
      throw ParseError("non-numeric cell in point file", line_no);
    }
    first_content = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row: expected " + std::to_string(rows.front().size()) +
                           " columns, found " + std::to_string(row.size()),
                       line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("point file holds no data rows: " + path);

  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < rows.front().size(); ++c) m(i, c) = rows[i][c];
  if (center) m = center_columns(m);
  return m;
}

GraphData load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);

  GraphData g;
  std::string line;
  long line_no = 0;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::stringstream ss(line);
    long u, v;
    if (!(ss >> u)) continue;  // blank or comment-only line
    if (!(ss >> v)) throw ParseError("edge line needs two node ids", line_no);
    std::string extra;
    if (ss >> extra) throw ParseError("trailing tokens after edge", line_no);
    if (u < 0 || v < 0) throw ParseError("negative node id", line_no);
    if (u == v) throw ParseError("self-loop at node " + std::to_string(u), line_no);
    g.edges.push_back({static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))});
    max_node = static_cast<int>(std::max<long>(max_node, std::max(u, v)));
  }
  if (g.edges.empty()) throw ParseError("edge list holds no edges: " + path);
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.node_count = max_node + 1;
  g.validate();
  return g;
}

void write_point_csv(const std::string& path, const Eigen::MatrixXd& points) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write point file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      if (c) out << ',';
      out << points(i, c);
    }
    out << '\n';
  }
}

}  // namespace topoflux
