#include "topoflux/embedders.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <set>

#include "topoflux/errors.hpp"
#include "topoflux/rng.hpp"

namespace topoflux {

void GraphData::validate() const {
  std::set<std::array<int, 2>> seen;
  for (const auto& e : edges) {
    if (e[0] == e[1]) throw ConfigError("graph has a self-loop at node " + std::to_string(e[0]));
    if (e[0] < 0 || e[1] < 0 || e[0] >= node_count || e[1] >= node_count)
      throw ConfigError("graph edge references a node outside [0, n)");
    auto key = std::minmax(e[0], e[1]);
    if (!seen.insert({key.first, key.second}).second)
      throw ConfigError("graph repeats an edge");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != node_count)
    throw ConfigError("graph labels must be empty or one per node");
}

bool GraphData::has_edge(int u, int v) const {
  auto key = std::minmax(u, v);
  for (const auto& e : edges)
    if (e[0] == key.first && e[1] == key.second) return true;
  return false;
}

std::pair<double, Eigen::MatrixXd> pca_loss_grad(const Eigen::MatrixXd& X,
                                                 const Eigen::MatrixXd& W) {
  if (X.cols() != W.rows())
    throw ConfigError("projection has " + std::to_string(W.rows()) + " rows but data has " +
                      std::to_string(X.cols()) + " columns");
  const Eigen::MatrixXd residual = X * (W * W.transpose()) - X;
  const double scale = 1.0 / static_cast<double>(X.rows() * X.cols());
  const double loss = scale * residual.squaredNorm();
  // d/dW of scale * ||X W W^T - X||_F^2.
  Eigen::MatrixXd grad =
      2.0 * scale * (X.transpose() * residual + residual.transpose() * X) * W;
  return {loss, grad};
}

Eigen::MatrixXd stiefel_step(const Eigen::MatrixXd& W, const Eigen::MatrixXd& euclidean_grad,
                             double step_size) {
  if (step_size <= 0.0) throw ConfigError("step size must be positive");
  // Tangent projection at W, then QR retraction.
  const Eigen::MatrixXd wtg = W.transpose() * euclidean_grad;
  const Eigen::MatrixXd sym = (wtg + wtg.transpose()) / 2.0;
  const Eigen::MatrixXd tangent = euclidean_grad - W * sym;
  const Eigen::MatrixXd stepped = W - step_size * tangent;

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(stepped);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(W.rows(), W.cols());
  Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(W.cols(), W.cols());
  for (int c = 0; c < W.cols(); ++c) {
    const double r = R(c, c);
    if (r == 0.0) throw Error("rank-deficient update; QR retraction failed");
    if (r < 0.0) Q.col(c) = -Q.col(c);
  }
  return Q;
}

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& X) {
  return X.rowwise() - X.colwise().mean();
}

Eigen::MatrixXd pca_projection(const Eigen::MatrixXd& X, int d) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
  Eigen::MatrixXd W = svd.matrixV().leftCols(d);
  // Deterministic column signs.
  for (int c = 0; c < W.cols(); ++c) {
    int lead;
    W.col(c).cwiseAbs().maxCoeff(&lead);
    if (W(lead, c) < 0.0) W.col(c) = -W.col(c);
  }
  return W;
}

KnnGraph build_knn_graph(const Eigen::MatrixXd& X, int k) {
  const int n = static_cast<int>(X.rows());
  if (k < 1 || k >= n) throw ConfigError("kNN graph needs 1 <= k < n");

  // Directed weights w_ij = exp(-(d_ij - rho_i) / sigma_i) with sigma_i
  // calibrated so the weights sum to log2(k).
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const double target = std::log2(static_cast<double>(k));
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      dist.push_back({(X.row(i) - X.row(j)).norm(), j});
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    const double rho = dist[0].first;

    auto weight_sum = [&](double sigma) {
      double s = 0.0;
      for (int r = 0; r < k; ++r) s += std::exp(-std::max(0.0, dist[r].first - rho) / sigma);
      return s;
    };
    double lo = 1e-6, hi = 1.0;
    while (weight_sum(hi) < target && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 64; ++it) {
      const double mid = (lo + hi) / 2.0;
      (weight_sum(mid) < target ? lo : hi) = mid;
    }
    const double sigma = (lo + hi) / 2.0;
    for (int r = 0; r < k; ++r)
      w(i, dist[r].second) = std::exp(-std::max(0.0, dist[r].first - rho) / sigma);
  }

  KnnGraph g;
  g.node_count = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double u = w(i, j) + w(j, i) - w(i, j) * w(j, i);  // probabilistic union
      if (u > 0.0) g.edges.push_back({i, j, u});
    }
  }
  return g;
}

LossGrad umap_like_loss_grad(const KnnGraph& graph, const Eigen::MatrixXd& E, int negatives,
                             std::uint64_t seed) {
  const int n = static_cast<int>(E.rows());
  if (graph.node_count != n) throw ConfigError("embedding rows must match the kNN graph");
  LossGrad out;
  out.gradient = Gradient::Zero(E.rows(), E.cols());
  if (graph.edges.empty()) return out;

  std::mt19937_64 rng = make_rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  constexpr double kRepulsionEps = 1e-2;  // keeps -log(1 - q + eps) smooth at d = 0

  for (const auto& edge : graph.edges) {
    const Eigen::RowVectorXd diff = E.row(edge.u) - E.row(edge.v);
    const double d2 = diff.squaredNorm();
    const double q = 1.0 / (1.0 + d2);  // Cauchy kernel, a = b = 1
    out.value += -edge.weight * std::log(q);
    // d(-w log q)/d e_u = 2 w q * (e_u - e_v); symmetric for e_v.
    const Eigen::RowVectorXd attract = 2.0 * edge.weight * q * diff;
    out.gradient.row(edge.u) += attract;
    out.gradient.row(edge.v) -= attract;

    for (int s = 0; s < negatives; ++s) {
      const int j = pick(rng);
      if (j == edge.u) continue;
      const Eigen::RowVectorXd ndiff = E.row(edge.u) - E.row(j);
      const double nd2 = ndiff.squaredNorm();
      const double nq = 1.0 / (1.0 + nd2);
      out.value += -std::log1p(-nq + kRepulsionEps);
      // dL/d e_u for -log(1 - q + eps) with q = 1/(1 + d^2).
      const double coeff = -2.0 * nq * nq / (1.0 - nq + kRepulsionEps);
      out.gradient.row(edge.u) += coeff * ndiff;
      out.gradient.row(j) -= coeff * ndiff;
    }
  }
  const double scale = 1.0 / static_cast<double>(graph.edges.size());
  out.value *= scale;
  out.gradient *= scale;
  return out;
}

LossGrad inner_product_graph_loss_grad(const GraphData& graph, const Eigen::MatrixXd& E) {
  const int n = graph.node_count;
  if (E.rows() != n) throw ConfigError("embedding rows must match the node count");
  std::set<std::array<int, 2>> edge_set;
  for (const auto& e : graph.edges) {
    auto key = std::minmax(e[0], e[1]);
    edge_set.insert({key.first, key.second});
  }

  LossGrad out;
  out.gradient = Gradient::Zero(E.rows(), E.cols());
  const double pairs = n * (n - 1) / 2.0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double y = edge_set.count({u, v}) ? 1.0 : 0.0;
      const double s = 1.0 / (1.0 + std::exp(-E.row(u).dot(E.row(v))));
      out.value += y > 0.5 ? -std::log(std::max(s, 1e-300))
                           : -std::log(std::max(1.0 - s, 1e-300));
      const double coeff = (s - y) / pairs;
      out.gradient.row(u) += coeff * E.row(v);
      out.gradient.row(v) += coeff * E.row(u);
    }
  }
  out.value /= pairs;
  return out;
}

LossGrad deepwalk_loss_grad(const GraphData& graph, const Eigen::MatrixXd& E,
                            const WalkConfig& config, std::uint64_t seed) {
  const int n = graph.node_count;
  if (E.rows() != n) throw ConfigError("embedding rows must match the node count");

  std::vector<std::vector<int>> adj(n);
  for (const auto& e : graph.edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  static bool warned_isolated = false;
  std::mt19937_64 rng = make_rng(seed);
  std::vector<std::vector<int>> walks;
  walks.reserve(static_cast<std::size_t>(n) * config.walks_per_node);
  for (int r = 0; r < config.walks_per_node; ++r) {
    for (int start = 0; start < n; ++start) {
      if (adj[start].empty()) {
        if (!warned_isolated) {
          std::cerr << "topoflux: node " << start << " is isolated; its walks contribute nothing\n";
          warned_isolated = true;
        }
        continue;
      }
      std::vector<int> walk{start};
      for (int step = 1; step < config.walk_length; ++step) {
        const auto& nbrs = adj[walk.back()];
        std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
        walk.push_back(nbrs[pick(rng)]);
      }
      walks.push_back(std::move(walk));
    }
  }

  // Unigram^(3/4) negative distribution over walk occurrences.
  std::vector<double> counts(n, 0.0);
  for (const auto& walk : walks)
    for (int v : walk) counts[v] += 1.0;
  std::vector<double> cumulative(n, 0.0);
  double mass = 0.0;
  for (int v = 0; v < n; ++v) {
    mass += std::pow(counts[v], 0.75);
    cumulative[v] = mass;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_negative = [&] {
    const double u = unit(rng) * mass;
    return static_cast<int>(std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                            cumulative.begin());
  };

  LossGrad out;
  out.gradient = Gradient::Zero(E.rows(), E.cols());
  long pair_count = 0;
  auto sigmoid = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  for (const auto& walk : walks) {
    const int len = static_cast<int>(walk.size());
    for (int c = 0; c < len; ++c) {
      for (int offset = -config.window; offset <= config.window; ++offset) {
        if (offset == 0) continue;
        const int x = c + offset;
        if (x < 0 || x >= len) continue;
        const int center = walk[c], context = walk[x];
        ++pair_count;

        const double s = sigmoid(E.row(center).dot(E.row(context)));
        out.value += -std::log(std::max(s, 1e-300));
        const double coeff = s - 1.0;
        out.gradient.row(center) += coeff * E.row(context);
        out.gradient.row(context) += coeff * E.row(center);

        for (int m = 0; m < config.negatives; ++m) {
          const int neg = draw_negative();
          if (neg == center) continue;
          const double sn = sigmoid(-E.row(center).dot(E.row(neg)));
          out.value += -std::log(std::max(sn, 1e-300));
          const double ncoeff = 1.0 - sn;
          out.gradient.row(center) += ncoeff * E.row(neg);
          out.gradient.row(neg) += ncoeff * E.row(center);
        }
      }
    }
  }
  if (pair_count > 0) {
    out.value /= pair_count;
    out.gradient /= static_cast<double>(pair_count);
  }
  return out;
}

}  // namespace topoflux
