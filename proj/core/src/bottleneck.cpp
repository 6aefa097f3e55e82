#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "topoflux/errors.hpp"
#include "topoflux/persistence.hpp"

namespace topoflux {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hopcroft-Karp maximum bipartite matching.
class BipartiteMatcher {
public:
  BipartiteMatcher(int left, int right) : adj_(left), match_left_(left, -1), match_right_(right, -1) {}

  void add_edge(int l, int r) { adj_[l].push_back(r); }

  int max_matching() {
    int matched = 0;
    while (bfs()) {
      for (int l = 0; l < static_cast<int>(adj_.size()); ++l)
        if (match_left_[l] == -1 && dfs(l)) ++matched;
    }
    return matched;
  }

private:
  bool bfs() {
    std::queue<int> q;
    dist_.assign(adj_.size(), -1);
    for (int l = 0; l < static_cast<int>(adj_.size()); ++l) {
      if (match_left_[l] == -1) {
        dist_[l] = 0;
        q.push(l);
      }
    }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj_[l]) {
        int next = match_right_[r];
        if (next == -1) {
          found = true;
        } else if (dist_[next] == -1) {
          dist_[next] = dist_[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj_[l]) {
      int next = match_right_[r];
      if (next == -1 || (dist_[next] == dist_[l] + 1 && dfs(next))) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    dist_[l] = -2;  // dead end for this phase
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_, match_right_;
  std::vector<int> dist_;
};

double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const DiagramPoint& p) { return (p.death - p.birth) / 2.0; }

// Perfect matching at threshold r: every point of A and B is matched either
// across or to the diagonal.  Left side: A + diagonal slots for B.
bool feasible(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b, double r) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  BipartiteMatcher m(na + nb, nb + na);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j)
      if (linf(a[i], b[j]) <= r) m.add_edge(i, j);
    if (diagonal_cost(a[i]) <= r) m.add_edge(i, nb + i);
  }
  for (int j = 0; j < nb; ++j) {
    if (diagonal_cost(b[j]) <= r) m.add_edge(na + j, j);
    for (int i = 0; i < na; ++i) m.add_edge(na + j, nb + i);  // diagonal-diagonal, free
  }
  return m.max_matching() == na + nb;
}

double regular_part_distance(const std::vector<DiagramPoint>& a,
                             const std::vector<DiagramPoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::vector<double> candidates;
  for (const auto& p : a) candidates.push_back(diagonal_cost(p));
  for (const auto& q : b) candidates.push_back(diagonal_cost(q));
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;
  if (feasible(a, b, candidates[lo])) return candidates[lo];
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid;
  }
  return candidates[hi];
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b) {
  if (a.dim != b.dim)
    throw ConfigError("bottleneck distance needs diagrams of the same homology dimension");

  // Essential points pair with essential points only; unequal counts cannot
  // be matched at finite cost.
  if (a.essential.size() != b.essential.size()) return kInf;
  std::vector<double> ea, eb;
  for (const auto& p : a.essential) ea.push_back(p.birth);
  for (const auto& q : b.essential) eb.push_back(q.birth);
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential_cost = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i)
    essential_cost = std::max(essential_cost, std::abs(ea[i] - eb[i]));

  return std::max(essential_cost, regular_part_distance(a.regular, b.regular));
}

}  // namespace topoflux
