#include "topoflux/persistence.hpp"

#include <algorithm>
#include <map>

#include "topoflux/errors.hpp"
#include "topoflux/simplicial.hpp"

namespace topoflux {

PersistencePairing reduce(const Filtration& filtration, bool clearing) {
  const std::size_t m = filtration.size();

  // Boundary columns in filtration order.
  std::map<Simplex, int> index;
  for (std::size_t i = 0; i < m; ++i) index.emplace(filtration[i].simplex, static_cast<int>(i));

  PersistencePairing out;
  out.reduced.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<int>& col = out.reduced[j];
    for (const Simplex& f : filtration[j].simplex.facets()) {
      auto it = index.find(f);
      if (it == index.end()) throw OrderingError("filtration misses a face");
      col.push_back(it->second);
    }
    std::sort(col.begin(), col.end());
  }

  std::vector<int> low_to_col(m, -1);
  std::vector<char> cleared(m, 0);

  if (clearing) {
    // Twist: a simplex that kills something cannot itself give birth, so its
    // column may be zeroed before reduction.  Process dimensions descending.
    int top = 0;
    for (std::size_t j = 0; j < m; ++j) top = std::max(top, filtration[j].simplex.dimension());
    for (int d = top; d >= 1; --d) {
      for (std::size_t j = 0; j < m; ++j) {
        if (filtration[j].simplex.dimension() != d || cleared[j]) continue;
        std::vector<int>& col = out.reduced[j];
        while (!col.empty() && low_to_col[col.back()] != -1)
          add_column_f2(col, out.reduced[low_to_col[col.back()]]);
        if (!col.empty()) {
          low_to_col[col.back()] = static_cast<int>(j);
          cleared[col.back()] = 1;
          out.reduced[col.back()].clear();
        }
      }
    }
  } else {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<int>& col = out.reduced[j];
      while (!col.empty() && low_to_col[col.back()] != -1)
        add_column_f2(col, out.reduced[low_to_col[col.back()]]);
      if (!col.empty()) low_to_col[col.back()] = static_cast<int>(j);
    }
  }

  std::vector<char> paired(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (low_to_col[i] != -1) {
      int j = low_to_col[i];
      out.pairs.push_back({static_cast<int>(i), j, filtration[i].simplex.dimension()});
      paired[i] = 1;
      paired[j] = 1;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!paired[j] && out.reduced[j].empty())
      out.essential.push_back({static_cast<int>(j), filtration[j].simplex.dimension()});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const auto& a, const auto& b) { return a.birth < b.birth; });
  return out;
}

std::vector<PersistenceDiagram> diagrams(const Filtration& filtration,
                                         const PersistencePairing& pairing, int max_dim) {
  std::vector<PersistenceDiagram> out(max_dim + 1);
  for (int k = 0; k <= max_dim; ++k) out[k].dim = k;
  for (const auto& p : pairing.pairs) {
    if (p.dim > max_dim) continue;
    double b = filtration[p.birth].value;
    double d = filtration[p.death].value;
    if (!(b < d)) continue;  // zero-persistence pairs never surface
    out[p.dim].regular.push_back({b, d, p.birth, p.death});
  }
  for (const auto& e : pairing.essential) {
    if (e.dim > max_dim) continue;
    out[e.dim].essential.push_back({filtration[e.birth].value, e.birth});
  }
  for (auto& dgm : out) {
    std::sort(dgm.regular.begin(), dgm.regular.end(), [](const auto& a, const auto& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      if (a.death != b.death) return a.death < b.death;
      return a.birth_index < b.birth_index;
    });
    std::sort(dgm.essential.begin(), dgm.essential.end(), [](const auto& a, const auto& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      return a.birth_index < b.birth_index;
    });
  }
  return out;
}

namespace {

// Peels the even-degree edge set into simple loops; walking always takes the
// unused edge toward the smallest neighbor, so the decomposition is
// deterministic.
std::vector<std::vector<std::array<int, 2>>> peel_loops(
    const std::vector<std::array<int, 2>>& edges) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge id)
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e][0]].push_back({edges[e][1], static_cast<int>(e)});
    adj[edges[e][1]].push_back({edges[e][0], static_cast<int>(e)});
  }
  for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

  std::vector<char> used(edges.size(), 0);
  std::vector<std::vector<std::array<int, 2>>> loops;
  for (const auto& [start, _] : adj) {
    while (true) {
      // Any unused edge at `start` opens a new loop.
      int first_edge = -1, first_to = -1;
      for (const auto& [to, e] : adj[start]) {
        if (!used[e]) {
          first_edge = e;
          first_to = to;
          break;
        }
      }
      if (first_edge == -1) break;
      std::vector<std::array<int, 2>> loop;
      used[first_edge] = 1;
      loop.push_back({start, first_to});
      int at = first_to;
      while (at != start) {
        bool advanced = false;
        for (const auto& [to, e] : adj[at]) {
          if (used[e]) continue;
          used[e] = 1;
          loop.push_back({at, to});
          at = to;
          advanced = true;
          break;
        }
        if (!advanced) break;  // defensive; even degrees guarantee closure
      }
      loops.push_back(std::move(loop));
    }
  }
  return loops;
}

}  // namespace

std::vector<std::array<int, 2>> representative_cycle(const Filtration& filtration,
                                                     const PersistencePairing& pairing,
                                                     int rank) {
  // Rank the 1-dimensional regular points exactly as loss terms do.
  auto dgms = diagrams(filtration, pairing, 1);
  std::vector<DiagramPoint> pts = dgms[1].regular;
  std::sort(pts.begin(), pts.end(), [](const DiagramPoint& a, const DiagramPoint& b) {
    double pa = a.death - a.birth, pb = b.death - b.birth;
    if (pa != pb) return pa > pb;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.birth_index < b.birth_index;
  });
  if (rank < 1 || rank > static_cast<int>(pts.size()))
    throw NotFoundError("no 1-cycle of persistence rank " + std::to_string(rank));

  const DiagramPoint& pt = pts[rank - 1];
  const std::vector<int>& cycle_cols = pairing.reduced[pt.death_index];
  std::vector<std::array<int, 2>> edges;
  edges.reserve(cycle_cols.size());
  for (int idx : cycle_cols) {
    const auto& v = filtration[idx].simplex.vertices();
    edges.push_back({v[0], v[1]});
  }
  auto loops = peel_loops(edges);
  std::size_t best = 0;
  for (std::size_t i = 1; i < loops.size(); ++i)
    if (loops[i].size() > loops[best].size()) best = i;
  return loops.empty() ? std::vector<std::array<int, 2>>{} : loops[best];
}

}  // namespace topoflux
