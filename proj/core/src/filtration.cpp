#include "topoflux/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "topoflux/errors.hpp"

namespace topoflux {

namespace {

double distance(const PointCloud& cloud, int a, int b) {
  return (cloud.row(a) - cloud.row(b)).norm();
}

// Diameter of a simplex and the lexicographically smallest pair realizing it.
std::pair<double, std::array<int, 2>> diameter_witness(const PointCloud& cloud,
                                                       const std::vector<int>& verts) {
  double best = 0.0;
  std::array<int, 2> witness = kNoWitness;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      double d = distance(cloud, verts[i], verts[j]);
      std::array<int, 2> pair = {verts[i], verts[j]};
      if (witness == kNoWitness || d > best || (d == best && pair < witness)) {
        best = d;
        witness = pair;
      }
    }
  }
  return {best, witness};
}

bool canonical_less(const FiltrationEntry& a, const FiltrationEntry& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.simplex < b.simplex;  // dimension ascending, then lexicographic
}

Filtration diameter_filtration(const PointCloud& cloud, const SimplicialComplex& complex) {
  std::vector<FiltrationEntry> entries;
  entries.reserve(complex.size());
  for (const Simplex& s : complex.simplices()) {
    FiltrationEntry e{s, 0.0, kNoWitness};
    if (s.dimension() >= 1) {
      auto [diam, wit] = diameter_witness(cloud, s.vertices());
      e.value = diam;
      e.witness = wit;
    }
    entries.push_back(std::move(e));
  }
  return Filtration::from_entries(std::move(entries));
}

}  // namespace

Filtration Filtration::from_entries(std::vector<FiltrationEntry> entries) {
  std::sort(entries.begin(), entries.end(), canonical_less);
  std::map<Simplex, std::size_t> index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!index.emplace(entries[i].simplex, i).second)
      throw OrderingError("filtration repeats a simplex");
  }
  for (const FiltrationEntry& e : entries) {
    for (const Simplex& f : e.simplex.facets()) {
      auto it = index.find(f);
      if (it == index.end()) throw OrderingError("filtration misses a face");
      if (entries[it->second].value > e.value)
        throw OrderingError("filtration value of a face exceeds its coface");
    }
  }
  Filtration out;
  out.entries_ = std::move(entries);
  return out;
}

int Filtration::index_of(const Simplex& s) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].simplex == s) return static_cast<int>(i);
  return -1;
}

SimplicialComplex Filtration::complex() const {
  std::vector<Simplex> gens;
  gens.reserve(entries_.size());
  for (const FiltrationEntry& e : entries_) gens.push_back(e.simplex);
  return SimplicialComplex::closure(gens);
}

Filtration weak_alpha_filtration(const PointCloud& cloud) {
  return diameter_filtration(cloud, delaunay_2d(cloud));
}

Filtration vietoris_rips_filtration(const PointCloud& cloud, int max_dim, std::size_t budget) {
  if (max_dim < 1) throw ConfigError("vietoris_rips_filtration requires max_dim >= 1");
  validate_cloud(cloud, /*require_distinct=*/true);
  const int n = static_cast<int>(cloud.rows());
  const int top = std::min(max_dim + 1, n - 1);  // dimension of the largest simplices

  // Count before enumerating so oversized requests fail fast.
  std::size_t total = 0;
  for (int k = 0; k <= top; ++k) {
    // C(n, k+1), capped to avoid overflow.
    long double c = 1.0L;
    for (int i = 0; i < k + 1; ++i) c = c * static_cast<long double>(n - i) / (i + 1);
    total += static_cast<std::size_t>(std::min<long double>(c + 0.5L, 1e18L));
    if (total > budget)
      throw ResourceError("Vietoris-Rips complex would hold more than " + std::to_string(budget) +
                          " simplices (at least " + std::to_string(total) +
                          "); lower max_dim or raise the budget");
  }

  std::vector<FiltrationEntry> entries;
  entries.reserve(total);
  std::vector<int> verts;
  // Enumerate all vertex subsets of size <= top + 1 with increasing indices.
  auto extend = [&](auto&& self, int next) -> void {
    for (int v = next; v < n; ++v) {
      verts.push_back(v);
      FiltrationEntry e{Simplex(verts), 0.0, kNoWitness};
      if (verts.size() >= 2) {
        auto [diam, wit] = diameter_witness(cloud, verts);
        e.value = diam;
        e.witness = wit;
      }
      entries.push_back(std::move(e));
      if (static_cast<int>(verts.size()) <= top) self(self, v + 1);
      verts.pop_back();
    }
  };
  extend(extend, 0);
  return Filtration::from_entries(std::move(entries));
}

}  // namespace topoflux
