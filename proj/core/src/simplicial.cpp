#include "topoflux/simplicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "topoflux/errors.hpp"

namespace topoflux {

Simplex::Simplex(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InvalidSimplexError("simplex needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.front() < 0) throw InvalidSimplexError("negative vertex index");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InvalidSimplexError("duplicate vertex within a simplex");
}

bool Simplex::has_face(const Simplex& other) const {
  return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(),
                       other.vertices_.end());
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (dimension() == 0) return out;
  out.reserve(vertices_.size());
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    std::vector<int> face;
    face.reserve(vertices_.size() - 1);
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (i != skip) face.push_back(vertices_[i]);
    out.emplace_back(std::move(face));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::strong_ordering Simplex::operator<=>(const Simplex& other) const {
  if (auto c = vertices_.size() <=> other.vertices_.size(); c != 0) return c;
  return vertices_ <=> other.vertices_;
}

SimplicialComplex SimplicialComplex::closure(const std::vector<Simplex>& generators) {
  SimplicialComplex out;
  for (const Simplex& g : generators) {
    const auto& v = g.vertices();
    const std::size_t n = v.size();
    // Every nonempty subset of the vertex set is a face of the closure.
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<int> sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(v[i]);
      out.simplices_.insert(Simplex(std::move(sub)));
    }
  }
  return out;
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const Simplex& s : simplices_) d = std::max(d, s.dimension());
  return d;
}

std::size_t SimplicialComplex::count_dimension(int k) const {
  std::size_t c = 0;
  for (const Simplex& s : simplices_)
    if (s.dimension() == k) ++c;
  return c;
}

bool SimplicialComplex::is_closed() const {
  for (const Simplex& s : simplices_)
    for (const Simplex& f : s.facets())
      if (!contains(f)) return false;
  return true;
}

BoundaryMatrix BoundaryMatrix::build(const SimplicialComplex& complex,
                                     const std::vector<Simplex>& order) {
  if (order.size() != complex.size())
    throw OrderingError("order must enumerate every simplex of the complex exactly once");
  std::map<Simplex, int> index;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!complex.contains(order[i])) throw OrderingError("order contains a foreign simplex");
    if (!index.emplace(order[i], static_cast<int>(i)).second)
      throw OrderingError("order repeats a simplex");
  }

  BoundaryMatrix m;
  m.order = order;
  m.columns.resize(order.size());
  m.column_dims.resize(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    m.column_dims[j] = order[j].dimension();
    for (const Simplex& f : order[j].facets()) {
      int i = index.at(f);
      if (i >= static_cast<int>(j)) throw OrderingError("face placed after one of its cofaces");
      m.columns[j].push_back(i);
    }
    std::sort(m.columns[j].begin(), m.columns[j].end());
  }
  return m;
}

BoundaryMatrix BoundaryMatrix::build(const SimplicialComplex& complex) {
  std::vector<Simplex> order(complex.simplices().begin(), complex.simplices().end());
  return build(complex, order);  // set order is dim-then-lex, faces first
}

void add_column_f2(std::vector<int>& dst, const std::vector<int>& src) {
  std::vector<int> out;
  out.reserve(dst.size() + src.size());
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                std::back_inserter(out));
  dst = std::move(out);
}

int rank_f2(const BoundaryMatrix& matrix, int k) {
  // Column-reduction Gaussian elimination on the k-simplex columns only.
  // low -> owning column; a column that reduces to zero is dependent.
  std::map<int, std::vector<int>> pivot;  // lowest row index -> reduced column
  int rank = 0;
  for (std::size_t j = 0; j < matrix.columns.size(); ++j) {
    if (matrix.column_dims[j] != k) continue;
    std::vector<int> col = matrix.columns[j];
    while (!col.empty()) {
      auto it = pivot.find(col.back());
      if (it == pivot.end()) break;
      add_column_f2(col, it->second);
    }
    if (!col.empty()) {
      ++rank;
      pivot.emplace(col.back(), std::move(col));
    }
  }
  return rank;
}

std::vector<int> betti_numbers(const SimplicialComplex& complex, int max_dim) {
  BoundaryMatrix m = BoundaryMatrix::build(complex);
  std::vector<int> betti(max_dim + 1, 0);
  for (int k = 0; k <= max_dim; ++k) {
    auto n_k = static_cast<int>(complex.count_dimension(k));
    int rank_k = (k == 0) ? 0 : rank_f2(m, k);  // boundary of a vertex is zero
    int nullity_k = n_k - rank_k;
    betti[k] = nullity_k - rank_f2(m, k + 1);
  }
  return betti;
}

}  // namespace topoflux
