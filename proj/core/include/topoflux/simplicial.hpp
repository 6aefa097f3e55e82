#pragma once

#include <compare>
#include <set>
#include <vector>

namespace topoflux {

/// A face of an abstract simplicial complex, stored as its strictly
/// increasing list of vertex indices.  Dimension is |vertices| - 1.
class Simplex {
public:
  /// Sorts the vertex list; throws InvalidSimplexError on repeated or
  /// negative indices or an empty list.
  explicit Simplex(std::vector<int> vertices);
  Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

  int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<int>& vertices() const { return vertices_; }

  bool has_face(const Simplex& other) const;

  /// All codimension-1 faces (empty for vertices), in lexicographic order.
  std::vector<Simplex> facets() const;

  /// Orders by dimension, then lexicographically by vertices, so that in a
  /// sorted range every face of a simplex appears before the simplex itself
  /// whenever both are present.
  std::strong_ordering operator<=>(const Simplex& other) const;
  bool operator==(const Simplex& other) const = default;

private:
  std::vector<int> vertices_;
};

/// A finite abstract simplicial complex: a set of simplices closed under
/// taking nonempty subsets.
class SimplicialComplex {
public:
  SimplicialComplex() = default;

  /// The smallest simplicial complex containing all generators.
  static SimplicialComplex closure(const std::vector<Simplex>& generators);

  const std::set<Simplex>& simplices() const { return simplices_; }
  bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
  std::size_t size() const { return simplices_.size(); }
  int dimension() const;
  std::size_t count_dimension(int k) const;

  /// Verifies the closure property; used by tests and validation paths.
  bool is_closed() const;

private:
  std::set<Simplex> simplices_;
};

/// Sparse boundary matrix over F2 for a fixed total order of simplices.
/// Column j lists the row indices of the codimension-1 faces of simplex j;
/// faces always precede cofaces in the order.
struct BoundaryMatrix {
  std::vector<Simplex> order;
  std::vector<std::vector<int>> columns;  // sorted row indices per column
  std::vector<int> column_dims;

  /// Builds the matrix for the given order.  Throws OrderingError if the
  /// order misses simplices of the complex or places a face after a coface.
  static BoundaryMatrix build(const SimplicialComplex& complex,
                              const std::vector<Simplex>& order);

  /// Canonical order: dimension ascending, then lexicographic.
  static BoundaryMatrix build(const SimplicialComplex& complex);
};

/// Adds column `src` into `dst` over F2 (symmetric difference of sorted sets).
void add_column_f2(std::vector<int>& dst, const std::vector<int>& src);

/// Rank over F2 of the boundary operator restricted to k-simplex columns.
int rank_f2(const BoundaryMatrix& matrix, int k);

/// Betti numbers beta_0 .. beta_max_dim via rank-nullity on the boundary
/// operators of the complex.
std::vector<int> betti_numbers(const SimplicialComplex& complex, int max_dim);

}  // namespace topoflux
