#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "topoflux/simplicial.hpp"

namespace topoflux {

/// Point clouds are row-major coordinate matrices: one point per row.
using PointCloud = Eigen::MatrixXd;

/// Throws DegenerateInputError on NaN/Inf coordinates or empty input; with
/// require_distinct also on exact duplicate rows.
void validate_cloud(const PointCloud& cloud, bool require_distinct);

constexpr std::array<int, 2> kNoWitness = {-1, -1};

/// One simplex of a filtration together with its appearance value and, for
/// dimension >= 1, the vertex pair realizing its diameter (the channel
/// through which losses differentiate into point coordinates).
struct FiltrationEntry {
  Simplex simplex;
  double value = 0.0;
  std::array<int, 2> witness = kNoWitness;

  bool has_witness() const { return witness != kNoWitness; }
};

/// An ordered filtration: entries sorted by value ascending, ties broken by
/// dimension then lexicographic vertex order, so faces precede cofaces.
class Filtration {
public:
  Filtration() = default;

  /// Sorts the entries into canonical order and validates monotonicity
  /// (value(face) <= value(coface)); throws OrderingError otherwise.
  static Filtration from_entries(std::vector<FiltrationEntry> entries);

  const std::vector<FiltrationEntry>& entries() const { return entries_; }
  const FiltrationEntry& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

  /// Index of a simplex in the order, or -1 if absent.
  int index_of(const Simplex& s) const;

  /// The final complex (all simplices).
  SimplicialComplex complex() const;

private:
  std::vector<FiltrationEntry> entries_;
};

/// Delaunay triangulation of a planar point cloud as a simplicial complex
/// (vertices, edges, triangles).  Degenerate inputs:
///   n < 3        -> the complete complex on the points,
///   all collinear -> the path complex along the line.
/// Exact duplicate points are rejected.
SimplicialComplex delaunay_2d(const PointCloud& cloud);

/// Diameter filtration of the Delaunay triangulation of a planar cloud.
/// Vertices enter at 0; every higher simplex enters at its diameter, with
/// the lexicographically smallest vertex pair realizing it as witness.
Filtration weak_alpha_filtration(const PointCloud& cloud);

constexpr std::size_t kDefaultRipsBudget = 5'000'000;

/// Diameter filtration over all subsets of up to max_dim + 2 points (any
/// ambient dimension).  Simplices of dimension max_dim + 1 are included so
/// that max_dim-dimensional holes can die.  Throws ResourceError when the
/// simplex count exceeds the budget.
Filtration vietoris_rips_filtration(const PointCloud& cloud, int max_dim,
                                    std::size_t budget = kDefaultRipsBudget);

}  // namespace topoflux
