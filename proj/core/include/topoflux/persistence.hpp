#pragma once

#include <array>
#include <vector>

#include "topoflux/filtration.hpp"

namespace topoflux {

/// Result of boundary-matrix reduction: simplex pairings by filtration index
/// plus the reduced columns (kept for representative-cycle extraction).
struct PersistencePairing {
  struct Pair {
    int birth;  // filtration index of the birth simplex
    int death;  // filtration index of the death simplex
    int dim;    // homology dimension = dim(birth simplex)
  };
  struct Unpaired {
    int birth;
    int dim;
  };
  std::vector<Pair> pairs;
  std::vector<Unpaired> essential;
  std::vector<std::vector<int>> reduced;  // reduced column per filtration index
};

/// Standard column algorithm: repeatedly adds earlier columns with equal low
/// into later ones until all defined lows are distinct, then reads pairs off
/// low(j) = i.  The optional clearing pass zeroes birth columns of paired
/// simplices ahead of time (off by default so reductions stay auditable).
PersistencePairing reduce(const Filtration& filtration, bool clearing = false);

struct DiagramPoint {
  double birth;
  double death;
  int birth_index;  // filtration indices carrying the witness back-references
  int death_index;
};

struct EssentialPoint {
  double birth;
  int birth_index;
};

/// Per-dimension persistence diagram.  Regular points satisfy birth < death
/// strictly; zero-persistence pairs never surface.
struct PersistenceDiagram {
  int dim = 0;
  std::vector<DiagramPoint> regular;
  std::vector<EssentialPoint> essential;
};

/// Diagrams for dimensions 0..max_dim from a pairing of the same filtration.
std::vector<PersistenceDiagram> diagrams(const Filtration& filtration,
                                         const PersistencePairing& pairing, int max_dim);

/// Exact bottleneck distance between same-dimension diagrams.  Essential
/// points match essential points only (infinity - infinity = 0); mismatched
/// essential counts give infinity.  Regular points may match the diagonal at
/// cost (death - birth) / 2.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Edges of a representative 1-cycle for the rank-th most persistent point of
/// the 1-dimensional diagram (rank is 1-based; ties broken as in loss
/// ordering).  The cycle is the reduced column of the paired death simplex;
/// when that chain splits into several loops the one with the most edges is
/// returned.  Throws NotFoundError when no such diagram point exists.
std::vector<std::array<int, 2>> representative_cycle(const Filtration& filtration,
                                                     const PersistencePairing& pairing,
                                                     int rank);

}  // namespace topoflux
