#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "topoflux/filtration.hpp"
#include "topoflux/persistence.hpp"

namespace topoflux {

/// Rank value standing for "through the end of the diagram".
constexpr int kInfiniteRank = std::numeric_limits<int>::max();

/// Choice of filtration behind a topological loss.
struct FiltrationChoice {
  enum class Kind { weak_alpha, rips };
  Kind kind = Kind::weak_alpha;
  int rips_max_dim = 1;

  Filtration build(const PointCloud& cloud) const;
  static FiltrationChoice weak_alpha() { return {Kind::weak_alpha, 1}; }
  static FiltrationChoice rips(int max_dim) { return {Kind::rips, max_dim}; }
};

struct SamplingParams {
  double fraction = 1.0;  // f in (0, 1]
  int repeats = 1;        // number of random subsets averaged per evaluation
};

struct FunctionalParams {
  double tau = 1.0;  // sublevel threshold on scaled centrality, in [0, 1]
};

/// One term of a topological prior: act on the rank window [rank_lo, rank_hi]
/// of the hom_dim-dimensional diagram ordered by decreasing persistence, and
/// sum sign * (death - birth)^p * ((death + birth) / 2)^q.  Essential points
/// occupy leading ranks but never contribute (finite-death filter).
struct LossTerm {
  int hom_dim = 1;
  int rank_lo = 1;             // i
  int rank_hi = kInfiniteRank; // j; windows past the diagram size contribute 0
  int sign = -1;               // mu in {-1, +1}; -1 grows the feature, +1 shrinks it
  double p = 1.0;
  double q = 0.0;
  double weight = 1.0;
  std::optional<FunctionalParams> functional;
  std::optional<SamplingParams> sampling;
};

/// A full topological prior: weighted terms over one filtration choice.
struct TopoLossSpec {
  FiltrationChoice filtration;
  std::vector<LossTerm> terms;

  void validate() const;  // throws ConfigError on malformed terms
};

/// Gradient of a scalar loss with respect to the point coordinates: one row
/// per cloud point, zero outside the witness pairs of selected diagram points.
using Gradient = Eigen::MatrixXd;

struct LossGrad {
  double value = 0.0;
  Gradient gradient;
};

/// Diagram points in loss-rank order for one homology dimension: essential
/// points first (birth ascending), then regular points by persistence
/// descending with ties broken by birth then witness pair.
struct RankedPoint {
  bool essential = false;
  double birth = 0.0;
  double death = 0.0;
  int birth_index = -1;
  int death_index = -1;
};
std::vector<RankedPoint> ranked_points(const PersistenceDiagram& diagram,
                                       const Filtration& filtration);

/// Value of one plain term on precomputed diagrams (weight not applied).
double eval_term(const std::vector<PersistenceDiagram>& diagrams, const LossTerm& term);

/// Coordinate gradient of one plain term, including the term weight.  Flows
/// d(loss)/d(birth) into the birth simplex's witness pair and likewise for
/// the death witness; all other rows are zero.
Gradient gradient_term(const PointCloud& cloud, const Filtration& filtration,
                       const std::vector<PersistenceDiagram>& diagrams, const LossTerm& term);

/// Expectation form: mean of the term over `repeats` random subsets of size
/// ceil(fraction * n) drawn without replacement under the seed.  Weight not
/// applied to the value; gradient includes it.
LossGrad eval_sampled(const PointCloud& cloud, const FiltrationChoice& filtration,
                      const LossTerm& term, std::uint64_t seed);

/// The exact index subsets eval_sampled draws for n points under this term
/// and seed (ascending within each subset).
std::vector<std::vector<int>> sampled_subsets(int n, const LossTerm& term, std::uint64_t seed);

/// Functional restriction: evaluates the term on the sublevel set of the
/// scaled centrality, {x : 1 - ||x - mean|| / max ||x - mean|| <= tau}.  The
/// selection is frozen for the evaluation; gradients flow only through the
/// persistence of the selected points.
LossGrad eval_functional(const PointCloud& cloud, const FiltrationChoice& filtration,
                         const LossTerm& term);

/// Weighted sum over all terms of the spec, dispatching to the sampled and
/// functional wrappers.  Plain terms share one filtration of the full cloud;
/// functional terms share one filtration per distinct tau.
LossGrad eval_spec(const PointCloud& cloud, const TopoLossSpec& spec, std::uint64_t seed);

}  // namespace topoflux
