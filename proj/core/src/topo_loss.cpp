#include "topoflux/topo_loss.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "topoflux/errors.hpp"
#include "topoflux/parallel.hpp"
#include "topoflux/rng.hpp"

namespace topoflux {

Filtration FiltrationChoice::build(const PointCloud& cloud) const {
  switch (kind) {
    case Kind::weak_alpha:
      if (cloud.cols() != 2)
        throw ConfigError("weak-alpha filtration requires 2-dimensional points; use rips");
      return weak_alpha_filtration(cloud);
    case Kind::rips:
      return vietoris_rips_filtration(cloud, rips_max_dim);
  }
  throw ConfigError("unknown filtration kind");
}

void TopoLossSpec::validate() const {
  if (terms.empty()) throw ConfigError("topological loss needs at least one term");
  if (filtration.kind == FiltrationChoice::Kind::rips && filtration.rips_max_dim < 1)
    throw ConfigError("rips max_dim must be >= 1");
  for (const LossTerm& t : terms) {
    if (t.hom_dim < 0) throw ConfigError("term hom_dim must be >= 0");
    if (t.rank_lo < 1) throw ConfigError("term rank window must start at 1 or later");
    if (t.rank_hi < t.rank_lo) throw ConfigError("term rank window is empty (j < i)");
    if (t.sign != 1 && t.sign != -1) throw ConfigError("term sign must be +1 or -1");
    if (!(t.p > 0.0)) throw ConfigError("term exponent p must be > 0");
    if (t.q < 0.0) throw ConfigError("term exponent q must be >= 0");
    if (!std::isfinite(t.weight)) throw ConfigError("term weight must be finite");
    if (t.sampling && t.functional)
      throw ConfigError("a term cannot combine sampling and functional restriction");
    if (t.sampling) {
      if (!(t.sampling->fraction > 0.0) || t.sampling->fraction > 1.0)
        throw ConfigError("sampling fraction must lie in (0, 1]");
      if (t.sampling->repeats < 1) throw ConfigError("sampling repeats must be >= 1");
    }
    if (t.functional && (t.functional->tau < 0.0 || t.functional->tau > 1.0))
      throw ConfigError("functional tau must lie in [0, 1]");
  }
}

namespace {

std::array<int, 2> witness_or_none(const Filtration& f, int index) {
  if (index < 0 || index >= static_cast<int>(f.size())) return kNoWitness;
  return f[index].witness;
}

}  // namespace

std::vector<RankedPoint> ranked_points(const PersistenceDiagram& diagram,
                                       const Filtration& filtration) {
  std::vector<RankedPoint> out;
  out.reserve(diagram.essential.size() + diagram.regular.size());
  for (const EssentialPoint& e : diagram.essential)
    out.push_back({true, e.birth, std::numeric_limits<double>::infinity(), e.birth_index, -1});
  // Essential points persist indefinitely and therefore lead the ranking.
  std::sort(out.begin(), out.end(), [](const RankedPoint& a, const RankedPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.birth_index < b.birth_index;
  });

  std::vector<RankedPoint> reg;
  reg.reserve(diagram.regular.size());
  for (const DiagramPoint& p : diagram.regular)
    reg.push_back({false, p.birth, p.death, p.birth_index, p.death_index});
  std::sort(reg.begin(), reg.end(), [&](const RankedPoint& a, const RankedPoint& b) {
    const double pa = a.death - a.birth, pb = b.death - b.birth;
    if (pa != pb) return pa > pb;
    if (a.birth != b.birth) return a.birth < b.birth;
    auto wa = witness_or_none(filtration, a.birth_index);
    auto wb = witness_or_none(filtration, b.birth_index);
    if (wa != wb) return wa < wb;
    return witness_or_none(filtration, a.death_index) < witness_or_none(filtration, b.death_index);
  });
  out.insert(out.end(), reg.begin(), reg.end());
  return out;
}

namespace {

struct TermEval {
  double value = 0.0;  // sign applied, weight not
  Gradient grad;       // sign applied, weight not
};

// Shared evaluation: selects the rank window, sums g(b, d) and routes the
// partials through the witness pairs.
TermEval eval_core(const PointCloud& cloud, const Filtration& filtration,
                   const std::vector<PersistenceDiagram>& dgms, const LossTerm& term) {
  TermEval out;
  out.grad = Gradient::Zero(cloud.rows(), cloud.cols());
  if (term.rank_hi < term.rank_lo) return out;
  if (term.hom_dim >= static_cast<int>(dgms.size())) return out;

  const auto ranked = ranked_points(dgms[term.hom_dim], filtration);
  const int last = static_cast<int>(std::min<long long>(term.rank_hi, ranked.size()));
  for (int rank = term.rank_lo; rank <= last; ++rank) {
    const RankedPoint& pt = ranked[rank - 1];
    if (pt.essential) continue;  // finite-death filter
    const double span = pt.death - pt.birth;
    const double mid = (pt.death + pt.birth) / 2.0;
    const double span_p = std::pow(span, term.p);
    const double mid_q = term.q == 0.0 ? 1.0 : std::pow(mid, term.q);
    out.value += span_p * mid_q;

    const double dspan = term.p * std::pow(span, term.p - 1.0) * mid_q;
    const double dmid = term.q == 0.0 ? 0.0 : span_p * term.q * std::pow(mid, term.q - 1.0) * 0.5;
    const double dg_db = -dspan + dmid;
    const double dg_dd = dspan + dmid;

    auto route = [&](int index, double coeff) {
      if (index < 0) return;
      const auto w = filtration[index].witness;
      if (w == kNoWitness) return;  // vertices have constant value 0
      Eigen::RowVectorXd diff = cloud.row(w[0]) - cloud.row(w[1]);
      const double dist = diff.norm();
      if (dist <= 0.0) return;  // cannot occur: zero-persistence pairs are discarded
      diff /= dist;
      out.grad.row(w[0]) += term.sign * coeff * diff;
      out.grad.row(w[1]) -= term.sign * coeff * diff;
    };
    route(pt.birth_index, dg_db);
    route(pt.death_index, dg_dd);
  }
  out.value *= term.sign;
  return out;
}

int min_viable_points(const LossTerm& term) {
  // k-dimensional features need k+2 points to be born and die.
  return std::max(2, term.hom_dim + 2);
}

std::vector<int> draw_subset(int n, int m, std::mt19937_64& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

PointCloud gather_rows(const PointCloud& cloud, const std::vector<int>& rows) {
  PointCloud sub(rows.size(), cloud.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) sub.row(i) = cloud.row(rows[i]);
  return sub;
}

// Evaluates the term on a subset of the cloud and scatters the gradient rows
// back to full-cloud indices.
TermEval eval_on_subset(const PointCloud& cloud, const FiltrationChoice& choice,
                        const LossTerm& term, const std::vector<int>& rows) {
  PointCloud sub = gather_rows(cloud, rows);
  Filtration filt = choice.build(sub);
  PersistencePairing pairing = reduce(filt);
  auto dgms = diagrams(filt, pairing, std::max(term.hom_dim, 1));
  TermEval local = eval_core(sub, filt, dgms, term);
  TermEval out;
  out.value = local.value;
  out.grad = Gradient::Zero(cloud.rows(), cloud.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.grad.row(rows[i]) = local.grad.row(i);
  return out;
}

}  // namespace

double eval_term(const std::vector<PersistenceDiagram>& dgms, const LossTerm& term) {
  if (term.rank_hi < term.rank_lo || term.hom_dim >= static_cast<int>(dgms.size())) return 0.0;
  // Value needs no witnesses; reuse the core with an empty placeholder cloud.
  double value = 0.0;
  const Filtration empty;
  const auto ranked = ranked_points(dgms[term.hom_dim], empty);
  const int last = static_cast<int>(std::min<long long>(term.rank_hi, ranked.size()));
  for (int rank = term.rank_lo; rank <= last; ++rank) {
    const RankedPoint& pt = ranked[rank - 1];
    if (pt.essential) continue;
    const double span = pt.death - pt.birth;
    const double mid = (pt.death + pt.birth) / 2.0;
    value += std::pow(span, term.p) * (term.q == 0.0 ? 1.0 : std::pow(mid, term.q));
  }
  return term.sign * value;
}

Gradient gradient_term(const PointCloud& cloud, const Filtration& filtration,
                       const std::vector<PersistenceDiagram>& dgms, const LossTerm& term) {
  return term.weight * eval_core(cloud, filtration, dgms, term).grad;
}

std::vector<std::vector<int>> sampled_subsets(int n, const LossTerm& term, std::uint64_t seed) {
  if (!term.sampling) throw ConfigError("term has no sampling parameters");
  const int m = static_cast<int>(std::ceil(term.sampling->fraction * n));
  if (m < min_viable_points(term))
    throw ConfigError("sampled subset of size " + std::to_string(m) +
                      " is too small for a dimension-" + std::to_string(term.hom_dim) + " term");
  std::mt19937_64 rng = make_rng(derive_seed(seed, "subset-draws"));
  std::vector<std::vector<int>> subsets(term.sampling->repeats);
  for (auto& s : subsets) s = draw_subset(n, m, rng);
  return subsets;
}

LossGrad eval_sampled(const PointCloud& cloud, const FiltrationChoice& choice,
                      const LossTerm& term, std::uint64_t seed) {
  if (!term.sampling) throw ConfigError("eval_sampled needs a term with sampling parameters");
  const int n = static_cast<int>(cloud.rows());
  const int repeats = term.sampling->repeats;
  const int m = static_cast<int>(std::ceil(term.sampling->fraction * n));
  std::vector<std::vector<int>> subsets = sampled_subsets(n, term, seed);

  std::vector<TermEval> results(repeats);
  std::vector<std::string> failures(repeats);
  parallel_for(repeats, [&](std::size_t s) {
    try {
      results[s] = eval_on_subset(cloud, choice, term, subsets[s]);
    } catch (const DegenerateInputError&) {
      // Degenerate subset (e.g. collinear sample): re-draw once, then give up.
      std::mt19937_64 retry = make_rng(derive_seed(seed, 7919 + s));
      auto again = draw_subset(n, m, retry);
      try {
        results[s] = eval_on_subset(cloud, choice, term, again);
      } catch (const DegenerateInputError& e2) {
        failures[s] = e2.what();
      }
    }
  });
  for (int s = 0; s < repeats; ++s)
    if (!failures[s].empty())
      throw DegenerateInputError("sampled subset degenerate after re-draw: " + failures[s]);

  LossGrad out;
  out.gradient = Gradient::Zero(cloud.rows(), cloud.cols());
  for (int s = 0; s < repeats; ++s) {  // index order keeps the mean reproducible
    out.value += results[s].value;
    out.gradient += results[s].grad;
  }
  out.value /= repeats;
  out.gradient *= term.weight / repeats;
  return out;
}

namespace {

// Sublevel set of the scaled centrality 1 - ||x - mean|| / max ||x - mean||.
// The selection is treated as locally constant during differentiation.
std::vector<int> functional_selection(const PointCloud& cloud, double tau) {
  if (cloud.rows() < 2) throw ConfigError("functional restriction needs at least two points");
  Eigen::RowVectorXd mean = cloud.colwise().mean();
  Eigen::VectorXd dist = (cloud.rowwise() - mean).rowwise().norm();
  const double dist_max = dist.maxCoeff();
  std::vector<int> selected;
  for (int i = 0; i < cloud.rows(); ++i) {
    const double centrality = 1.0 - dist(i) / dist_max;
    if (centrality <= tau || tau >= 1.0) selected.push_back(i);
  }
  return selected;
}

}  // namespace

LossGrad eval_functional(const PointCloud& cloud, const FiltrationChoice& choice,
                         const LossTerm& term) {
  if (!term.functional) throw ConfigError("eval_functional needs a term with a tau threshold");
  const double tau = term.functional->tau;
  std::vector<int> selected = functional_selection(cloud, tau);
  if (static_cast<int>(selected.size()) < min_viable_points(term))
    throw ConfigError("functional sublevel set at tau=" + std::to_string(tau) + " keeps only " +
                      std::to_string(selected.size()) + " points");

  TermEval core = eval_on_subset(cloud, choice, term, selected);
  return {core.value, term.weight * core.grad};
}

LossGrad eval_spec(const PointCloud& cloud, const TopoLossSpec& spec, std::uint64_t seed) {
  spec.validate();
  LossGrad total;
  total.gradient = Gradient::Zero(cloud.rows(), cloud.cols());

  // Terms with the same restriction share one filtration: all plain terms
  // use the full cloud; functional terms group by tau.
  int plain_max_dim = 1;
  bool any_plain = false;
  std::map<double, std::pair<std::vector<std::size_t>, int>> by_tau;  // tau -> (terms, max dim)
  for (std::size_t i = 0; i < spec.terms.size(); ++i) {
    const LossTerm& t = spec.terms[i];
    if (t.sampling) continue;
    if (t.functional) {
      auto& group = by_tau[t.functional->tau];
      group.first.push_back(i);
      group.second = std::max({group.second, t.hom_dim, 1});
    } else {
      any_plain = true;
      plain_max_dim = std::max(plain_max_dim, t.hom_dim);
    }
  }

  Filtration shared;
  std::vector<PersistenceDiagram> shared_dgms;
  if (any_plain) {
    shared = spec.filtration.build(cloud);
    shared_dgms = diagrams(shared, reduce(shared), plain_max_dim);
  }

  std::uint64_t term_index = 0;
  for (const LossTerm& t : spec.terms) {
    if (t.sampling) {
      LossGrad part = eval_sampled(cloud, spec.filtration, t, derive_seed(seed, term_index));
      total.value += t.weight * part.value;
      total.gradient += part.gradient;
    } else if (!t.functional) {
      total.value += t.weight * eval_term(shared_dgms, t);
      total.gradient += gradient_term(cloud, shared, shared_dgms, t);
    }
    ++term_index;
  }

  for (const auto& [tau, group] : by_tau) {
    const std::vector<int> selected = functional_selection(cloud, tau);
    int needed = 2;
    for (std::size_t i : group.first)
      needed = std::max(needed, min_viable_points(spec.terms[i]));
    if (static_cast<int>(selected.size()) < needed)
      throw ConfigError("functional sublevel set at tau=" + std::to_string(tau) +
                        " keeps only " + std::to_string(selected.size()) + " points");

    PointCloud sub = gather_rows(cloud, selected);
    Filtration filt = spec.filtration.build(sub);
    PersistencePairing pairing = reduce(filt);
    auto dgms = diagrams(filt, pairing, group.second);
    for (std::size_t i : group.first) {
      const LossTerm& t = spec.terms[i];
      total.value += t.weight * eval_term(dgms, t);
      Gradient local = gradient_term(sub, filt, dgms, t);
      for (std::size_t r = 0; r < selected.size(); ++r)
        total.gradient.row(selected[r]) += local.row(r);
    }
  }
  return total;
}

}  // namespace topoflux
