#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "topoflux/errors.hpp"
#include "topoflux/persistence.hpp"

using namespace topoflux;

namespace {

// The worked filtration: vertices x0..x5, then the nine edges, then the three
// triangles, in lexicographic order within each dimension.  Using the
// position as the filtration value reproduces exactly that order.
Filtration worked_filtration() {
  std::vector<Simplex> order{
      Simplex{0},       Simplex{1},       Simplex{2},    Simplex{3},    Simplex{4},
      Simplex{5},       Simplex{0, 1},    Simplex{0, 2}, Simplex{1, 2}, Simplex{1, 3},
      Simplex{1, 4},    Simplex{2, 4},    Simplex{2, 5}, Simplex{3, 4}, Simplex{4, 5},
      Simplex{0, 1, 2}, Simplex{1, 3, 4}, Simplex{2, 4, 5}};
  std::vector<FiltrationEntry> entries;
  for (std::size_t i = 0; i < order.size(); ++i)
    entries.push_back({order[i], static_cast<double>(i), kNoWitness});
  return Filtration::from_entries(std::move(entries));
}

PointCloud unit_square() {
  PointCloud cloud(4, 2);
  cloud << 0, 0, 1, 0, 1, 1, 0, 1;
  return cloud;
}

PointCloud random_cloud(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  PointCloud cloud(n, d);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < d; ++c) cloud(i, c) = unit(rng);
  return cloud;
}

bool has_pair(const PersistencePairing& pairing, const Filtration& filt, const Simplex& birth,
              const Simplex& death) {
  for (const auto& p : pairing.pairs)
    if (filt[p.birth].simplex == birth && filt[p.death].simplex == death) return true;
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("persistence");

TEST_CASE("reduction of the worked filtration") {
  auto filt = worked_filtration();
  auto pairing = reduce(filt);

  CHECK(has_pair(pairing, filt, Simplex{1}, Simplex{0, 1}));
  CHECK(has_pair(pairing, filt, Simplex{1, 2}, Simplex{0, 1, 2}));

  std::set<Simplex> essential;
  for (const auto& e : pairing.essential) essential.insert(filt[e.birth].simplex);
  CHECK(essential == std::set<Simplex>{Simplex{0}, Simplex{2, 4}});

  SUBCASE("clearing optimization yields the same pairing") {
    auto twisted = reduce(filt, /*clearing=*/true);
    CHECK(twisted.pairs.size() == pairing.pairs.size());
    for (const auto& p : pairing.pairs)
      CHECK(has_pair(twisted, filt, filt[p.birth].simplex, filt[p.death].simplex));
  }
}

TEST_CASE("essential classes reproduce the betti numbers of the final complex") {
  for (std::uint64_t seed : {3ULL, 4ULL, 5ULL}) {
    auto cloud = random_cloud(8, 2, seed);
    auto filt = weak_alpha_filtration(cloud);
    auto pairing = reduce(filt);
    std::vector<int> essential_by_dim(3, 0);
    for (const auto& e : pairing.essential)
      if (e.dim < 3) ++essential_by_dim[e.dim];
    auto complex = filt.complex();
    auto betti = betti_numbers(complex, 2);
    CHECK(essential_by_dim[0] == betti[0]);
    CHECK(essential_by_dim[1] == betti[1]);
    CHECK(essential_by_dim[2] == betti[2]);
  }
}

TEST_CASE("diagrams of the unit square") {
  auto filt = weak_alpha_filtration(unit_square());
  auto dgms = diagrams(filt, reduce(filt), 1);

  REQUIRE(dgms[0].essential.size() == 1);
  CHECK(dgms[0].essential[0].birth == 0.0);
  REQUIRE(dgms[0].regular.size() == 3);
  for (const auto& p : dgms[0].regular) {
    CHECK(p.birth == 0.0);
    CHECK(p.death == doctest::Approx(1.0));
  }

  REQUIRE(dgms[1].regular.size() == 1);
  CHECK(dgms[1].regular[0].birth == doctest::Approx(1.0));
  CHECK(dgms[1].regular[0].death == doctest::Approx(std::sqrt(2.0)));
  CHECK(dgms[1].essential.empty());
}

TEST_CASE("single point diagram") {
  PointCloud one(1, 2);
  one << 0.25, 0.75;
  auto filt = weak_alpha_filtration(one);
  auto dgms = diagrams(filt, reduce(filt), 1);
  CHECK(dgms[0].essential.size() == 1);
  CHECK(dgms[0].regular.empty());
  CHECK(dgms[1].regular.empty());
}

TEST_CASE("rips on three equidistant points has empty regular D1") {
  PointCloud cloud(3, 2);
  cloud << 0, 0, 1, 0, 0.5, std::sqrt(3.0) / 2;
  auto filt = vietoris_rips_filtration(cloud, 1);
  auto dgms = diagrams(filt, reduce(filt), 1);
  CHECK(dgms[1].regular.empty());  // born and filled at the same value
}

TEST_CASE("rips on the unit square has a single D1 point at (1, sqrt 2)") {
  auto filt = vietoris_rips_filtration(unit_square(), 1);
  auto dgms = diagrams(filt, reduce(filt), 1);
  REQUIRE(dgms[1].regular.size() == 1);
  CHECK(dgms[1].regular[0].birth == doctest::Approx(1.0));
  CHECK(dgms[1].regular[0].death == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("D0 always carries n points") {
  for (std::uint64_t seed : {8ULL, 9ULL}) {
    const int n = 10 + static_cast<int>(seed);
    auto cloud = random_cloud(n, 2, seed);
    for (bool rips : {false, true}) {
      Filtration filt = rips ? vietoris_rips_filtration(cloud, 1) : weak_alpha_filtration(cloud);
      auto dgms = diagrams(filt, reduce(filt), 1);
      CHECK(static_cast<int>(dgms[0].regular.size() + dgms[0].essential.size()) == n);
    }
  }
}

TEST_CASE("diagrams match the rank-tracking oracle on small clouds") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    auto cloud = random_cloud(n, 2, 100 + seed);
    for (bool rips : {false, true}) {
      Filtration filt = rips ? vietoris_rips_filtration(cloud, 1) : weak_alpha_filtration(cloud);
      auto got = diagrams(filt, reduce(filt), 1);
      auto expected = oracle::diagrams_by_rank_tracking(filt, 1);
      CHECK(oracle::diagrams_match(got, expected));
    }
  }
}

TEST_CASE("bottleneck distance") {
  auto point_diagram = [](std::vector<std::pair<double, double>> pts) {
    PersistenceDiagram d;
    d.dim = 1;
    for (auto [b, dd] : pts) d.regular.push_back({b, dd, -1, -1});
    return d;
  };

  SUBCASE("identical diagrams have distance zero") {
    auto a = point_diagram({{0.0, 2.0}, {1.0, 3.0}});
    CHECK(bottleneck_distance(a, a) == 0.0);
  }
  SUBCASE("single point against empty projects to the diagonal") {
    auto a = point_diagram({{0.0, 2.0}});
    auto b = point_diagram({});
    CHECK(bottleneck_distance(a, b) == doctest::Approx(1.0));
    CHECK(bottleneck_distance(b, a) == doctest::Approx(1.0));
  }
  SUBCASE("direct match beats double diagonal") {
    auto a = point_diagram({{0.0, 2.0}});
    auto b = point_diagram({{0.0, 3.0}});
    CHECK(bottleneck_distance(a, b) == doctest::Approx(1.0));
  }
  SUBCASE("essential parts must agree in size") {
    auto a = point_diagram({});
    auto b = point_diagram({});
    a.essential.push_back({0.0, -1});
    CHECK(std::isinf(bottleneck_distance(a, b)));
    b.essential.push_back({0.5, -1});
    CHECK(bottleneck_distance(a, b) == doctest::Approx(0.5));
  }
  SUBCASE("dimension mismatch is a usage error") {
    PersistenceDiagram a, b;
    a.dim = 0;
    b.dim = 1;
    CHECK_THROWS_AS(bottleneck_distance(a, b), ConfigError);
  }
  SUBCASE("symmetry on random diagrams") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      auto make = [&](int count) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < count; ++i) {
          double b = unit(rng);
          pts.push_back({b, b + unit(rng)});
        }
        return point_diagram(pts);
      };
      auto a = make(5), b = make(3);
      CHECK(bottleneck_distance(a, b) == doctest::Approx(bottleneck_distance(b, a)));
    }
  }
}

TEST_CASE("bottleneck stability under small perturbations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double delta = 1e-3;
  for (int trial = 0; trial < 5; ++trial) {
    auto cloud = random_cloud(12, 2, 300 + trial);
    PointCloud shifted = cloud;
    for (int i = 0; i < cloud.rows(); ++i) {
      const double r = delta * std::abs(unit(rng));
      const double t = angle(rng);
      shifted(i, 0) += r * std::cos(t);
      shifted(i, 1) += r * std::sin(t);
    }
    auto da = diagrams(vietoris_rips_filtration(cloud, 1), reduce(vietoris_rips_filtration(cloud, 1)), 1);
    auto db = diagrams(vietoris_rips_filtration(shifted, 1), reduce(vietoris_rips_filtration(shifted, 1)), 1);
    for (int k = 0; k <= 1; ++k) CHECK(bottleneck_distance(da[k], db[k]) <= 2 * delta + 1e-12);
  }
}

TEST_CASE("representative cycles") {
  SUBCASE("unit square boundary") {
    auto filt = weak_alpha_filtration(unit_square());
    auto cycle = representative_cycle(filt, reduce(filt), 1);
    REQUIRE(cycle.size() == 4);
    std::set<std::pair<int, int>> edges;
    for (const auto& e : cycle) edges.insert(std::minmax(e[0], e[1]));
    CHECK(edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  }
  SUBCASE("points on a circle give one closed polygon in angular order") {
    const int n = 50;
    PointCloud cloud(n, 2);
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * i / n;
      cloud(i, 0) = std::cos(t);
      cloud(i, 1) = std::sin(t);
    }
    auto filt = weak_alpha_filtration(cloud);
    auto cycle = representative_cycle(filt, reduce(filt), 1);

    // Even degree, single component, and one full winding.
    std::map<int, int> degree;
    for (const auto& e : cycle) {
      degree[e[0]] += 1;
      degree[e[1]] += 1;
    }
    for (const auto& [v, d] : degree) CHECK(d == 2);
    double winding = 0.0;
    for (const auto& e : cycle) {
      const double a0 = std::atan2(cloud(e[0], 1), cloud(e[0], 0));
      const double a1 = std::atan2(cloud(e[1], 1), cloud(e[1], 0));
      double diff = a1 - a0;
      while (diff > std::numbers::pi) diff -= 2 * std::numbers::pi;
      while (diff < -std::numbers::pi) diff += 2 * std::numbers::pi;
      winding += std::abs(diff);
    }
    CHECK(winding == doctest::Approx(2 * std::numbers::pi));
  }
  SUBCASE("empty D1 raises not-found") {
    PointCloud line(3, 2);
    line << 0, 0, 1, 0, 2, 0.01;
    auto filt = weak_alpha_filtration(line);
    CHECK_THROWS_AS(representative_cycle(filt, reduce(filt), 1), NotFoundError);
  }
}

TEST_SUITE_END();
