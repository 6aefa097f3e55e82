#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "topoflux/errors.hpp"
#include "topoflux/filtration.hpp"
#include "topoflux/persistence.hpp"

using namespace topoflux;

namespace {

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

}  // namespace

TEST_SUITE_BEGIN("filtration");

TEST_CASE("delaunay of the unit square") {
  auto complex = delaunay_2d(unit_square());
  CHECK(complex.count_dimension(0) == 4);
  CHECK(complex.count_dimension(1) == 5);  // four sides and one diagonal
  CHECK(complex.count_dimension(2) == 2);
  CHECK(oracle::delaunay_triangles_empty(unit_square(), complex));
}

TEST_CASE("delaunay of three points is the filled triangle") {
  PointCloud cloud(3, 2);
  cloud << 0, 0, 2, 0, 1, 1.5;
  auto complex = delaunay_2d(cloud);
  CHECK(complex.size() == 7);
  CHECK(complex.count_dimension(2) == 1);
}

TEST_CASE("delaunay triangles pass the empty-circumcircle oracle") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto cloud = random_cloud(20, 2, seed);
    auto complex = delaunay_2d(cloud);
    CHECK(oracle::delaunay_triangles_empty(cloud, complex));
    CHECK(complex.count_dimension(0) == 20);
    CHECK(complex.is_closed());
  }
}

TEST_CASE("delaunay degenerate inputs") {
  SUBCASE("fewer than three points give the complete complex") {
    PointCloud one(1, 2);
    one << 0.5, 0.5;
    CHECK(delaunay_2d(one).size() == 1);
    PointCloud two(2, 2);
    two << 0, 0, 1, 1;
    auto complex = delaunay_2d(two);
    CHECK(complex.size() == 3);
    CHECK(complex.count_dimension(1) == 1);
  }
  SUBCASE("collinear points give the path along the line") {
    PointCloud line(4, 2);
    line << 0, 0, 3, 3, 1, 1, 2, 2;
    auto complex = delaunay_2d(line);
    CHECK(complex.count_dimension(0) == 4);
    CHECK(complex.count_dimension(1) == 3);
    CHECK(complex.count_dimension(2) == 0);
    CHECK(complex.contains(Simplex{0, 2}));  // consecutive along the line
    CHECK(complex.contains(Simplex{2, 3}));
    CHECK(complex.contains(Simplex{1, 3}));
  }
  SUBCASE("duplicate points are rejected") {
    PointCloud dup(3, 2);
    dup << 0, 0, 1, 1, 0, 0;
    CHECK_THROWS_AS(delaunay_2d(dup), DegenerateInputError);
  }
}

TEST_CASE("weak alpha filtration of the unit square") {
  auto filt = weak_alpha_filtration(unit_square());
  const double root2 = std::sqrt(2.0);
  int edges_at_one = 0, at_root2 = 0;
  for (const auto& e : filt.entries()) {
    if (e.simplex.dimension() == 0) {
      CHECK(e.value == 0.0);
      CHECK(!e.has_witness());
    } else if (e.simplex.dimension() == 1 && e.value == doctest::Approx(1.0)) {
      ++edges_at_one;
    } else {
      CHECK(e.value == doctest::Approx(root2));
      ++at_root2;
    }
  }
  CHECK(edges_at_one == 4);
  CHECK(at_root2 == 3);  // the diagonal and both triangles
}

TEST_CASE("weak alpha of an equilateral triangle enters at the side length") {
  const double s = 2.0;
  PointCloud cloud(3, 2);
  cloud << 0, 0, s, 0, s / 2, s * std::sqrt(3.0) / 2;
  auto filt = weak_alpha_filtration(cloud);
  for (const auto& e : filt.entries())
    if (e.simplex.dimension() >= 1) CHECK(e.value == doctest::Approx(s));
}

TEST_CASE("weak alpha at infinity is the delaunay triangulation") {
  auto cloud = random_cloud(15, 2, 5);
  auto filt = weak_alpha_filtration(cloud);
  auto tri = delaunay_2d(cloud);
  CHECK(filt.size() == tri.size());
  for (const auto& e : filt.entries()) CHECK(tri.contains(e.simplex));
}

TEST_CASE("filtration ordering and monotonicity") {
  SUBCASE("values ascend and faces precede cofaces") {
    for (std::uint64_t seed : {11ULL, 12ULL}) {
      auto filt = weak_alpha_filtration(random_cloud(12, 2, seed));
      std::map<Simplex, std::size_t> index;
      for (std::size_t i = 0; i < filt.size(); ++i) {
        if (i > 0) CHECK(filt[i - 1].value <= filt[i].value);
        index[filt[i].simplex] = i;
      }
      for (std::size_t i = 0; i < filt.size(); ++i) {
        for (const Simplex& f : filt[i].simplex.facets()) {
          CHECK(index.at(f) < i);
          CHECK(filt[index.at(f)].value <= filt[i].value);
        }
      }
    }
  }
  SUBCASE("non-monotone input is rejected") {
    std::vector<FiltrationEntry> entries{{Simplex{0}, 0.0, kNoWitness},
                                         {Simplex{1}, 0.0, kNoWitness},
                                         {Simplex{0, 1}, -1.0, {0, 1}}};
    CHECK_THROWS_AS(Filtration::from_entries(entries), OrderingError);
  }
}

TEST_CASE("witnesses attain the maximum pairwise distance") {
  for (std::uint64_t seed : {21ULL, 22ULL}) {
    auto cloud = random_cloud(12, 2, seed);
    auto filt = weak_alpha_filtration(cloud);
    for (const auto& e : filt.entries()) {
      if (!e.has_witness()) continue;
      const double stored = (cloud.row(e.witness[0]) - cloud.row(e.witness[1])).norm();
      CHECK(stored == doctest::Approx(e.value));
      const auto& v = e.simplex.vertices();
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
          CHECK((cloud.row(v[i]) - cloud.row(v[j])).norm() <= stored + 1e-12);
    }
  }
}

TEST_CASE("D0 deaths equal the minimum spanning tree edge lengths") {
  for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
    auto cloud = random_cloud(4 + static_cast<int>(seed % 12), 2, seed);
    auto expected = oracle::mst_edge_lengths(cloud);
    for (bool rips : {false, true}) {
      Filtration filt =
          rips ? vietoris_rips_filtration(cloud, 1) : weak_alpha_filtration(cloud);
      auto dgms = diagrams(filt, reduce(filt), 1);
      std::vector<double> deaths;
      for (const auto& p : dgms[0].regular) deaths.push_back(p.death);
      std::sort(deaths.begin(), deaths.end());
      REQUIRE(deaths.size() == expected.size());
      for (std::size_t i = 0; i < deaths.size(); ++i)
        CHECK(deaths[i] == doctest::Approx(expected[i]));
    }
  }
}

TEST_CASE("vietoris-rips structure") {
  SUBCASE("single point") {
    PointCloud one(1, 5);
    one << 1, 2, 3, 4, 5;
    auto filt = vietoris_rips_filtration(one, 1);
    CHECK(filt.size() == 1);
    CHECK(filt[0].value == 0.0);
  }
  SUBCASE("includes dimensions up to max_dim + 1") {
    auto filt = vietoris_rips_filtration(random_cloud(6, 3, 41), 1);
    int top = 0;
    for (const auto& e : filt.entries()) top = std::max(top, e.simplex.dimension());
    CHECK(top == 2);
    CHECK(filt.size() == 6 + 15 + 20);
  }
  SUBCASE("budget overflow names the count") {
    CHECK_THROWS_AS(vietoris_rips_filtration(random_cloud(30, 2, 42), 1, 100), ResourceError);
  }
}

TEST_SUITE_END();
