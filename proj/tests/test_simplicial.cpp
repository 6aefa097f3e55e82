#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "topoflux/errors.hpp"
#include "topoflux/simplicial.hpp"

using namespace topoflux;

namespace {

// The worked triangulation: three filled triangles sharing a hollow center.
SimplicialComplex three_triangle_complex() {
  return SimplicialComplex::closure({Simplex{0, 1, 2}, Simplex{1, 3, 4}, Simplex{2, 4, 5}});
}

}  // namespace

TEST_SUITE_BEGIN("simplicial");

TEST_CASE("simplex validation and ordering") {
  CHECK(Simplex{2, 0, 1}.vertices() == std::vector<int>{0, 1, 2});
  CHECK(Simplex{0, 1, 2}.dimension() == 2);
  CHECK_THROWS_AS(Simplex({1, 1}), InvalidSimplexError);
  CHECK_THROWS_AS(Simplex({-1, 2}), InvalidSimplexError);
  CHECK_THROWS_AS(Simplex(std::vector<int>{}), InvalidSimplexError);
  CHECK(Simplex{5} < Simplex{0, 1});  // dimension first
  CHECK(Simplex{0, 2} < Simplex{1, 2});
}

TEST_CASE("closure of a single triangle") {
  auto complex = SimplicialComplex::closure({Simplex{0, 1, 2}});
  CHECK(complex.size() == 7);
  CHECK(complex.count_dimension(0) == 3);
  CHECK(complex.count_dimension(1) == 3);
  CHECK(complex.count_dimension(2) == 1);
  CHECK(complex.is_closed());
}

TEST_CASE("closure of vertices is itself") {
  auto complex = SimplicialComplex::closure({Simplex{0}, Simplex{1}});
  CHECK(complex.size() == 2);
  CHECK(complex.dimension() == 0);
}

TEST_CASE("closure of the worked three-triangle example") {
  auto complex = three_triangle_complex();
  CHECK(complex.size() == 18);
  CHECK(complex.count_dimension(0) == 6);
  CHECK(complex.count_dimension(1) == 9);
  CHECK(complex.count_dimension(2) == 3);
}

TEST_CASE("boundary matrix columns") {
  SUBCASE("edge column lists both vertices") {
    auto complex = three_triangle_complex();
    auto m = BoundaryMatrix::build(complex);
    // Canonical order: x0..x5 then edges lexicographically; x01 is column 6.
    CHECK(m.order[6] == Simplex{0, 1});
    CHECK(m.columns[6] == std::vector<int>{0, 1});
  }
  SUBCASE("single vertex has an empty column") {
    auto complex = SimplicialComplex::closure({Simplex{0}});
    auto m = BoundaryMatrix::build(complex);
    CHECK(m.columns.size() == 1);
    CHECK(m.columns[0].empty());
  }
  SUBCASE("one edge") {
    auto complex = SimplicialComplex::closure({Simplex{0, 1}});
    auto m = BoundaryMatrix::build(complex);
    CHECK(m.columns[2] == std::vector<int>{0, 1});
  }
  SUBCASE("face-after-coface order is rejected") {
    auto complex = SimplicialComplex::closure({Simplex{0, 1}});
    std::vector<Simplex> bad{Simplex{0, 1}, Simplex{0}, Simplex{1}};
    CHECK_THROWS_AS(BoundaryMatrix::build(complex, bad), OrderingError);
  }
}

TEST_CASE("ranks of the worked example") {
  auto m = BoundaryMatrix::build(three_triangle_complex());
  CHECK(rank_f2(m, 1) == 5);
  CHECK(rank_f2(m, 2) == 3);
  CHECK(rank_f2(m, 0) == 0);  // zero matrix
  CHECK(rank_f2(m, 3) == 0);  // no simplices of that dimension
}

TEST_CASE("betti numbers") {
  SUBCASE("worked example: one component, one loop") {
    auto betti = betti_numbers(three_triangle_complex(), 1);
    CHECK(betti == std::vector<int>{1, 1});
  }
  SUBCASE("two disjoint filled triangles") {
    auto complex = SimplicialComplex::closure({Simplex{0, 1, 2}, Simplex{3, 4, 5}});
    auto betti = betti_numbers(complex, 1);
    auto expected = oracle::betti_brute_force(
        {complex.simplices().begin(), complex.simplices().end()}, 1);
    CHECK(betti == expected);
    CHECK(betti == std::vector<int>{2, 0});
  }
  SUBCASE("hollow tetrahedron boundary") {
    auto complex = SimplicialComplex::closure(
        {Simplex{0, 1, 2}, Simplex{0, 1, 3}, Simplex{0, 2, 3}, Simplex{1, 2, 3}});
    auto betti = betti_numbers(complex, 2);
    auto expected = oracle::betti_brute_force(
        {complex.simplices().begin(), complex.simplices().end()}, 2);
    CHECK(betti == expected);
    CHECK(betti == std::vector<int>{1, 0, 1});
  }
}

TEST_CASE("boundary of a boundary vanishes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> vertex(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Simplex> gens;
    for (int g = 0; g < 4; ++g) {
      std::set<int> verts;
      while (verts.size() < 3) verts.insert(vertex(rng));
      gens.emplace_back(std::vector<int>(verts.begin(), verts.end()));
    }
    auto complex = SimplicialComplex::closure(gens);
    auto m = BoundaryMatrix::build(complex);

    // Multiply consecutive boundary blocks over F2 by composing facet maps.
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
      if (m.column_dims[j] < 2) continue;
      std::vector<int> composed;
      for (int facet : m.columns[j]) add_column_f2(composed, m.columns[facet]);
      CHECK(composed.empty());
    }
  }
}

TEST_CASE("euler-poincare identity on random complexes") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> vertex(0, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Simplex> gens;
    for (int g = 0; g < 5; ++g) {
      std::set<int> verts;
      int want = 1 + static_cast<int>(rng() % 4);
      while (static_cast<int>(verts.size()) < want) verts.insert(vertex(rng));
      gens.emplace_back(std::vector<int>(verts.begin(), verts.end()));
    }
    auto complex = SimplicialComplex::closure(gens);
    const int dim = complex.dimension();
    auto betti = betti_numbers(complex, dim);
    long lhs = 0, rhs = 0;
    for (int k = 0; k <= dim; ++k) {
      const long sign = (k % 2 == 0) ? 1 : -1;
      lhs += sign * static_cast<long>(complex.count_dimension(k));
      rhs += sign * betti[k];
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("betti_0 agrees with union-find component count") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> vertex(0, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Simplex> gens;
    for (int v = 0; v < 10; ++v) gens.push_back(Simplex{v});
    for (int g = 0; g < 6; ++g) {
      int a = vertex(rng), b = vertex(rng);
      if (a == b) continue;
      gens.push_back(Simplex{a, b});
    }
    auto complex = SimplicialComplex::closure(gens);

    std::vector<int> parent(10);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const Simplex& s : complex.simplices())
      if (s.dimension() == 1) parent[find(s.vertices()[0])] = find(s.vertices()[1]);
    std::set<int> roots;
    for (int v = 0; v < 10; ++v) roots.insert(find(v));

    CHECK(betti_numbers(complex, 0)[0] == static_cast<int>(roots.size()));
  }
}

TEST_SUITE_END();
