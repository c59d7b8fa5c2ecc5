#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "widthlab/complexes.hpp"

using namespace widthlab;

TEST_CASE("cross-polytope sphere base meshes") {
  auto s1 = cross_polytope_sphere(1, 0);
  CHECK(s1->count(0) == 4);
  CHECK(s1->count(1) == 4);

  auto oct = cross_polytope_sphere(2, 0);
  CHECK(oct->count(0) == 6);
  CHECK(oct->count(1) == 12);
  CHECK(oct->count(2) == 8);
  CHECK(oct->euler_characteristic() == 2);
  CHECK(oct->is_closed_manifold());
  oct->validate();

  auto s3 = cross_polytope_sphere(3, 0);
  CHECK(s3->count(0) == 8);
  CHECK(s3->count(3) == 16);
  CHECK(s3->is_closed_manifold());
  s3->validate();

  CHECK_THROWS_AS(cross_polytope_sphere(4, 0), UnsupportedDimension);
  CHECK_THROWS_AS(cross_polytope_sphere(0, 0), UnsupportedDimension);
}

TEST_CASE("subdivided sphere keeps Euler characteristic and unit vertices") {
  auto K = cross_polytope_sphere(2, 2);
  CHECK(K->euler_characteristic() == 2);
  CHECK(K->is_closed_manifold());
  for (const auto& v : K->vertices) CHECK(std::fabs(norm(v) - 1.0) < 1e-12);
  K->validate();
}

TEST_CASE("sphere meshes are antipodally symmetric") {
  for (int n = 1; n <= 3; ++n) {
    for (int s = 0; s <= (n == 3 ? 2 : 3); ++s) {
      auto K = cross_polytope_sphere(n, s);
      auto anti = K->antipodal_vertex_map();
      // The simplex set is invariant under negation.
      std::set<std::vector<int>> tops(K->top().begin(), K->top().end());
      for (auto s0 : K->top()) {
        for (int& v : s0) v = anti[v];
        std::sort(s0.begin(), s0.end());
        CHECK(tops.count(s0) == 1);
      }
    }
  }
}

TEST_CASE("refinement of S^3 mesh stays a closed manifold") {
  auto K = cross_polytope_sphere(3, 2);
  CHECK(K->is_closed_manifold());
  CHECK(K->euler_characteristic() == 0);
  K->validate();
}

TEST_CASE("simplex ball: inscribed edge lengths") {
  auto b2 = simplex_ball(2, 0);
  b2->validate();
  REQUIRE(b2->marked_vertices.size() == 3);
  const auto& mv = b2->marked_vertices;
  double e2 = norm(b2->vertices[mv[0]] - b2->vertices[mv[1]]);
  CHECK(std::fabs(e2 - std::sqrt(3.0)) < 1e-12);
  for (const auto& v : b2->vertices) CHECK(norm(v) < 1.0 + 1e-12);

  auto b3 = simplex_ball(3, 0);
  b3->validate();
  REQUIRE(b3->marked_vertices.size() == 4);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j) {
      double e = norm(b3->vertices[b3->marked_vertices[i]] -
                      b3->vertices[b3->marked_vertices[j]]);
      CHECK(std::fabs(e - std::sqrt(8.0 / 3.0)) < 1e-12);
    }
  for (const auto& v : b3->vertices) CHECK(norm(v) < 1.0 + 1e-12);

  CHECK_THROWS_AS(simplex_ball(1, 0), UnsupportedDimension);
  CHECK_THROWS_AS(simplex_ball(4, 0), UnsupportedDimension);
}

TEST_CASE("simplex ball boundary facets close up") {
  for (int n : {2, 3}) {
    auto K = simplex_ball(n, 0);
    // Every facet bounds one or two top simplices; boundary facets form a
    // closed (n-1)-manifold.
    auto inc = K->facet_incidence();
    std::vector<std::vector<int>> boundary;
    for (const auto& [facet, tops] : inc) {
      REQUIRE(tops.size() >= 1);
      REQUIRE(tops.size() <= 2);
      if (tops.size() == 1) boundary.push_back(facet);
    }
    CHECK(!boundary.empty());
    // Each ridge of the boundary lies in exactly two boundary facets.
    std::map<std::vector<int>, int> ridge_count;
    for (const auto& f : boundary)
      for (size_t drop = 0; drop < f.size(); ++drop) {
        std::vector<int> r;
        for (size_t i = 0; i < f.size(); ++i)
          if (i != drop) r.push_back(f[i]);
        ridge_count[r]++;
      }
    for (const auto& [r, c] : ridge_count) CHECK(c == 2);
  }
}

TEST_CASE("flat torus") {
  auto t1 = flat_torus(1);
  t1->validate();
  CHECK(t1->euler_characteristic() == 0);
  CHECK(t1->is_closed_manifold());

  // Every edge shorter than 1/2 (direct length scan with the torus metric).
  auto t2 = flat_torus(2);
  auto space = ModelSpace::torus();
  for (const auto& e : t2->simplices[1]) {
    double len = distance(space, t2->vertices[e[0]], t2->vertices[e[1]]);
    CHECK(len < 0.5);
  }

  CHECK_THROWS_AS(flat_torus(0), PreconditionViolated);
}

TEST_CASE("fundamental cycle mod 2") {
  auto oct = cross_polytope_sphere(2, 0);
  auto c = fundamental_cycle_mod2(oct);
  CHECK(c.coefficients.size() == 8);
  for (auto b : c.coefficients) CHECK(b == 1);
  CHECK(is_zero(boundary_mod2(c)));

  CHECK(is_zero(boundary_mod2(fundamental_cycle_mod2(flat_torus(1)))));
  CHECK(is_zero(boundary_mod2(fundamental_cycle_mod2(cross_polytope_sphere(3, 1)))));

  CHECK_THROWS_AS(fundamental_cycle_mod2(simplex_ball(2, 0)), NotClosedManifold);
}

TEST_CASE("polyhedral targets") {
  auto tp = tripod();
  tp->validate();
  CHECK(tp->count(0) == 4);
  CHECK(tp->count(1) == 3);

  auto cone = cone_over_tetra_edges();
  cone->validate();
  CHECK(cone->count(0) == 5);
  CHECK(cone->count(2) == 6);

  auto pc = polygon_circle(8);
  pc->validate();
  CHECK(pc->is_closed_manifold());
}
