#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "widthlab/coincidence.hpp"

using namespace widthlab;

TEST_CASE("borsuk-ulam pair: projection and constant") {
  auto proj = projection_map(ModelSpace::sphere(2), 2);
  CoincidencePair p = borsuk_ulam_pair(proj);
  CHECK(p.residual <= 1e-10);
  CHECK(p.distance == doctest::Approx(M_PI));
  CHECK(std::fabs(p.x[2]) > 1.0 - 1e-6);  // poles
  CHECK(norm(p.x + p.y) < 1e-12);

  AnalyticMap c;
  c.name = "const";
  c.source = ModelSpace::sphere(2);
  c.target_dim = 2;
  c.fn = [](const Vec&) { return Vec{1.0, 2.0}; };
  CoincidencePair pc = borsuk_ulam_pair(c);
  CHECK(pc.residual == 0.0);
}

TEST_CASE("borsuk-ulam pair matches a grid-refinement oracle") {
  AnalyticMap f;
  f.name = "quad";
  f.source = ModelSpace::sphere(2);
  f.target_dim = 2;
  f.fn = [](const Vec& p) {
    return Vec{p[0] * p[0] - p[1], p[2] + 0.3 * p[0]};
  };
  CoincidencePair p = borsuk_ulam_pair(f);
  CHECK(p.residual <= 1e-8);

  // Dense grid + shrinking local search on |f(x) - f(-x)|_inf.
  auto g = [&](const Vec& x) { return norm_inf(f.fn(x) - f.fn(-x)); };
  Vec best;
  double bestv = kInf;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 100; ++j) {
      double th = 2 * M_PI * i / 200, ph = M_PI * (j + 0.5) / 100;
      Vec x = {std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th),
               std::cos(ph)};
      double v = g(x);
      if (v < bestv) {
        bestv = v;
        best = x;
      }
    }
  double step = 0.05;
  while (step > 1e-9) {
    bool moved = false;
    for (int axis = 0; axis < 3 && !moved; ++axis)
      for (double sgn : {1.0, -1.0}) {
        Vec cand = best;
        cand[axis] += sgn * step;
        cand = normalized(cand);
        if (g(cand) < bestv) {
          bestv = g(cand);
          best = cand;
          moved = true;
          break;
        }
      }
    if (!moved) step *= 0.5;
  }
  double gap = std::min(norm(p.x - best), norm(p.y - best));
  CHECK(gap < 1e-4);
}

TEST_CASE("borsuk-ulam pair on random polynomial maps") {
  for (std::uint64_t seed : {11, 12, 13, 14, 15}) {
    auto f = random_smooth_map(ModelSpace::sphere(2), seed);
    CoincidencePair p = borsuk_ulam_pair(f, 1e-6);
    CHECK(p.residual <= 1e-6);
    CHECK(p.distance == doctest::Approx(M_PI));
    // The returned pair really has nearly equal images.
    CHECK(norm_inf(f.fn(p.x) - f.fn(p.y)) <= 1e-6);
  }
  CHECK_THROWS_AS(borsuk_ulam_pair(height_map(ModelSpace::sphere(2))),
                  DimensionMismatch);
}

TEST_CASE("hopf pair on the projection at several deltas") {
  auto proj = projection_map(ModelSpace::sphere(2), 2);
  for (double delta : {0.5, 1.0, M_PI / 2, 2.0, M_PI}) {
    CoincidencePair p = hopf_pair(proj, delta, 1e-8);
    CHECK(p.residual <= 1e-8);
    CHECK(std::fabs(p.distance - delta) <= 1e-6);
    // Equal projections force equal (x, y) coordinates and opposite z.
    CHECK(std::fabs(p.x[0] - p.y[0]) < 1e-6);
    CHECK(std::fabs(p.x[1] - p.y[1]) < 1e-6);
    double want_z = std::sqrt((1 - std::cos(delta)) / 2);
    CHECK(std::fabs(std::fabs(p.x[2]) - want_z) < 1e-6);
  }
  CHECK_THROWS_AS(hopf_pair(proj, 3.5), DeltaOutOfRange);
  CHECK_THROWS_AS(hopf_pair(proj, 0.0), DeltaOutOfRange);
}

TEST_CASE("hopf pair on random sphere maps") {
  for (std::uint64_t seed : {21, 22, 23}) {
    auto f = random_smooth_map(ModelSpace::sphere(2), seed);
    for (double delta : {0.5, 2.0}) {
      CoincidencePair p = hopf_pair(f, delta, 1e-6);
      CHECK(p.residual <= 1e-6);
      CHECK(std::fabs(p.distance - delta) <= 1e-6);
    }
  }
}

TEST_CASE("hopf pair on the torus against a tangent-bundle grid oracle") {
  auto f = random_smooth_map(ModelSpace::torus(), 31);
  double delta = 0.25;
  CoincidencePair p = hopf_pair(f, delta, 1e-6);
  CHECK(p.residual <= 1e-6);
  CHECK(std::fabs(p.distance - delta) <= 1e-6);

  // Dense grid over (base point, direction).
  auto sp = ModelSpace::torus();
  double oracle = kInf;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j)
      for (int k = 0; k < 80; ++k) {
        Vec x = {(i + 0.5) / 40, (j + 0.5) / 40};
        double th = 2 * M_PI * k / 80;
        Vec v = {std::cos(th), std::sin(th)};
        Vec a = geodesic_shoot(sp, x, v, delta / 2);
        Vec b = geodesic_shoot(sp, x, -v, delta / 2);
        oracle = std::min(oracle, norm_inf(f.fn(a) - f.fn(b)));
      }
  CHECK(p.residual <= oracle + 1e-9);
}

TEST_CASE("even-degree pair: wrap, walks, folds, constants") {
  // The degree-2 wrap identifies antipodes outright.
  CoincidencePair w = even_degree_pair(pl_wrap_map(8, 2));
  CHECK(w.residual <= 1e-10);
  CHECK(w.distance == doctest::Approx(M_PI));
  CHECK(norm(w.x + w.y) < 1e-12);

  // Random even-degree walks, with an exhaustive parameter-scan oracle.
  for (std::uint64_t seed : {41, 42, 43}) {
    for (int degree : {0, 2}) {
      PLMap f = pl_random_even_walk(8, degree, seed);
      CoincidencePair p = even_degree_pair(f, 1e-6);
      CHECK(p.residual <= 1e-6);
      CHECK(p.distance >= M_PI - 1e-3);
      double oracle = kInf;
      for (int i = 0; i < 4000; ++i) {
        double th = 2 * M_PI * i / 4000;
        Vec x = {std::cos(th), std::sin(th)};
        Vec a = f.eval_at(x), b = f.eval_at(-x);
        oracle = std::min(oracle, norm(normalized(a) - normalized(b)));
      }
      CHECK(p.residual <= oracle + 1e-6);
    }
  }

  // Degree-0 fold of the sphere: the poles are fixed by the antipodal fold.
  CoincidencePair pf = even_degree_pair(pl_fold_s2(2), 1e-6);
  CHECK(pf.residual <= 1e-6);
  CHECK(pf.distance == doctest::Approx(M_PI));

  // Constant map: any antipodal pair works.
  auto oct = cross_polytope_sphere(2, 1);
  std::vector<Vec> cim(oct->vertices.size(), oct->vertices[0]);
  CoincidencePair pc = even_degree_pair(make_pl_map(oct, oct, cim));
  CHECK(pc.residual == 0.0);

  // Odd degree is rejected.
  auto circ = polygon_circle(12);
  CHECK_THROWS_AS(even_degree_pair(make_pl_map(circ, circ, circ->vertices)),
                  OddDegree);
}

TEST_CASE("searches are deterministic") {
  auto f = random_smooth_map(ModelSpace::sphere(2), 77);
  CoincidencePair a = borsuk_ulam_pair(f, 1e-6, 200000, 5);
  CoincidencePair b = borsuk_ulam_pair(f, 1e-6, 200000, 5);
  CHECK(a.x == b.x);
  CHECK(a.residual == b.residual);
  CHECK(a.evaluations == b.evaluations);

  CoincidencePair h1 = hopf_pair(f, 1.0, 1e-6, 400000, 5);
  CoincidencePair h2 = hopf_pair(f, 1.0, 1e-6, 400000, 5);
  CHECK(h1.x == h2.x);
  CHECK(h1.residual == h2.residual);
}
