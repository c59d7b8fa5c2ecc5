#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "widthlab/complexes.hpp"
#include "widthlab/plmaps.hpp"

using namespace widthlab;

namespace {

std::mt19937_64 rng(99);

PLMap projection_s2(int level) {
  auto K = cross_polytope_sphere(2, level);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({v[0], v[1]});
  return make_pl_map(K, 2, std::move(im));
}

PLMap height_s2(int level) {
  auto K = cross_polytope_sphere(2, level);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({v[2]});
  return make_pl_map(K, 1, std::move(im));
}

PLMap wrap_map(int target_m, int degree) {
  auto T = polygon_circle(target_m);
  auto S = polygon_circle(target_m * degree);
  std::vector<Vec> im;
  for (int k = 0; k < S->count(0); ++k)
    im.push_back(T->vertices[k % target_m]);
  return make_pl_map(S, T, std::move(im));
}

}  // namespace

TEST_CASE("construction basics") {
  auto oct = cross_polytope_sphere(2, 0);
  PLMap id = make_pl_map(oct, oct, oct->vertices);
  CHECK(id.codim() == 0);
  CHECK(id.simplicial);
  for (size_t v = 0; v < oct->vertices.size(); ++v)
    CHECK(norm(id.eval_at(oct->vertices[v]) - oct->vertices[v]) < 1e-12);

  std::vector<Vec> all_same(oct->vertices.size(), Vec{1, 0, 0});
  PLMap c = make_pl_map(oct, oct, all_same);
  for (auto d : c.degenerate_piece) CHECK(d == 1);

  PLMap w = wrap_map(8, 2);
  CHECK(w.codim() == 0);

  // Image off the target polyhedron.
  std::vector<Vec> off = oct->vertices;
  off[0] = {2, 0, 0};
  CHECK_THROWS_AS(make_pl_map(oct, oct, off), InvalidImage);
  std::vector<Vec> short_list(3, Vec{1, 0, 0});
  CHECK_THROWS_AS(make_pl_map(oct, oct, short_list), MalformedInput);
}

TEST_CASE("projection fiber: two points near the poles") {
  double prev = 0;
  for (int level : {2, 3, 4}) {
    PLMap f = projection_s2(level);
    Vec y = make_regular(f, {0.0, 0.0}, rng);
    Fiber fb = fiber(f, y);
    REQUIRE(fb.points.size() == 2);
    CHECK(fb.total_weight() == 2);
    double d = source_distance(f, fb.points[0].point, fb.points[1].point);
    CHECK(d >= prev - 1e-9);  // improves with refinement
    prev = d;
    CHECK(std::fabs(fb.points[0].point[2]) > 0.9);
    CHECK(std::fabs(fb.points[1].point[2]) > 0.9);
  }
  CHECK(prev >= M_PI - 0.05);
}

TEST_CASE("height map fiber: equator loop of length about 2 pi") {
  double prev_err = kInf;
  for (int level : {2, 3, 4}) {
    PLMap f = height_s2(level);
    Vec y = make_regular(f, {1e-3}, rng);
    Fiber fb = fiber(f, y);
    REQUIRE(fb.components.size() == 1);
    CHECK(fb.components[0].closed);
    double err = std::fabs(fb.components[0].length - 2 * M_PI);
    CHECK(err <= prev_err + 1e-9);
    prev_err = err;
  }
  CHECK(prev_err < 5e-3);

  // Near the top: one small loop.
  PLMap f = height_s2(4);
  Vec y = make_regular(f, {0.97}, rng);
  Fiber fb = fiber(f, y);
  REQUIRE(fb.components.size() == 1);
  CHECK(fb.components[0].closed);
  CHECK(fb.components[0].length < 1.5);
}

TEST_CASE("non-generic values throw and perturbation recovers") {
  PLMap f = height_s2(2);
  // 0 is the height of the equator vertices.
  CHECK_THROWS_AS(fiber(f, {0.0}), NonGenericTarget);
  int perturbations = 0;
  Vec y = make_regular(f, {0.0}, rng, 1e-7, &perturbations);
  CHECK(perturbations >= 1);
  CHECK(std::fabs(y[0]) < 1e-4);
  CHECK(fiber(f, y).components.size() == 1);
}

TEST_CASE("constant map fibers") {
  auto oct = cross_polytope_sphere(2, 0);
  std::vector<Vec> im(oct->vertices.size(), Vec{0.3, -0.2});
  PLMap f = make_pl_map(oct, 2, im);
  CHECK(fiber(f, {0.5, 0.5}).points.empty());
  CHECK_THROWS_AS(fiber(f, {0.3, -0.2}), NonGenericTarget);
}

TEST_CASE("mod-2 degree") {
  auto oct = cross_polytope_sphere(2, 0);
  CHECK(mod2_degree(make_pl_map(oct, oct, oct->vertices)) == 1);
  CHECK(mod2_degree(wrap_map(8, 2)) == 0);
  CHECK(mod2_degree(wrap_map(8, 3)) == 1);
  std::vector<Vec> all_same(oct->vertices.size(), Vec{1, 0, 0});
  CHECK(mod2_degree(make_pl_map(oct, oct, all_same)) == 0);

  // S^2 -> R^2 is not a closed-target situation.
  CHECK_THROWS_AS(mod2_degree(projection_s2(1)), NotClosedManifold);
  // Dimension mismatch.
  CHECK_THROWS_AS(mod2_degree(height_s2(1)), DimensionMismatch);
}

TEST_CASE("degree parity is stable across 100 regular values") {
  for (PLMap f : {wrap_map(8, 2), wrap_map(8, 3)}) {
    int expect = mod2_degree(f);
    for (int i = 0; i < 100; ++i) {
      Vec y = sample_regular_value(f, rng);
      CHECK(fiber(f, y).total_weight() % 2 == expect);
    }
  }
}

TEST_CASE("multiplicity") {
  // Height map S^1 -> R: every interior value has two preimages.
  auto circ = polygon_circle(32);
  std::vector<Vec> h;
  for (const auto& v : circ->vertices) h.push_back({v[1]});
  CHECK(multiplicity(make_pl_map(circ, 1, h), 100) == 2);

  // Identity S^1 -> S^1.
  CHECK(multiplicity(make_pl_map(circ, circ, circ->vertices), 50) == 1);
}

TEST_CASE("two-hump map hits multiplicity 4 (dense-grid oracle)") {
  const int m = 64;
  auto circ = polygon_circle(m);
  std::vector<double> vals(m);
  std::vector<Vec> im;
  for (int k = 0; k < m; ++k) {
    double th = 2 * M_PI * k / m;
    // Two humps of unequal height: values in the overlap have 4 preimages.
    vals[k] = std::sin(2 * th) + 0.2 * std::sin(th);
    im.push_back({vals[k]});
  }
  PLMap f = make_pl_map(circ, 1, im);
  int got = multiplicity(f, 400);

  // Oracle: count sign changes of the vertex-value sequence directly on a
  // dense grid of target values, avoiding vertex values themselves.
  int oracle = 0;
  for (int g = 0; g < 5000; ++g) {
    double y = -1.3 + 2.6 * (g + 0.5) / 5000;
    bool at_vertex = false;
    for (double v : vals)
      if (std::fabs(v - y) < 1e-9) at_vertex = true;
    if (at_vertex) continue;
    int crossings = 0;
    for (int k = 0; k < m; ++k)
      if ((vals[k] - y) * (vals[(k + 1) % m] - y) < 0) ++crossings;
    oracle = std::max(oracle, crossings);
  }
  CHECK(oracle == 4);
  CHECK(got == oracle);
}

TEST_CASE("two-component fiber matches an independent re-chaining oracle") {
  // f(v) = v_z^2 sampled at vertices: fibers over interior values are two
  // latitude-like loops.
  auto K = cross_polytope_sphere(2, 4);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({v[2] * v[2]});
  PLMap f = make_pl_map(K, 1, im);
  Vec y = make_regular(f, {0.5}, rng);
  Fiber fb = fiber(f, y);
  REQUIRE(fb.components.size() == 2);
  for (const auto& c : fb.components) CHECK(c.closed);

  // Oracle: per-triangle crossing segments recomputed from scratch (no
  // chaining), arc lengths summed.
  double oracle = 0;
  for (int t = 0; t < K->count(2); ++t) {
    const auto& s = K->top()[t];
    std::vector<Vec> ends;
    for (int e = 0; e < 3; ++e) {
      int a = s[e], b = s[(e + 1) % 3];
      double fa = im[a][0] - y[0], fbv = im[b][0] - y[0];
      if (fa * fbv < 0) {
        double u = fa / (fa - fbv);
        ends.push_back(K->vertices[a] + u * (K->vertices[b] - K->vertices[a]));
      }
    }
    if (ends.size() == 2)
      oracle += std::acos(std::clamp(
          dot(normalized(ends[0]), normalized(ends[1])), -1.0, 1.0));
  }
  double total = fb.components[0].length + fb.components[1].length;
  CHECK(total == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(fiber_length(f, y).total == doctest::Approx(total));
}

TEST_CASE("fiber components vary continuously in the target value") {
  PLMap f = height_s2(3);
  Vec y1 = make_regular(f, {0.312}, rng);
  Vec y2 = {y1[0] + 1e-4};
  Fiber a = fiber(f, y1), b = fiber(f, y2);
  REQUIRE(a.components.size() == 1);
  REQUIRE(b.components.size() == 1);
  // One-sided Hausdorff distance between the loops is O(|y1 - y2|).
  double worst = 0;
  for (const auto& p : a.components[0].points) {
    double best = kInf;
    for (const auto& q : b.components[0].points)
      best = std::min(best, norm(p - q));
    worst = std::max(worst, best);
  }
  CHECK(worst < 5e-3);
}

TEST_CASE("torus fiber: exact vertical loops") {
  auto K = flat_torus(3);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({std::sin(2 * M_PI * v[0])});
  PLMap f = make_pl_map(K, 1, im);
  Vec y = make_regular(f, {0.3}, rng);
  Fiber fb = fiber(f, y);
  // The map only depends on the first coordinate, so the fiber is a pair of
  // vertical circles of length exactly 1.
  REQUIRE(fb.components.size() == 2);
  for (const auto& c : fb.components) {
    CHECK(c.closed);
    CHECK(c.length == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("wrong codimension and bad target dimensions are rejected") {
  PLMap h = height_s2(1);
  CHECK_THROWS_AS(multiplicity(h, 10), WrongCodimension);
  PLMap p = projection_s2(1);
  CHECK_THROWS_AS(fiber_length(p, {0.0, 0.0}), WrongCodimension);
  CHECK_THROWS_AS(fiber(p, {0.0}), DimensionMismatch);
}
