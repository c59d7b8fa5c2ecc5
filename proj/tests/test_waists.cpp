#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "widthlab/waists.hpp"

using namespace widthlab;

TEST_CASE("floor values") {
  CHECK(floor_value(ModelSpace::sphere(2), FloorKind::PiPolyhedral) ==
        doctest::Approx(M_PI));
  CHECK(floor_value(ModelSpace::sphere(2), FloorKind::TwoPiManifold) ==
        doctest::Approx(2 * M_PI));
  CHECK(floor_value(ModelSpace::torus(), FloorKind::TwoKappa) ==
        doctest::Approx(0.5));
  CHECK(floor_value(ModelSpace::sphere(3), FloorKind::TwoKappa) ==
        doctest::Approx(M_PI));
  CHECK_THROWS_AS(floor_value(ModelSpace::torus(), FloorKind::TwoPiManifold),
                  PreconditionViolated);
}

TEST_CASE("height map waist reaches 2*pi at the equator") {
  PLMap f = discretize(height_map(ModelSpace::sphere(2)), 4);
  WaistReport rep = waist_check(f, FloorKind::TwoPiManifold, 400, 3, 0.05);
  CHECK(rep.pass);
  CHECK(rep.max_total_length >= 2 * M_PI - 0.05);
  CHECK(rep.max_total_length <= 2 * M_PI + 1e-6);  // loops never beat the equator
  CHECK(std::fabs(rep.witness_target[0]) < 0.2);
  CHECK(rep.witness_component_cap.radius == doctest::Approx(M_PI / 2).epsilon(0.02));
  CHECK_THROWS_AS(waist_check(discretize(projection_map(ModelSpace::sphere(2), 2), 2),
                              FloorKind::TwoPiManifold, 10, 1),
                  WrongCodimension);
}

TEST_CASE("tripod-target maps clear the pi floor") {
  for (std::uint64_t seed : {5, 6, 7}) {
    PLMap f = pl_random_tripod_map(3, seed);
    WaistReport rep = waist_check(f, FloorKind::PiPolyhedral, 600, seed, 0.05);
    CHECK(rep.pass);
    CHECK(rep.max_total_length >= M_PI - 0.05);
  }
}

TEST_CASE("torus functions clear the 2*kappa floor") {
  for (std::uint64_t seed : {11, 12, 13}) {
    PLMap f = discretize(random_smooth_function(ModelSpace::torus(), seed), 4);
    WaistReport rep = waist_check(f, FloorKind::TwoKappa, 600, seed, 0.02);
    CHECK(rep.pass);
    CHECK(rep.max_total_length >= 0.5 - 0.02);
  }
}

TEST_CASE("crofton: equator, half circle, tiny arc") {
  std::vector<Vec> eq;
  for (int i = 0; i < 256; ++i) {
    double th = 2 * M_PI * i / 256;
    eq.push_back({std::cos(th), std::sin(th), 0.0});
  }
  CroftonEstimate ee = crofton_probability(eq, true, 100000, 3);
  CHECK(ee.p_hat == 1.0);
  CHECK(std::fabs(ee.e_hat - 2.0) <= 3 * ee.sigma_e + 1e-12);
  CHECK(std::fabs(ee.length - 2 * M_PI) < 1e-3);

  // Half great circle: antipodal endpoints force exactly one crossing a.s.
  std::vector<Vec> half;
  for (int i = 0; i <= 128; ++i) {
    double th = M_PI * i / 128;
    half.push_back({std::cos(th), std::sin(th), 0.0});
  }
  CroftonEstimate eh = crofton_probability(half, false, 100000, 5);
  CHECK(std::fabs(eh.e_hat - 1.0) <= 3 * eh.sigma_e + 1e-12);
  CHECK(std::fabs(eh.length - M_PI) < 1e-3);

  // Tiny arc of length 0.01.
  std::vector<Vec> arc;
  for (int i = 0; i <= 10; ++i) {
    double th = 0.001 * i;
    arc.push_back({std::cos(th), std::sin(th), 0.0});
  }
  CroftonEstimate ea = crofton_probability(arc, false, 100000, 7);
  CHECK(ea.p_hat <= 0.01 / M_PI + 3 * ea.sigma_p + 1e-4);
}

TEST_CASE("crofton expectation matches length/pi on random polygons") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Vec> poly;
    int k = 4 + rep;
    for (int i = 0; i < k; ++i)
      poly.push_back(normalized(Vec{g(rng), g(rng), g(rng)}));
    CroftonEstimate est = crofton_probability(poly, true, 60000, 100 + rep);
    CHECK(std::fabs(est.e_hat - est.length / M_PI) <= 3 * est.sigma_e + 1e-3);
    CHECK(est.p_hat <= std::min(1.0, est.length / M_PI) + 3 * est.sigma_p + 1e-3);
  }
  CHECK_THROWS_AS(crofton_probability({Vec{0.0, 0.0, 1.0}}, false, 10, 1),
                  PreconditionViolated);
}

TEST_CASE("connected fiber map with closed-form latitude oracle") {
  // f(v) = v_z^2: regular values in (0,1) have two latitude-circle
  // components at z = +-sqrt(y).
  auto K = cross_polytope_sphere(2, 4);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({v[2] * v[2]});
  PLMap f = make_pl_map(K, 1, std::move(im));

  auto comps = connected_fiber_map(f, Vec{0.25});
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    CHECK(c.closed);
    CHECK(c.length == doctest::Approx(2 * M_PI * std::sqrt(0.75)).epsilon(0.01));
    // Cap centered at a pole with radius acos(1/2) = pi/3.
    CHECK(std::fabs(std::fabs(c.cap.center[2]) - 1.0) < 0.01);
    CHECK(c.cap.radius == doctest::Approx(M_PI / 3).epsilon(0.02));
  }

  // Heights at 0: single equator component with cap radius pi/2.
  PLMap h = discretize(height_map(ModelSpace::sphere(2)), 3);
  std::mt19937_64 rng(3);
  Vec y0 = make_regular(h, Vec{0.001}, rng);
  auto hc = connected_fiber_map(h, y0);
  REQUIRE(hc.size() == 1);
  CHECK(hc[0].closed);
  CHECK(hc[0].cap.radius == doctest::Approx(M_PI / 2).epsilon(0.01));

  // Beyond the image range: empty fiber.
  CHECK(connected_fiber_map(h, Vec{2.0}).empty());
  CHECK_THROWS_AS(
      connected_fiber_map(discretize(projection_map(ModelSpace::sphere(2), 2), 2),
                          Vec{0.1, 0.1}),
      WrongCodimension);
}

TEST_CASE("waist witness cap is reproducible") {
  PLMap f = discretize(random_smooth_function(ModelSpace::sphere(2), 23), 3);
  WaistReport rep = waist_check(f, FloorKind::TwoPiManifold, 300, 9, 0.1);
  auto comps = connected_fiber_map(f, rep.witness_target);
  const FiberComponentInfo* longest = nullptr;
  for (const auto& c : comps)
    if (!longest || c.length > longest->length) longest = &c;
  REQUIRE(longest != nullptr);
  CHECK(std::fabs(longest->cap.radius - rep.witness_component_cap.radius) <= 1e-9);
  CHECK(std::fabs(longest->length - rep.max_component_length) <= 1e-9);
}

TEST_CASE("conjecture probe finds equator-evading components") {
  PLMap h = discretize(height_map(ModelSpace::sphere(2)), 3);
  ConjectureWitness w = conjecture_probe(h, 500, 0.05, 1);
  CHECK(w.evades_half_spheres);
  CHECK(w.cap_radius >= M_PI / 2 - 0.05);

  for (std::uint64_t seed : {31, 32, 33}) {
    PLMap f = discretize(random_smooth_function(ModelSpace::sphere(2), seed), 3);
    ConjectureWitness wf = conjecture_probe(f, 800, 0.05, seed);
    CHECK(wf.evades_half_spheres);
  }

  // Tripod target: lune loops hug the cutting meridians, but can get no
  // closer than one mesh ring, so the cap deficit scales with the mesh.
  ConjectureWitness wt = conjecture_probe(pl_random_tripod_map(4, 41), 600, 0.08, 2);
  CHECK(wt.evades_half_spheres);
  CHECK(wt.cap_radius >= M_PI / 2 - 0.08);

  CHECK_THROWS_AS(
      conjecture_probe(discretize(projection_map(ModelSpace::sphere(2), 2), 2), 10),
      WrongCodimension);
  CHECK_THROWS_AS(
      conjecture_probe(discretize(random_smooth_function(ModelSpace::torus(), 1), 2), 10),
      PreconditionViolated);
}
