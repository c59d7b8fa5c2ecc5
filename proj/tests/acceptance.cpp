// Acceptance gate: one criterion per test case, one printed pass/fail line
// each, with the tolerances pinned in code. Run via ctest or directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "widthlab/coincidence.hpp"
#include "widthlab/cyclespace.hpp"
#include "widthlab/geomlemmas.hpp"
#include "widthlab/waists.hpp"
#include "widthlab/widths.hpp"

using namespace widthlab;

namespace {

struct Criterion {
  bool ok = true;
  std::string first_failure;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

void run(int num, const char* name, double budget_s,
         const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const Error& e) {
    c.require(false, std::string("unexpected error: ") + e.what());
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= budget_s, "time budget exceeded");
  std::printf("criterion %d (%s): %s (%.1fs)\n", num, name,
              c.ok ? "pass" : "fail", secs);
  std::fflush(stdout);
  CHECK_MESSAGE(c.ok, "criterion ", num, ": ", c.first_failure);
}

PLMap axis_fold(int level, int axis) {
  auto K = cross_polytope_sphere(2, level);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) {
    Vec q = v;
    q[axis] = std::fabs(q[axis]);
    im.push_back(q);
  }
  PLMap f = make_pl_map(K, K, std::move(im));
  f.id = "fold-axis" + std::to_string(axis) + "@" + std::to_string(level);
  return f;
}

PLMap skew_height_s1(int m) {
  auto S = polygon_circle(m);
  Vec u = normalized(Vec{0.31, 0.95});
  std::vector<Vec> im;
  for (const auto& v : S->vertices) im.push_back({dot(v, u)});
  return make_pl_map(S, 1, std::move(im));
}

std::vector<Vec> equator_polygon(int n) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) {
    double th = 2 * M_PI * i / n;
    out.push_back({std::cos(th), std::sin(th), 0.0});
  }
  return out;
}

}  // namespace

TEST_CASE("1: exact widths of the simplex-skeleton maps") {
  run(1, "exact ball widths", 60.0, [](Criterion& c) {
    for (int n : {2, 3}) {
      double want = std::sqrt((2.0 * n + 2.0) / n);  // sqrt(3), sqrt(8/3)
      WidthReport w = map_width(shchepin_map(n));
      c.require(w.exact, "width not computed exactly for n=" + std::to_string(n));
      c.require(std::fabs(w.lower - want) <= 1e-6, "lower off for n=" + std::to_string(n));
      c.require(std::fabs(w.upper - want) <= 1e-6, "upper off for n=" + std::to_string(n));
    }
  });
}

TEST_CASE("2: antipodal coincidence pairs") {
  run(2, "antipodal pairs", 120.0, [](Criterion& c) {
    auto check = [&](const AnalyticMap& f) {
      CoincidencePair p = borsuk_ulam_pair(f, 1e-8, 200000, 1);
      c.require(p.residual <= 1e-6, f.name + ": residual too large");
      c.require(std::fabs(p.distance - M_PI) <= 1e-6, f.name + ": pair not antipodal");
    };
    check(projection_map(ModelSpace::sphere(2), 2));
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      check(random_smooth_map(ModelSpace::sphere(2), seed));

    PLMap proj = discretize(projection_map(ModelSpace::sphere(2), 2), 4);
    WidthReport w = map_width(proj, 4000, 3, 1);
    c.require(w.lower >= M_PI - 0.1, "projection width fell short of pi");
  });
}

TEST_CASE("3: equal-image pairs at a prescribed distance") {
  run(3, "prescribed-distance pairs", 120.0, [](Criterion& c) {
    std::vector<AnalyticMap> maps{projection_map(ModelSpace::sphere(2), 2)};
    for (std::uint64_t seed : {101, 102, 103})
      maps.push_back(random_smooth_map(ModelSpace::sphere(2), seed));
    for (const AnalyticMap& f : maps)
      for (double delta : {0.5, 1.0, 2.0, M_PI}) {
        CoincidencePair p = hopf_pair(f, delta, 1e-8, 400000, 1);
        c.require(p.residual <= 1e-6, f.name + ": residual too large");
        c.require(std::fabs(p.distance - delta) <= 1e-6,
                  f.name + ": distance missed delta");
      }
  });
}

TEST_CASE("4: even-degree maps identify a far pair") {
  run(4, "even-degree pairs", 60.0, [](Criterion& c) {
    std::vector<PLMap> maps;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      for (int degree : {0, 2})
        maps.push_back(pl_random_even_walk(8, degree, seed));
    for (int axis : {0, 1, 2}) maps.push_back(axis_fold(2, axis));
    maps.push_back(axis_fold(3, 2));
    {
      auto K = cross_polytope_sphere(2, 1);
      std::vector<Vec> cim(K->vertices.size(), K->vertices[0]);
      maps.push_back(make_pl_map(K, K, std::move(cim)));
    }
    double rho_floor = M_PI - 1e-3;
    for (const PLMap& f : maps) {
      CoincidencePair p = even_degree_pair(f, 1e-8);
      c.require(p.residual <= 1e-6, f.id + ": residual too large");
      c.require(p.distance >= rho_floor, f.id + ": pair below the distance floor");
    }
  });
}

TEST_CASE("5: cycle-space class, homotopy endpoints, event tracking") {
  run(5, "cycle space", 60.0, [](Criterion& c) {
    PLMap osc = pl_two_hump_wrap(8, 7, 5);
    c.require(canonical_class_eval(osc, 50, 1) == 1, "canonical class != 1");
    c.require(canonical_class_eval(pl_wrap_map(8, 2), 50, 1) == 1,
              "wrap canonical class != 1");

    // Homotopy endpoints: h_0 equals the fiber cycle, h_1 is empty.
    std::mt19937_64 rng(7);
    auto T = polygon_circle(8);
    Vec y = make_regular(osc, 0.5 * (T->vertices[5] + T->vertices[6]), rng);
    ZeroCycle base = cycle_map(osc, y);
    ZeroCycle h0 = contraction_homotopy(osc, y, 0.0);
    c.require(h0.cardinality() == base.cardinality(), "h_0 cardinality mismatch");
    for (const Vec& p : base.support) {
      double best = kInf;
      for (const Vec& q : h0.support) best = std::min(best, norm(p - q));
      c.require(best <= 1e-9, "h_0 support differs from the fiber cycle");
    }
    c.require(contraction_homotopy(osc, y, 1.0).cardinality() == 0,
              "h_1 not empty");

    // 100 fold crossings on a zig-zag path across the global maximum.
    PLMap h = skew_height_s1(64);
    double top = -kInf;
    for (const auto& q : h.vertex_images) top = std::max(top, q[0]);
    std::vector<Vec> path{{top - 1e-4}};
    for (int i = 0; i < 50; ++i) {
      path.push_back({top + 1e-3});
      path.push_back({top - 1e-4});
    }
    path.push_back({top + 1e-3});
    TrackResult r = track_events(h, path, 1.0);
    int created = 0, annihilated = 0;
    for (const auto& ev : r.events) {
      if (ev.kind == EventKind::PairCreated) ++created;
      if (ev.kind == EventKind::PairAnnihilated) ++annihilated;
    }
    c.require(created == 50 && annihilated == 51,
              "fold crossing count off: " + std::to_string(created) + "+" +
                  std::to_string(annihilated));
    c.require(r.final_parities.empty(), "stray parities after the last fold");
  });
}

TEST_CASE("6: waist floors") {
  run(6, "waist floors", 300.0, [](Criterion& c) {
    PLMap height = discretize(height_map(ModelSpace::sphere(2)), 5);
    WaistReport hw = waist_check(height, FloorKind::TwoPiManifold, 1200, 1, 0.05);
    c.require(hw.pass, "height map loop below 2*pi - 0.05");

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      PLMap f = discretize(random_smooth_function(ModelSpace::sphere(2), seed), 4);
      WaistReport w = waist_check(f, FloorKind::TwoPiManifold, 1200, seed, 0.1);
      c.require(w.pass, f.id + ": loop below 2*pi - 0.1");
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      PLMap f = pl_random_tripod_map(3, seed);
      WaistReport w = waist_check(f, FloorKind::PiPolyhedral, 1200, seed, 0.05);
      c.require(w.pass, f.id + ": total length below pi - 0.05");
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      PLMap f = discretize(random_smooth_function(ModelSpace::torus(), seed), 4);
      WaistReport w = waist_check(f, FloorKind::TwoKappa, 1200, seed, 0.02);
      c.require(w.pass, f.id + ": total length below 2*kappa - 0.02");
    }
  });
}

TEST_CASE("7: crossing probabilities against the integral-geometry identity") {
  run(7, "crossing probabilities", 60.0, [](Criterion& c) {
    CroftonEstimate eq = crofton_probability(equator_polygon(400), true, 100000, 1);
    c.require(eq.p_hat == 1.0, "equator missed by some great circle");
    c.require(std::fabs(eq.e_hat - 2.0) <= 3 * eq.sigma_e,
              "equator crossing mean off 2 beyond 3 sigma");

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      double target = 1.0 + 0.4 * static_cast<double>(seed);
      std::vector<Vec> curve = random_closed_polygon(seed, target, 6);
      CroftonEstimate ce = crofton_probability(curve, true, 20000, seed);
      c.require(ce.p_hat <= std::min(1.0, ce.length / M_PI) + 3 * ce.sigma_p,
                "crossing probability above length/pi at seed " +
                    std::to_string(seed));
      c.require(std::fabs(ce.e_hat - ce.length / M_PI) <= 3 * ce.sigma_e + 1e-3,
                "crossing mean off length/pi at seed " + std::to_string(seed));
    }
  });
}

TEST_CASE("8: lemma campaigns with tightness witnesses") {
  run(8, "lemma campaigns", 180.0, [](Criterion& c) {
    c.require(hemisphere_campaign(10000, 1).failures == 0, "hemisphere failures");
    c.require(median_campaign(100000, 2).failures == 0, "median failures");
    c.require(quarter_ball_campaign(10000, 3).failures == 0, "quarter-ball failures");
    c.require(convexity_campaign(1000, 100, 4).failures == 0, "convexity failures");

    // Tightness: a great circle needs the full closed hemisphere...
    HemisphereResult tight = hemisphere_check(equator_polygon(4096), true);
    c.require(std::fabs(tight.cap.radius - M_PI / 2) <= 1e-9,
              "great-circle cap radius not pi/2");
    // ...and the degenerate triangle b = c makes the median bound an equality.
    Vec a{0.0, 0.0, 1.0}, b = normalized(Vec{1.0, 0.2, 0.4});
    c.require(std::fabs(median_check(a, b, b)) <= 1e-12,
              "degenerate median margin not 0");
  });
}

TEST_CASE("9: equator-evading fiber components of random maps") {
  run(9, "equator-evading components", 180.0, [](Criterion& c) {
    for (std::uint64_t seed = 201; seed <= 250; ++seed) {
      PLMap f = discretize(random_smooth_function(ModelSpace::sphere(2), seed), 3);
      ConjectureWitness w = conjecture_probe(f, 2000, 0.05, seed);
      c.require(w.cap_radius >= M_PI / 2 - 0.05,
                f.id + ": no component met every equatorial circle");
    }
  });
}
