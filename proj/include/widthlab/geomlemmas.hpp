#pragma once

#include <string>
#include <vector>

#include "widthlab/metrics.hpp"

namespace widthlab {

struct LemmaVerdict {
  std::string lemma;
  long trials = 0;
  long failures = 0;
  double worst_margin = kInf;  // signed; >= -tol everywhere means the lemma held
  std::string worst_case;      // reproducer for the worst trial
};

struct HemisphereResult {
  double length = 0;
  Cap cap{{}, 0};
  double margin = 0;  // pi/2 - cap radius
};

// A closed spherical curve of length <= 2*pi lies in a hemisphere.
HemisphereResult hemisphere_check(const std::vector<Vec>& curve, bool closed,
                                  double tol = 1e-9);

// Median bound for spherical triangles: with m the midpoint of [bc] and
// d(a,b) + d(a,c) < pi, d(a,m) <= (d(a,b) + d(a,c)) / 2.
// Returns the margin (rhs - lhs).
double median_check(const Vec& a, const Vec& b, const Vec& c);

// A closed curve of length l < 2*pi is covered by the ball of radius l/4
// about the midpoint of [curve(0), curve(l/2)]. Returns l/4 minus the
// farthest curve distance from that midpoint.
double quarter_ball_check(const std::vector<Vec>& curve);

// Strict convexity of small balls: geodesics between sampled point pairs of
// B(center, r) stay inside. r < pi/2 on spheres, r < kappa elsewhere is the
// lemma regime; larger r is allowed to hunt for counterexamples.
LemmaVerdict ball_convexity_check(const ModelSpace& space, const Vec& center,
                                  double r, int pairs, std::uint64_t seed = 1,
                                  double tol = 1e-9);

// Random closed geodesic polygon on S^2 through `verts` Gaussian points,
// contracted toward its first vertex until the length is at most
// `max_length` (binary search on the contraction parameter).
std::vector<Vec> random_closed_polygon(std::uint64_t seed, double max_length,
                                       int verts = 6);

// Property campaigns with reproducible seeds; any failure ships the
// reproducer in worst_case.
LemmaVerdict hemisphere_campaign(long trials, std::uint64_t seed,
                                 double tol = 1e-9, bool parallel = true);
LemmaVerdict median_campaign(long trials, std::uint64_t seed,
                             double tol = 1e-12, bool parallel = true);
LemmaVerdict quarter_ball_campaign(long trials, std::uint64_t seed,
                                   double tol = 1e-9, bool parallel = true);
LemmaVerdict convexity_campaign(long balls, int pairs_per_ball,
                                std::uint64_t seed, double tol = 1e-9,
                                bool parallel = true);

}  // namespace widthlab
