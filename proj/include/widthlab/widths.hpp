#pragma once

#include "widthlab/builtin_maps.hpp"
#include "widthlab/plmaps.hpp"

namespace widthlab {

struct WidthReport {
  std::string map_id;
  double lower = 0;    // certified: diameter of a concrete computed fiber
  double upper = 0;    // lower + modulus-of-continuity slack over unsampled y
  Vec witness_target;  // target value achieving `lower`
  int samples = 0;
  double mesh_scale = 0;  // longest source edge
  int perturbations = 0;  // non-generic samples that had to be nudged
  bool exact = false;     // vertex-enumeration path (Euclidean sources)
};

// Evaluates sup_y diam f^-1(y) for one PL map, codim 0 or 1.
//
// Euclidean-source maps are solved exactly: the width is the maximum source
// distance over pairs of points with equal images, a convex maximization per
// piece pair whose optimum sits at a vertex of the equal-image polytope, and
// those vertices are enumerated outright. Other sources use stratified
// target sampling plus local refinement around the running maximum; `upper`
// then adds a Lipschitz slack from per-piece singular values.
WidthReport map_width(const PLMap& f, int samples = 10000,
                      int refine_rounds = 3, std::uint64_t seed = 1,
                      bool parallel = true);

// Diameter of the (closed) fiber over a fixed target value, in the source
// metric. Exact polytope-vertex enumeration for Euclidean sources (works at
// non-generic values); generic fiber extraction elsewhere.
double fiber_diameter(const PLMap& f, const Vec& y, int* perturbations = nullptr,
                      std::uint64_t seed = 1);

// The composite g.f on simplex_ball(n): f projects the ball onto the
// inscribed regular simplex, g collapses the barycentric star of the facet
// barycenters to the cone point while fixing the (n-2)-skeleton. Target is
// the tripod (n = 2) or the cone over the tetrahedron edges (n = 3); the
// width is sqrt((2n+2)/n), the inscribed simplex edge length.
PLMap shchepin_map(int n);

enum class BoundKind { Rho, Kappa, SphereSimplex };

struct BoundRow {
  std::string map_id;
  double lower = 0;
  double bound = 0;
  bool pass = false;
};

// Checks map_width().lower >= bound - slack on a family of maps sharing a
// source space. Any failed row indicates a harness or mesh bug, never a
// counterexample to the floor.
std::vector<BoundRow> width_bound_harness(const ModelSpace& space,
                                          const std::vector<PLMap>& maps,
                                          BoundKind kind, double slack = 0.1,
                                          int samples = 10000,
                                          std::uint64_t seed = 1);
double bound_value(const ModelSpace& space, BoundKind kind);

struct HalfSphereVerdict {
  bool inside = false;  // contained in an open half-sphere
  Vec direction;        // pole of the half-sphere when inside
  double cap_radius = 0;
  bool boundary = false;  // cap radius == pi/2 within 1e-9
};

// Sitnikov's dichotomy for a point set on a round sphere: inside an open
// half-sphere iff the smallest enclosing cap has radius < pi/2.
HalfSphereVerdict half_sphere_test(std::span<const Vec> points);

}  // namespace widthlab
