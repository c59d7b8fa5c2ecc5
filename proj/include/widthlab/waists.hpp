#pragma once

#include "widthlab/builtin_maps.hpp"
#include "widthlab/plmaps.hpp"

namespace widthlab {

enum class FloorKind { PiPolyhedral, TwoKappa, TwoPiManifold };

struct WaistReport {
  std::string map_id;
  double max_total_length = 0;   // sup over sampled targets of fiber length
  Vec witness_target;            // target achieving the sup
  double max_component_length = 0;
  Cap witness_component_cap{{}, 0};  // cap of the longest witness component
  double floor = 0;
  bool pass = false;
  int samples = 0;
  int perturbations = 0;
  std::uint64_t seed = 0;
};

// Codim-1 waist harness: samples regular targets and takes the sup of the
// relevant fiber statistic. PiPolyhedral and TwoKappa use total fiber
// length; TwoPiManifold uses per-loop length (the generic fiber of a
// manifold-target map is a union of circles, so open chains are treated as
// non-generic and resampled).
WaistReport waist_check(const PLMap& f, FloorKind kind, int samples = 2000,
                        std::uint64_t seed = 1, double slack = 0.1,
                        bool parallel = true);
double floor_value(const ModelSpace& space, FloorKind kind);

struct CroftonEstimate {
  double p_hat = 0;   // empirical probability of >= 1 crossing
  double e_hat = 0;   // mean crossing count
  double sigma_p = 0; // binomial std error of p_hat
  double sigma_e = 0; // std error of e_hat
  long trials = 0;
  double length = 0;  // geodesic length of the polyline
};

// Monte-Carlo Crofton bound on S^2: random great circles (Gaussian normals)
// against a spherical polyline. E[crossings] = length / pi, and
// P[crossing] <= min(1, length / pi).
CroftonEstimate crofton_probability(const std::vector<Vec>& curve, bool closed,
                                    long trials, std::uint64_t seed = 1,
                                    bool parallel = true);

struct FiberComponentInfo {
  std::vector<Vec> points;
  bool closed = false;
  double length = 0;
  Cap cap{{}, 0};  // smallest enclosing cap (sphere sources only)
};

// The fiber of the factored map through pi_0: connected components with
// length and enclosing-cap metadata.
std::vector<FiberComponentInfo> connected_fiber_map(const PLMap& f, const Vec& y,
                                                    double tol = 1e-9);

struct ConjectureWitness {
  Vec target;
  FiberComponentInfo component;  // best component found
  double cap_radius = 0;
  bool evades_half_spheres = false;  // cap radius >= pi/2 - tol
  int samples = 0;
  std::uint64_t seed = 0;
};

// Empirical probe: hunts sampled fibers of a codim-1 sphere map for a
// connected component whose enclosing cap has radius >= pi/2 - tol, i.e. a
// component meeting every equatorial subsphere. Evidence only.
ConjectureWitness conjecture_probe(const PLMap& f, int samples = 2000,
                                   double tol = 0.05, std::uint64_t seed = 1,
                                   bool parallel = true);

}  // namespace widthlab
