#pragma once

#include <functional>

#include "widthlab/plmaps.hpp"

namespace widthlab {

// Analytic map evaluator on a model space, used directly by the coincidence
// searches and discretized into PL maps for everything else.
struct AnalyticMap {
  std::string name;
  ModelSpace source{SpaceKind::RoundSphere, 2};
  int target_dim = 0;
  std::function<Vec(const Vec&)> fn;
};

// First m ambient coordinates.
AnalyticMap projection_map(const ModelSpace& source, int m);
// Last ambient coordinate.
AnalyticMap height_map(const ModelSpace& source);
// Random polynomial of degree <= 3 in the ambient coordinates (spheres) or
// random trigonometric polynomial (torus); target dimension = source dim.
AnalyticMap random_smooth_map(const ModelSpace& source, std::uint64_t seed);
// Same with a 1-dimensional target (for codimension-1 experiments).
AnalyticMap random_smooth_function(const ModelSpace& source, std::uint64_t seed);

// Discretization on the standard mesh of the source at `mesh_level`.
PLMap discretize(const AnalyticMap& map, int mesh_level);

// Degree-d wrap: the (m*d)-gon onto the m-gon, vertex k -> vertex k mod m.
PLMap pl_wrap_map(int m, int degree);
// Degree-0 closed walk on the target m-gon with two humps of heights h1 > h2
// (asymmetric, so fibers avoid exact antipodal pairs). Source is the
// (2*(h1+h2))-gon.
PLMap pl_two_hump_wrap(int m, int h1, int h2);
// Degree-0 fold of the sphere mesh: (x, y, z) -> (x, y, |z|).
PLMap pl_fold_s2(int level);
// Random even-degree map S^1 -> S^1: a seeded +-1 closed walk on the m-gon
// with winding number `degree` (degree even).
PLMap pl_random_even_walk(int m, int degree, std::uint64_t seed);
// Random codim-1 map S^2 -> tripod: a seeded PL function clipped onto the
// three legs of the tripod through region weights.
PLMap pl_random_tripod_map(int level, std::uint64_t seed);

// Parses "--map" CLI specifiers like "projection", "height", "poly:7",
// "trig:3", "shchepin" is handled by the widths module.
AnalyticMap parse_analytic(const std::string& spec, const ModelSpace& source);

}  // namespace widthlab
