#pragma once

#include "widthlab/builtin_maps.hpp"
#include "widthlab/plmaps.hpp"

namespace widthlab {

struct CoincidencePair {
  Vec x, y;            // the coincidence pair in the source space
  double distance = 0; // geodesic distance between x and y
  double residual = 0; // max-norm of the image difference
  std::string method;
  long evaluations = 0;
};

// Antipodal pair with f(x) ~= f(-x) for f: S^n -> R^n, n in {1,2,3}.
// Multistart Gauss-Newton on the odd part g(x) = f(x) - f(-x).
CoincidencePair borsuk_ulam_pair(const AnalyticMap& f, double tol = 1e-8,
                                 long budget = 200000, std::uint64_t seed = 1);

// Pair at geodesic distance exactly delta with equal images, constructed as
// the two endpoints of geodesic shots of length delta/2 from a common
// midpoint. X in {S^1, S^2, T^2}, target R^{dim X}.
CoincidencePair hopf_pair(const AnalyticMap& f, double delta, double tol = 1e-8,
                          long budget = 400000, std::uint64_t seed = 1);

// Pair with equal images at distance >= rho(source) for an even-degree PL
// map between closed manifolds; on spheres the pair is exactly antipodal.
CoincidencePair even_degree_pair(const PLMap& f, double tol = 1e-8,
                                 long budget = 400000, std::uint64_t seed = 1);

}  // namespace widthlab
