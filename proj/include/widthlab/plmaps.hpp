#pragma once

#include <functional>
#include <optional>
#include <random>

#include "widthlab/complexes.hpp"

namespace widthlab {

// Piecewise-linear map: affine on every top simplex of the source, given by
// one target point per source vertex. The target is either R^m or a complex
// linearly realized in its ambient space.
struct PLMap {
  ComplexPtr source;
  int euclidean_target_dim = -1;  // >= 0 when the target is R^m
  ComplexPtr target_complex;      // set when the target is a complex
  std::vector<Vec> vertex_images;
  std::vector<std::uint8_t> degenerate_piece;  // per top simplex
  bool simplicial = true;  // every piece lands in one target simplex hull
  std::string id = "plmap";

  bool target_is_complex() const { return target_complex != nullptr; }
  int target_ambient() const {
    return target_is_complex() ? target_complex->ambient_dim()
                               : euclidean_target_dim;
  }
  int target_dim() const {
    return target_is_complex() ? target_complex->dim : euclidean_target_dim;
  }
  int codim() const { return source->dim - target_dim(); }

  // Images of the vertices of top simplex t.
  std::vector<Vec> piece_images(int t) const;
  // Affine evaluation inside top simplex t.
  Vec eval(int t, std::span<const double> lambda) const;
  // Locates a containing top simplex of the source point and evaluates.
  Vec eval_at(const Vec& source_point) const;
  int locate(const Vec& source_point, std::vector<double>* lambda = nullptr,
             double tol = 1e-9) const;
};

PLMap make_pl_map(ComplexPtr source, int euclidean_target_dim,
                  std::vector<Vec> vertex_images);
PLMap make_pl_map(ComplexPtr source, ComplexPtr target,
                  std::vector<Vec> vertex_images);

struct WeightedPoint {
  Vec point;          // source ambient coordinates
  int weight;         // local mod-2 multiplicity contribution (1 per piece)
  int piece;          // source top simplex
  std::vector<double> lambda;
};

struct FiberComponent {
  std::vector<Vec> points;  // polyline vertices in source coordinates
  bool closed = false;
  double length = 0;
};

struct Fiber {
  Vec target_point;
  int codim = 0;
  std::vector<WeightedPoint> points;       // codim 0
  std::vector<FiberComponent> components;  // codim 1
  int total_weight() const {
    int w = 0;
    for (const auto& p : points) w += p.weight;
    return w;
  }
  double total_length() const {
    double s = 0;
    for (const auto& c : components) s += c.length;
    return s;
  }
};

// Preimage of a regular target value; throws NonGenericTarget when y is
// within `tol` of a critical image (callers perturb and retry).
Fiber fiber(const PLMap& f, const Vec& y, double tol = 1e-9);

// Parity of the fiber cardinality (with multiplicity) at sampled regular
// values; both source and target must be closed manifolds of equal dimension.
int mod2_degree(const PLMap& f, std::uint64_t seed = 1);

// Max over sampled regular values of the fiber's total weight (a lower bound
// on the multiplicity of the map). Codim 0.
int multiplicity(const PLMap& f, int samples, std::uint64_t seed = 1);

struct FiberLengths {
  std::vector<double> per_component;
  double total = 0;
};
FiberLengths fiber_length(const PLMap& f, const Vec& y, double tol = 1e-9);

// Draws regular target values: for a polyhedral target an interior point of
// a random top simplex, for a Euclidean target a point of a random piece's
// image. Retries with small perturbations around non-generic values;
// `perturbations` (if given) counts how many retries were needed.
Vec sample_regular_value(const PLMap& f, std::mt19937_64& rng,
                         int* perturbations = nullptr);
// Perturbed copy of y that is regular for f.
Vec make_regular(const PLMap& f, Vec y, std::mt19937_64& rng,
                 double scale = 1e-7, int* perturbations = nullptr);

// Distance between two source points measured in the source model space
// (sphere points are radially projected back onto the sphere first).
double source_distance(const PLMap& f, const Vec& a, const Vec& b);

}  // namespace widthlab
