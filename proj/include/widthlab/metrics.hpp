#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "widthlab/errors.hpp"
#include "widthlab/geom.hpp"

namespace widthlab {

enum class SpaceKind { RoundSphere, Euclidean, EuclideanBall, FlatTorus };

// Model space with closed-form geodesics. Spheres are unit and round,
// balls are unit Euclidean balls, the torus is R^2/Z^2.
struct ModelSpace {
  SpaceKind kind;
  int n;  // intrinsic dimension

  static ModelSpace sphere(int n) { return {SpaceKind::RoundSphere, n}; }
  static ModelSpace euclidean(int n) { return {SpaceKind::Euclidean, n}; }
  static ModelSpace ball(int n) { return {SpaceKind::EuclideanBall, n}; }
  static ModelSpace torus() { return {SpaceKind::FlatTorus, 2}; }

  int ambient_dim() const { return kind == SpaceKind::RoundSphere ? n + 1 : n; }
  std::string name() const;
  static ModelSpace parse(const std::string& name);

  bool operator==(const ModelSpace&) const = default;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPointTol = 1e-9;

// (rho, kappa): injectivity radius and convexity radius.
struct SpaceConstants {
  double rho;
  double kappa;
};
SpaceConstants constants(const ModelSpace& space);

void validate_point(const ModelSpace& space, const Vec& p, double tol = kPointTol);

double distance(const ModelSpace& space, const Vec& p, const Vec& q);

// Point at parameter t on the unique shortest geodesic from p to q.
// Requires distance(p, q) < rho; s(p, p, t) = p and s(p,q,t) = s(q,p,1-t).
Vec short_path(const ModelSpace& space, const Vec& p, const Vec& q, double t);

// Endpoint of the geodesic of length `len` from x with unit tangent v.
Vec geodesic_shoot(const ModelSpace& space, const Vec& x, const Vec& v, double len);

double set_diameter(const ModelSpace& space, std::span<const Vec> points);

// Wrap torus coordinates into [0,1)^2.
Vec torus_wrap(const Vec& p);
// Coordinate-wise difference wrapped into [-1/2, 1/2]^2.
Vec torus_delta(const Vec& p, const Vec& q);

struct Cap {
  Vec center;   // unit vector
  double radius;  // geodesic radius in [0, pi]
};

// Minimal closed spherical cap containing the points. The sub-hemisphere
// case is solved exactly through the minimum-norm point of the convex hull;
// the radius >= pi/2 case enumerates empty-cap candidates (subsampled for
// very large inputs, which only ever need the pi/2 threshold).
Cap smallest_enclosing_cap(std::span<const Vec> points, double tol = 1e-9);

// Distance from the origin to the convex hull of the points, with the
// attaining convex combination direction (unit when the distance is > 0).
double min_norm_point(std::span<const Vec> points, Vec* direction = nullptr,
                      int max_iter = 20000, double tol = 1e-13);

}  // namespace widthlab
