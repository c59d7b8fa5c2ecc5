#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "widthlab/metrics.hpp"

namespace widthlab {

// Triangulation of a model space. Combinatorics are exact integer indices;
// coordinates are ambient Euclidean doubles. All faces of every listed
// simplex are listed. For the flat torus each top simplex additionally
// carries lifted (unwrapped) vertex coordinates so that it is affine.
struct SimplicialComplex {
  int dim = 0;
  ModelSpace space{SpaceKind::Euclidean, 0};
  std::vector<Vec> vertices;
  // simplices[k] = sorted (k+1)-tuples of vertex indices, k = 0..dim.
  std::vector<std::vector<std::vector<int>>> simplices;
  // Lifted coordinates per top simplex (torus only; empty otherwise).
  std::vector<std::vector<Vec>> top_lifts;
  // Distinguished vertices (the inscribed regular simplex of a ball mesh).
  std::vector<int> marked_vertices;

  int ambient_dim() const { return vertices.empty() ? 0 : vertices[0].size(); }
  int count(int k) const {
    return k < static_cast<int>(simplices.size())
               ? static_cast<int>(simplices[k].size())
               : 0;
  }
  const std::vector<std::vector<int>>& top() const { return simplices[dim]; }

  // Geometric vertex coordinates of top simplex `t` (lifted on the torus).
  std::vector<Vec> top_coords(int t) const;

  int euler_characteristic() const;
  bool is_closed_manifold() const;  // every facet bounds exactly two tops

  // Map from each facet (sorted tuple) to the top simplices containing it.
  std::map<std::vector<int>, std::vector<int>> facet_incidence() const;

  // Vertex index of -v for every vertex v; throws if the complex is not
  // antipodally symmetric. Sphere meshes only.
  std::vector<int> antipodal_vertex_map() const;

  void validate() const;  // checks the structural invariants, throws on failure
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

struct Mod2Chain {
  ComplexPtr complex;
  int dim = 0;
  std::vector<std::uint8_t> coefficients;  // one bit per simplex of `dim`
};

// Mod-2 boundary of a chain.
Mod2Chain boundary_mod2(const Mod2Chain& chain);
bool is_zero(const Mod2Chain& chain);

// Subdivided cross-polytope boundary: antipodally symmetric triangulation of
// the round S^n, 1 <= n <= 3. Each subdivision step is edge-midpoint
// refinement followed by radial projection.
ComplexPtr cross_polytope_sphere(int n, int subdivisions);

// Triangulated unit ball B^n (2 <= n <= 3) containing the inscribed regular
// n-simplex of circumradius 1 and its barycentric subdivision as
// subcomplexes. The inscribed simplex corners are `marked_vertices`.
ComplexPtr simplex_ball(int n, int subdivisions);

// Grid triangulation of the flat torus R^2/Z^2, subdivisions >= 1.
ComplexPtr flat_torus(int subdivisions);

// Fundamental cycle of a closed triangulated n-manifold: coefficient 1 on
// every top simplex.
Mod2Chain fundamental_cycle_mod2(const ComplexPtr& K);

// One round of edge-midpoint refinement (4:1 for surfaces, 8:1 for
// 3-complexes); sphere meshes are re-projected to the unit sphere.
ComplexPtr refine(const ComplexPtr& K);

// Small polyhedral targets used by the width/waist experiments.
ComplexPtr polygon_circle(int m);  // m-gon model of S^1
ComplexPtr tripod();               // cone over three unit directions in R^2
ComplexPtr cone_over_tetra_edges();  // cone 0 * (edges of the regular tetrahedron)

// Assembles a complex from vertices plus top simplices, generating the face
// closure and (for the torus) the given lifts.
ComplexPtr make_complex(int dim, ModelSpace space, std::vector<Vec> vertices,
                        std::vector<std::vector<int>> top_simplices,
                        std::vector<std::vector<Vec>> top_lifts = {},
                        std::vector<int> marked = {});

}  // namespace widthlab
