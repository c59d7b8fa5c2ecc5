#include "widthlab/complexes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace widthlab {

namespace {

std::vector<Vec> regular_simplex_corners(int n) {
  // Circumradius-1 regular n-simplex centered at the origin.
  if (n == 2) {
    double s = std::sqrt(3.0) / 2;
    return {{0.0, 1.0}, {-s, -0.5}, {s, -0.5}};
  }
  double r = 1.0 / std::sqrt(3.0);
  return {{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};
}

}  // namespace

std::vector<Vec> SimplicialComplex::top_coords(int t) const {
  if (!top_lifts.empty()) return top_lifts[t];
  const auto& s = simplices[dim][t];
  std::vector<Vec> out;
  out.reserve(s.size());
  for (int v : s) out.push_back(vertices[v]);
  return out;
}

int SimplicialComplex::euler_characteristic() const {
  int chi = 0;
  for (int k = 0; k <= dim; ++k) chi += (k % 2 ? -1 : 1) * count(k);
  return chi;
}

std::map<std::vector<int>, std::vector<int>> SimplicialComplex::facet_incidence()
    const {
  std::map<std::vector<int>, std::vector<int>> inc;
  for (size_t t = 0; t < simplices[dim].size(); ++t) {
    const auto& s = simplices[dim][t];
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> facet;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != drop) facet.push_back(s[i]);
      inc[facet].push_back(static_cast<int>(t));
    }
  }
  return inc;
}

bool SimplicialComplex::is_closed_manifold() const {
  if (dim == 0) return false;
  for (const auto& [facet, tops] : facet_incidence())
    if (tops.size() != 2) return false;
  return true;
}

std::vector<int> SimplicialComplex::antipodal_vertex_map() const {
  std::vector<int> anti(vertices.size(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    for (size_t j = 0; j < vertices.size(); ++j)
      if (norm(vertices[i] + vertices[j]) < 1e-9) {
        anti[i] = static_cast<int>(j);
        break;
      }
    if (anti[i] < 0)
      throw Error("complex is not antipodally symmetric at vertex " +
                  std::to_string(i));
  }
  return anti;
}

void SimplicialComplex::validate() const {
  if (static_cast<int>(simplices.size()) != dim + 1)
    throw MalformedInput("simplex table does not match dimension");
  std::set<std::vector<int>> listed;
  for (int k = 0; k <= dim; ++k)
    for (const auto& s : simplices[k]) {
      if (static_cast<int>(s.size()) != k + 1 ||
          !std::is_sorted(s.begin(), s.end()) ||
          std::adjacent_find(s.begin(), s.end()) != s.end())
        throw MalformedInput("simplex is not a sorted tuple of distinct vertices");
      for (int v : s)
        if (v < 0 || v >= static_cast<int>(vertices.size()))
          throw MalformedInput("simplex references a missing vertex");
      listed.insert(s);
    }
  for (int k = 1; k <= dim; ++k)
    for (const auto& s : simplices[k])
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        if (!listed.count(face)) throw MalformedInput("face closure violated");
      }
  if (space.kind == SpaceKind::RoundSphere)
    for (const auto& v : vertices)
      if (std::fabs(norm(v) - 1.0) > 1e-12)
        throw MalformedInput("sphere mesh vertex off the unit sphere");
  // Nondegeneracy of top simplices.
  for (size_t t = 0; t < simplices[dim].size(); ++t) {
    auto coords = top_coords(static_cast<int>(t));
    int k = static_cast<int>(coords.size()) - 1;
    // Gram determinant of the edge vectors.
    double G[16];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        G[i * k + j] = dot(coords[i + 1] - coords[0], coords[j + 1] - coords[0]);
    double det = 1.0;
    double rhs[4] = {0, 0, 0, 0};
    // Reuse the dense solver's elimination by computing det via LU.
    for (int col = 0; col < k; ++col) {
      int piv = col;
      for (int r = col + 1; r < k; ++r)
        if (std::fabs(G[r * k + col]) > std::fabs(G[piv * k + col])) piv = r;
      if (piv != col) {
        for (int c = 0; c < k; ++c) std::swap(G[col * k + c], G[piv * k + c]);
        det = -det;
      }
      det *= G[col * k + col];
      if (G[col * k + col] == 0) break;
      for (int r = col + 1; r < k; ++r) {
        double f = G[r * k + col] / G[col * k + col];
        for (int c = col; c < k; ++c) G[r * k + c] -= f * G[col * k + c];
      }
    }
    (void)rhs;
    if (std::fabs(det) < 1e-18)
      throw MalformedInput("degenerate top simplex " + std::to_string(t));
  }
}

Mod2Chain boundary_mod2(const Mod2Chain& chain) {
  const auto& K = *chain.complex;
  Mod2Chain out{chain.complex, chain.dim - 1, {}};
  if (chain.dim == 0) return out;
  out.coefficients.assign(K.count(chain.dim - 1), 0);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < K.count(chain.dim - 1); ++i)
    index[K.simplices[chain.dim - 1][i]] = i;
  for (int t = 0; t < K.count(chain.dim); ++t) {
    if (!chain.coefficients[t]) continue;
    const auto& s = K.simplices[chain.dim][t];
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> facet;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != drop) facet.push_back(s[i]);
      out.coefficients[index.at(facet)] ^= 1;
    }
  }
  return out;
}

bool is_zero(const Mod2Chain& chain) {
  return std::all_of(chain.coefficients.begin(), chain.coefficients.end(),
                     [](std::uint8_t c) { return c == 0; });
}

ComplexPtr make_complex(int dim, ModelSpace space, std::vector<Vec> vertices,
                        std::vector<std::vector<int>> top_simplices,
                        std::vector<std::vector<Vec>> top_lifts,
                        std::vector<int> marked) {
  auto K = std::make_shared<SimplicialComplex>();
  K->dim = dim;
  K->space = space;
  K->vertices = std::move(vertices);
  K->marked_vertices = std::move(marked);

  // Sort each top tuple, permuting lifts in step.
  for (size_t t = 0; t < top_simplices.size(); ++t) {
    auto& s = top_simplices[t];
    std::vector<int> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return s[a] < s[b]; });
    std::vector<int> sorted(s.size());
    for (size_t i = 0; i < s.size(); ++i) sorted[i] = s[order[i]];
    if (!top_lifts.empty()) {
      std::vector<Vec> lift(s.size());
      for (size_t i = 0; i < s.size(); ++i) lift[i] = top_lifts[t][order[i]];
      top_lifts[t] = std::move(lift);
    }
    s = std::move(sorted);
  }
  K->top_lifts = std::move(top_lifts);

  K->simplices.assign(dim + 1, {});
  std::set<std::vector<int>> faces;
  for (const auto& s : top_simplices) {
    for (unsigned mask = 1; mask < (1u << s.size()); ++mask) {
      std::vector<int> face;
      for (size_t i = 0; i < s.size(); ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      faces.insert(face);
    }
  }
  for (const auto& f : faces)
    if (static_cast<int>(f.size()) <= dim)
      K->simplices[f.size() - 1].push_back(f);
  K->simplices[dim] = std::move(top_simplices);
  return K;
}

// ---------------------------------------------------------------------------
// Refinement

namespace {

struct MidpointCache {
  std::map<std::pair<int, int>, int> cache;
  std::vector<Vec>* vertices;
  bool project;

  int midpoint(int a, int b) {
    auto key = std::minmax(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Vec m = 0.5 * ((*vertices)[a] + (*vertices)[b]);
    if (project) m = normalized(m);
    vertices->push_back(m);
    int id = static_cast<int>(vertices->size()) - 1;
    cache[key] = id;
    return id;
  }
};

// Negation-invariant key for diagonal tie-breaking.
std::vector<double> abs_key(const Vec& v) {
  std::vector<double> k;
  for (int i = 0; i < v.size(); ++i) k.push_back(std::fabs(v[i]));
  return k;
}

}  // namespace

ComplexPtr refine(const ComplexPtr& Kp) {
  const auto& K = *Kp;
  if (K.space.kind == SpaceKind::FlatTorus)
    throw UnsupportedDimension(
        "torus meshes are refined by construction; use flat_torus(s)");
  std::vector<Vec> verts = K.vertices;
  MidpointCache mids{{}, &verts, K.space.kind == SpaceKind::RoundSphere};
  std::vector<std::vector<int>> tops;

  for (const auto& s : K.top()) {
    if (K.dim == 1) {
      int m = mids.midpoint(s[0], s[1]);
      tops.push_back({s[0], m});
      tops.push_back({m, s[1]});
    } else if (K.dim == 2) {
      int m01 = mids.midpoint(s[0], s[1]);
      int m02 = mids.midpoint(s[0], s[2]);
      int m12 = mids.midpoint(s[1], s[2]);
      tops.push_back({s[0], m01, m02});
      tops.push_back({s[1], m01, m12});
      tops.push_back({s[2], m02, m12});
      tops.push_back({m01, m02, m12});
    } else if (K.dim == 3) {
      int m01 = mids.midpoint(s[0], s[1]);
      int m02 = mids.midpoint(s[0], s[2]);
      int m03 = mids.midpoint(s[0], s[3]);
      int m12 = mids.midpoint(s[1], s[2]);
      int m13 = mids.midpoint(s[1], s[3]);
      int m23 = mids.midpoint(s[2], s[3]);
      tops.push_back({s[0], m01, m02, m03});
      tops.push_back({s[1], m01, m12, m13});
      tops.push_back({s[2], m02, m12, m23});
      tops.push_back({s[3], m03, m13, m23});
      // Central octahedron: pick the diagonal by (length, negation-invariant
      // key) so that antipodally symmetric meshes stay symmetric.
      std::array<std::pair<int, int>, 3> diag = {
          std::make_pair(m01, m23), std::make_pair(m02, m13),
          std::make_pair(m03, m12)};
      auto diag_rank = [&](const std::pair<int, int>& d) {
        double len = norm(verts[d.first] - verts[d.second]);
        auto ka = abs_key(verts[d.first]);
        auto kb = abs_key(verts[d.second]);
        if (kb < ka) std::swap(ka, kb);
        return std::make_tuple(len, ka, kb);
      };
      int pick = 0;
      for (int i = 1; i < 3; ++i)
        if (diag_rank(diag[i]) < diag_rank(diag[pick])) pick = i;
      auto [da, db] = diag[pick];
      std::array<int, 4> ring{};
      if (pick == 0) ring = {m02, m03, m13, m12};
      if (pick == 1) ring = {m01, m03, m23, m12};
      if (pick == 2) ring = {m01, m02, m23, m13};
      for (int i = 0; i < 4; ++i)
        tops.push_back({da, db, ring[i], ring[(i + 1) % 4]});
    } else {
      throw UnsupportedDimension("refinement supports dim <= 3");
    }
  }
  return make_complex(K.dim, K.space, std::move(verts), std::move(tops), {},
                      K.marked_vertices);
}

// ---------------------------------------------------------------------------
// Builders

ComplexPtr cross_polytope_sphere(int n, int subdivisions) {
  if (n < 1 || n > 3)
    throw UnsupportedDimension("cross_polytope_sphere supports 1 <= n <= 3");
  if (subdivisions < 0) throw PreconditionViolated("subdivisions must be >= 0");
  int d = n + 1;
  std::vector<Vec> verts;
  for (int i = 0; i < d; ++i)
    for (int sgn : {+1, -1}) {
      Vec v(d);
      v[i] = sgn;
      verts.push_back(v);
    }
  // vertex 2i = +e_i, 2i+1 = -e_i
  std::vector<std::vector<int>> tops;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < d; ++i) s.push_back(2 * i + ((mask >> i) & 1));
    tops.push_back(s);
  }
  ComplexPtr K = make_complex(n, ModelSpace::sphere(n), std::move(verts),
                              std::move(tops));
  for (int r = 0; r < subdivisions; ++r) K = refine(K);
  return K;
}

ComplexPtr flat_torus(int subdivisions) {
  if (subdivisions < 1) throw PreconditionViolated("subdivisions must be >= 1");
  int m = 2 << subdivisions;  // 4, 8, 16, ...
  auto idx = [m](int i, int j) { return (i % m) * m + (j % m); };
  std::vector<Vec> verts;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      verts.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m});
  std::vector<std::vector<int>> tops;
  std::vector<std::vector<Vec>> lifts;
  auto lift = [m](int i, int j) {
    return Vec{static_cast<double>(i) / m, static_cast<double>(j) / m};
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      tops.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
      lifts.push_back({lift(i, j), lift(i + 1, j), lift(i + 1, j + 1)});
      tops.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
      lifts.push_back({lift(i, j), lift(i + 1, j + 1), lift(i, j + 1)});
    }
  return make_complex(2, ModelSpace::torus(), std::move(verts), std::move(tops),
                      std::move(lifts));
}

ComplexPtr simplex_ball(int n, int subdivisions) {
  if (n < 2 || n > 3)
    throw UnsupportedDimension("simplex_ball supports n in {2, 3}");
  std::vector<Vec> corners = regular_simplex_corners(n);

  std::vector<Vec> verts;
  std::vector<std::vector<int>> tops;
  auto add_vertex = [&](const Vec& v) {
    verts.push_back(v);
    return static_cast<int>(verts.size()) - 1;
  };

  if (n == 2) {
    int A = add_vertex(corners[0]), B = add_vertex(corners[1]),
        C = add_vertex(corners[2]);
    int O = add_vertex(Vec{0.0, 0.0});
    std::array<std::array<int, 2>, 3> edges = {{{A, B}, {B, C}, {C, A}}};
    std::array<int, 3> opposite = {C, A, B};
    for (int e = 0; e < 3; ++e) {
      auto [x, y] = std::pair(edges[e][0], edges[e][1]);
      int M = add_vertex(0.5 * (verts[x] + verts[y]));
      int P = add_vertex(-verts[opposite[e]]);  // radial image of the midpoint
      tops.push_back({x, M, O});
      tops.push_back({M, y, O});
      tops.push_back({x, M, P});
      tops.push_back({M, y, P});
    }
    ComplexPtr K = make_complex(2, ModelSpace::ball(2), std::move(verts),
                                std::move(tops), {}, {A, B, C});
    for (int r = 0; r < subdivisions; ++r) K = refine(K);
    return K;
  }

  // n == 3: barycentric subdivision of the inscribed tetrahedron, plus an
  // exactly crease-aligned shell out to the sphere (face prisms and edge
  // wedges; the corner cones are empty because the corners lie on the sphere).
  std::array<int, 4> cid{};
  for (int i = 0; i < 4; ++i) cid[i] = add_vertex(corners[i]);
  int O = add_vertex(Vec{0.0, 0.0, 0.0});

  std::map<std::pair<int, int>, int> edge_mid, edge_mid_hat;
  auto mid_of = [&](int i, int j) {
    auto key = std::minmax(i, j);
    auto it = edge_mid.find(key);
    if (it != edge_mid.end()) return it->second;
    int id = add_vertex(0.5 * (corners[i] + corners[j]));
    edge_mid[key] = id;
    return id;
  };
  auto mid_hat_of = [&](int i, int j) {
    auto key = std::minmax(i, j);
    auto it = edge_mid_hat.find(key);
    if (it != edge_mid_hat.end()) return it->second;
    int id = add_vertex(normalized(0.5 * (corners[i] + corners[j])));
    edge_mid_hat[key] = id;
    return id;
  };

  std::array<int, 4> face_bary{}, face_apex{};
  std::map<std::pair<int, int>, int> lateral;  // (face, edge-slot) -> w vertex
  // Face f is the one opposite corner f.
  for (int f = 0; f < 4; ++f) {
    Vec b(3);
    for (int i = 0; i < 4; ++i)
      if (i != f) b += corners[i];
    b *= 1.0 / 3.0;
    face_bary[f] = add_vertex(b);
    face_apex[f] = add_vertex(-corners[f]);  // radial image of the barycenter
  }
  auto lateral_of = [&](int f, int i, int j) {
    // Unit point above the midpoint of edge (i,j) in the normal direction of
    // face f (the face opposite corner f).
    int eslot = std::min(i, j) * 4 + std::max(i, j);
    auto key = std::make_pair(f, eslot);
    auto it = lateral.find(key);
    if (it != lateral.end()) return it->second;
    Vec nhat = -corners[f];
    Vec M = 0.5 * (corners[i] + corners[j]);
    double mn = dot(M, nhat);
    double t = -mn + std::sqrt(mn * mn + 1.0 - norm2(M));
    int id = add_vertex(M + t * nhat);
    lateral[key] = id;
    return id;
  };

  for (int f = 0; f < 4; ++f) {
    std::array<int, 3> fc{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != f) fc[k++] = i;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int i = fc[a], j = fc[b];
        int M = mid_of(i, j);
        int bF = face_bary[f];
        // Interior barycentric tets.
        tops.push_back({cid[i], M, bF, O});
        tops.push_back({cid[j], M, bF, O});
        // Face prism above the two base sub-triangles.
        int aF = face_apex[f];
        int w = lateral_of(f, i, j);
        tops.push_back({cid[i], M, bF, aF});
        tops.push_back({cid[i], M, aF, w});
        tops.push_back({cid[j], M, bF, aF});
        tops.push_back({cid[j], M, aF, w});
      }
  }
  // Edge wedges.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int M = mid_of(i, j);
      int Mh = mid_hat_of(i, j);
      std::vector<int> other;
      for (int f = 0; f < 4; ++f)
        if (f != i && f != j) other.push_back(f);
      int w1 = lateral_of(other[0], i, j), w2 = lateral_of(other[1], i, j);
      tops.push_back({cid[i], M, w1, Mh});
      tops.push_back({cid[i], M, w2, Mh});
      tops.push_back({cid[j], M, w1, Mh});
      tops.push_back({cid[j], M, w2, Mh});
    }

  ComplexPtr K = make_complex(3, ModelSpace::ball(3), std::move(verts),
                              std::move(tops), {},
                              {cid[0], cid[1], cid[2], cid[3]});
  for (int r = 0; r < subdivisions; ++r) K = refine(K);
  return K;
}

Mod2Chain fundamental_cycle_mod2(const ComplexPtr& K) {
  if (!K->is_closed_manifold())
    throw NotClosedManifold("complex is not a closed manifold");
  Mod2Chain c{K, K->dim, {}};
  c.coefficients.assign(K->count(K->dim), 1);
  return c;
}

ComplexPtr polygon_circle(int m) {
  if (m < 3) throw PreconditionViolated("polygon needs at least 3 vertices");
  std::vector<Vec> verts;
  for (int k = 0; k < m; ++k) {
    double th = 2 * M_PI * k / m;
    verts.push_back({std::cos(th), std::sin(th)});
  }
  std::vector<std::vector<int>> tops;
  for (int k = 0; k < m; ++k) tops.push_back({k, (k + 1) % m});
  return make_complex(1, ModelSpace::sphere(1), std::move(verts),
                      std::move(tops));
}

ComplexPtr tripod() {
  std::vector<Vec> verts = {{0.0, 0.0}};
  for (const Vec& c : regular_simplex_corners(2)) verts.push_back(c);
  std::vector<std::vector<int>> tops = {{0, 1}, {0, 2}, {0, 3}};
  return make_complex(1, ModelSpace::euclidean(2), std::move(verts),
                      std::move(tops));
}

ComplexPtr cone_over_tetra_edges() {
  std::vector<Vec> verts = {{0.0, 0.0, 0.0}};
  for (const Vec& c : regular_simplex_corners(3)) verts.push_back(c);
  std::vector<std::vector<int>> tops;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) tops.push_back({0, i, j});
  return make_complex(2, ModelSpace::euclidean(3), std::move(verts),
                      std::move(tops));
}

}  // namespace widthlab
