#include "widthlab/builtin_maps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace widthlab {

namespace {

ComplexPtr standard_mesh(const ModelSpace& space, int level) {
  switch (space.kind) {
    case SpaceKind::RoundSphere:
      return cross_polytope_sphere(space.n, level);
    case SpaceKind::FlatTorus:
      return flat_torus(std::max(1, level));
    case SpaceKind::EuclideanBall:
      return simplex_ball(space.n, level);
    default:
      throw UnsupportedDimension("no standard mesh for this space");
  }
}

}  // namespace

AnalyticMap projection_map(const ModelSpace& source, int m) {
  if (m < 1 || m > source.ambient_dim())
    throw DimensionMismatch("projection needs 1 <= m <= ambient dim");
  AnalyticMap out;
  out.name = "projection";
  out.source = source;
  out.target_dim = m;
  out.fn = [m](const Vec& p) {
    Vec y(m);
    for (int i = 0; i < m; ++i) y[i] = p[i];
    return y;
  };
  return out;
}

AnalyticMap height_map(const ModelSpace& source) {
  AnalyticMap out;
  out.name = "height";
  out.source = source;
  out.target_dim = 1;
  int last = source.ambient_dim() - 1;
  out.fn = [last](const Vec& p) { return Vec{p[last]}; };
  return out;
}

namespace {

AnalyticMap random_map_impl(const ModelSpace& source, std::uint64_t seed,
                            int target_dim, const char* name) {
  AnalyticMap out;
  out.name = std::string(name) + ":" + std::to_string(seed);
  out.source = source;
  out.target_dim = target_dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  if (source.kind == SpaceKind::FlatTorus) {
    // Trigonometric polynomial in the two angles.
    const int kModes = 3;  // (1,0), (0,1), (1,1)
    static const int modes[kModes][2] = {{1, 0}, {0, 1}, {1, 1}};
    std::vector<std::array<double, 2 * kModes + 1>> coef(target_dim);
    for (auto& c : coef)
      for (auto& v : c) v = g(rng);
    out.fn = [coef, target_dim](const Vec& p) {
      Vec y(target_dim);
      for (int j = 0; j < target_dim; ++j) {
        double s = coef[j][0];
        for (int k = 0; k < kModes; ++k) {
          double ph = 2 * M_PI * (modes[k][0] * p[0] + modes[k][1] * p[1]);
          s += coef[j][1 + 2 * k] * std::cos(ph) +
               coef[j][2 + 2 * k] * std::sin(ph);
        }
        y[j] = s;
      }
      return y;
    };
    return out;
  }
  // Polynomial of degree <= 3 in the ambient coordinates.
  const int d = source.ambient_dim();
  std::vector<std::vector<double>> lin(target_dim, std::vector<double>(d));
  std::vector<std::vector<double>> quad(target_dim,
                                        std::vector<double>(d * d, 0.0));
  std::vector<std::vector<double>> cub(target_dim, std::vector<double>(d));
  for (int j = 0; j < target_dim; ++j) {
    for (int i = 0; i < d; ++i) lin[j][i] = g(rng);
    for (int i = 0; i < d; ++i)
      for (int k = i; k < d; ++k) quad[j][i * d + k] = 0.6 * g(rng);
    for (int i = 0; i < d; ++i) cub[j][i] = 0.3 * g(rng);
  }
  out.fn = [lin, quad, cub, target_dim, d](const Vec& p) {
    Vec y(target_dim);
    for (int j = 0; j < target_dim; ++j) {
      double s = 0;
      for (int i = 0; i < d; ++i)
        s += lin[j][i] * p[i] + cub[j][i] * p[i] * p[i] * p[i];
      for (int i = 0; i < d; ++i)
        for (int k = i; k < d; ++k) s += quad[j][i * d + k] * p[i] * p[k];
      y[j] = s;
    }
    return y;
  };
  return out;
}

}  // namespace

AnalyticMap random_smooth_map(const ModelSpace& source, std::uint64_t seed) {
  return random_map_impl(source, seed, source.n, "poly");
}

AnalyticMap random_smooth_function(const ModelSpace& source, std::uint64_t seed) {
  return random_map_impl(source, seed, 1, "fun");
}

PLMap discretize(const AnalyticMap& map, int mesh_level) {
  auto K = standard_mesh(map.source, mesh_level);
  std::vector<Vec> im;
  im.reserve(K->vertices.size());
  for (const auto& v : K->vertices) im.push_back(map.fn(v));
  PLMap f = make_pl_map(K, map.target_dim, std::move(im));
  f.id = map.name + "@" + std::to_string(mesh_level);
  return f;
}

PLMap pl_wrap_map(int m, int degree) {
  if (m < 3 || degree < 1) throw PreconditionViolated("wrap needs m >= 3, d >= 1");
  auto T = polygon_circle(m);
  auto S = polygon_circle(m * degree);
  std::vector<Vec> im;
  for (int k = 0; k < S->count(0); ++k) im.push_back(T->vertices[k % m]);
  PLMap f = make_pl_map(S, T, std::move(im));
  f.id = "wrap" + std::to_string(degree) + ":" + std::to_string(m);
  return f;
}

PLMap pl_two_hump_wrap(int m, int h1, int h2) {
  if (h1 >= m || h2 >= m || h1 < 1 || h2 < 1)
    throw PreconditionViolated("hump heights must be in [1, m)");
  auto T = polygon_circle(m);
  auto S = polygon_circle(2 * (h1 + h2));
  std::vector<Vec> im;
  int pos = 0;
  auto run = [&](int step, int count) {
    for (int i = 0; i < count; ++i) {
      im.push_back(T->vertices[((pos % m) + m) % m]);
      pos += step;
    }
  };
  run(+1, h1);
  run(-1, h1);
  run(+1, h2);
  run(-1, h2);
  PLMap f = make_pl_map(S, T, std::move(im));
  f.id = "two-hump:" + std::to_string(h1) + "," + std::to_string(h2);
  return f;
}

PLMap pl_fold_s2(int level) {
  auto K = cross_polytope_sphere(2, level);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) im.push_back({v[0], v[1], std::fabs(v[2])});
  PLMap f = make_pl_map(K, K, std::move(im));
  f.id = "fold-z@" + std::to_string(level);
  return f;
}

PLMap pl_random_even_walk(int m, int degree, std::uint64_t seed) {
  if (degree % 2 != 0 || degree < 0)
    throw PreconditionViolated("walk degree must be even and >= 0");
  const int length = std::max(4 * m, (degree + 2) * m);
  const int ups = (length + degree * m) / 2;
  std::vector<int> steps(length, -1);
  for (int i = 0; i < ups; ++i) steps[i] = +1;
  std::mt19937_64 rng(seed);
  std::shuffle(steps.begin(), steps.end(), rng);
  auto T = polygon_circle(m);
  auto S = polygon_circle(length);
  std::vector<Vec> im;
  int pos = 0;
  for (int k = 0; k < length; ++k) {
    im.push_back(T->vertices[((pos % m) + m) % m]);
    pos += steps[k];
  }
  PLMap f = make_pl_map(S, T, std::move(im));
  f.id = "walk" + std::to_string(degree) + ":" + std::to_string(seed);
  return f;
}

PLMap pl_random_tripod_map(int level, std::uint64_t seed) {
  // The refined octahedron mesh never straddles the coordinate meridian
  // planes x=0 and y=0, which cut the sphere into four lunes. Each lune is
  // sent onto a single tripod leg (leg 0 serves two lunes), with magnitude
  // |xy| * q(z) vanishing exactly on the lune boundaries, so every piece
  // maps into one leg's line through the origin.
  auto K = cross_polytope_sphere(2, level);
  auto T = tripod();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 1.3);
  double c0 = u(rng), c1 = u(rng);
  std::vector<Vec> im;
  for (const auto& v : K->vertices) {
    double phi = std::fabs(v[0] * v[1]) * (c0 + c1 * v[2] * v[2]) / 2.7;
    int lune = (v[0] >= 0 ? 0 : 1) + (v[1] >= 0 ? 0 : 2);
    int leg = lune % 3;
    // Tripod vertex 0 is the cone point; legs point at vertices 1..3.
    im.push_back(phi * T->vertices[1 + leg]);
  }
  PLMap f = make_pl_map(K, T, std::move(im));
  f.id = "tripod:" + std::to_string(seed) + "@" + std::to_string(level);
  return f;
}

AnalyticMap parse_analytic(const std::string& spec, const ModelSpace& source) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::uint64_t seed = 1;
  if (colon != std::string::npos) seed = std::stoull(spec.substr(colon + 1));
  if (head == "projection") return projection_map(source, source.n);
  if (head == "height") return height_map(source);
  if (head == "poly" || head == "trig") return random_smooth_map(source, seed);
  if (head == "fun") return random_smooth_function(source, seed);
  throw MalformedInput("unknown map family: " + spec);
}

}  // namespace widthlab
