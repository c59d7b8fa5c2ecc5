#include "widthlab/plmaps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace widthlab {

namespace {

int matrix_rank(int rows, int cols, std::vector<double> A, double tol = 1e-10) {
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::fabs(A[r * cols + c]) > best) {
        best = std::fabs(A[r * cols + c]);
        piv = r;
      }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(A[rank * cols + j], A[piv * cols + j]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = A[r * cols + c] / A[rank * cols + c];
      for (int j = 0; j < cols; ++j) A[r * cols + j] -= f * A[rank * cols + j];
    }
    ++rank;
  }
  return rank;
}

// Distance from y to the convex hull of the points (via the min-norm point
// of the translated set). Used to decide whether a degenerate piece's image
// actually contains the query value.
double hull_distance(const std::vector<Vec>& pts, const Vec& y) {
  std::vector<Vec> shifted;
  shifted.reserve(pts.size());
  for (const auto& p : pts) shifted.push_back(p - y);
  return min_norm_point(shifted);
}

// Barycentric location of p in complex K. Sphere complexes are located by
// intersecting the ray through p with the piece's hull; torus pieces shift
// p to the lift containing the piece. Returns the top simplex index or -1.
int locate_in(const SimplicialComplex& K, const Vec& p,
              std::vector<double>* lambda_out, double tol) {
  const int k = K.dim;
  const int cols = k + 1;
  const bool radial = K.space.kind == SpaceKind::RoundSphere;
  int best_t = -1;
  double best_min_lambda = -kInf;
  std::vector<double> best_lambda;
  for (int t = 0; t < K.count(k); ++t) {
    auto X = K.top_coords(t);
    const int d = K.ambient_dim();
    Vec q = p;
    if (K.space.kind == SpaceKind::FlatTorus) {
      Vec bary(d);
      for (const auto& v : X) bary += v;
      bary *= 1.0 / static_cast<double>(X.size());
      for (int i = 0; i < d; ++i) q[i] += std::round(bary[i] - p[i]);
    }
    std::vector<double> lam;
    if (radial) {
      // Unknowns (lambda, r): sum lambda_i X_i = r q, sum lambda_i = 1.
      const int m = d + 1;
      if (m != cols + 1) return -1;
      std::vector<double> A(m * m, 0.0), b(m, 0.0);
      for (int r = 0; r < d; ++r) {
        for (int i = 0; i < cols; ++i) A[r * m + i] = X[i][r];
        A[r * m + cols] = -q[r];
        b[r] = 0;
      }
      for (int i = 0; i < cols; ++i) A[d * m + i] = 1;
      b[d] = 1;
      if (!solve_dense(m, A.data(), b.data())) continue;
      if (b[cols] <= 0) continue;  // wrong side of the origin
      lam.assign(b.begin(), b.begin() + cols);
    } else {
      const int rows = d + 1;
      std::vector<double> A(rows * cols), b(rows);
      for (int r = 0; r < d; ++r) {
        for (int i = 0; i < cols; ++i) A[r * cols + i] = X[i][r];
        b[r] = q[r];
      }
      for (int i = 0; i < cols; ++i) A[d * cols + i] = 1;
      b[d] = 1;
      std::vector<double> x(cols);
      if (rows == cols) {
        std::vector<double> Ac = A, bc = b;
        if (!solve_dense(cols, Ac.data(), bc.data())) continue;
        x = bc;
      } else {
        if (!solve_least_squares(rows, cols, A.data(), b.data(), x.data()))
          continue;
        // Residual: p must actually lie on the piece.
        double res = 0;
        for (int r = 0; r < rows; ++r) {
          double s = -b[r];
          for (int i = 0; i < cols; ++i) s += A[r * cols + i] * x[i];
          res += s * s;
        }
        if (std::sqrt(res) > tol) continue;
      }
      lam = x;
    }
    double mn = kInf;
    for (double l : lam) mn = std::min(mn, l);
    if (mn > best_min_lambda) {
      best_min_lambda = mn;
      best_t = t;
      best_lambda = lam;
    }
    if (mn >= -tol && best_min_lambda >= -tol) break;
  }
  if (best_t < 0 || best_min_lambda < -tol) return -1;
  if (lambda_out) *lambda_out = best_lambda;
  return best_t;
}

double segment_length(const ModelSpace& space, const Vec& a, const Vec& b) {
  switch (space.kind) {
    case SpaceKind::RoundSphere: {
      double c = dot(normalized(a), normalized(b));
      return std::acos(std::clamp(c, -1.0, 1.0));
    }
    case SpaceKind::FlatTorus:
      return norm(torus_delta(torus_wrap(a), torus_wrap(b)));
    default:
      return norm(a - b);
  }
}

}  // namespace

std::vector<Vec> PLMap::piece_images(int t) const {
  const auto& s = source->top()[t];
  std::vector<Vec> out;
  out.reserve(s.size());
  for (int v : s) out.push_back(vertex_images[v]);
  return out;
}

Vec PLMap::eval(int t, std::span<const double> lambda) const {
  auto Q = piece_images(t);
  Vec y(target_ambient());
  for (size_t i = 0; i < Q.size(); ++i) y += lambda[i] * Q[i];
  return y;
}

int PLMap::locate(const Vec& p, std::vector<double>* lambda, double tol) const {
  return locate_in(*source, p, lambda, tol);
}

Vec PLMap::eval_at(const Vec& p) const {
  std::vector<double> lam;
  int t = locate(p, &lam);
  if (t < 0) throw InvalidPoint("point is not on the source complex");
  return eval(t, lam);
}

namespace {

PLMap finish_map(PLMap f) {
  const auto& K = *f.source;
  if (f.vertex_images.size() != K.vertices.size())
    throw MalformedInput("need one image per source vertex");
  const int m = f.target_ambient();
  for (const auto& q : f.vertex_images)
    if (q.size() != m) throw MalformedInput("image has wrong ambient dimension");
  if (f.target_is_complex()) {
    const auto& T = *f.target_complex;
    const bool spherical = T.space.kind == SpaceKind::RoundSphere;
    for (size_t v = 0; v < f.vertex_images.size(); ++v) {
      const auto& q = f.vertex_images[v];
      // Sphere targets: the image must be a unit vector whose ray meets the
      // mesh (membership up to the chordal gap). Otherwise: on the polyhedron.
      if (spherical && std::fabs(norm(q) - 1.0) > 1e-6)
        throw InvalidImage("image of vertex " + std::to_string(v) +
                           " is not on the target sphere");
      if (locate_in(T, q, nullptr, 1e-6) < 0)
        throw InvalidImage("image of vertex " + std::to_string(v) +
                           " is not on the target polyhedron");
    }
  }
  const int k = K.dim;
  f.degenerate_piece.assign(K.count(k), 0);
  const int want = std::min(k + 1, f.target_dim() + 1);
  for (int t = 0; t < K.count(k); ++t) {
    auto Q = f.piece_images(t);
    std::vector<double> A((m + 1) * (k + 1));
    for (int r = 0; r < m; ++r)
      for (int i = 0; i <= k; ++i) A[r * (k + 1) + i] = Q[i][r];
    for (int i = 0; i <= k; ++i) A[m * (k + 1) + i] = 1;
    if (matrix_rank(m + 1, k + 1, A) < want) f.degenerate_piece[t] = 1;
    if (f.simplicial && f.target_is_complex()) {
      // Simplicial iff some single target piece's hull carries every image.
      bool found = false;
      const auto& T = *f.target_complex;
      for (int tt = 0; tt < T.count(T.dim) && !found; ++tt) {
        auto X = T.top_coords(tt);
        bool all = true;
        for (const auto& q : Q) {
          std::vector<Vec> shifted;
          for (const auto& x : X) shifted.push_back(x - q);
          if (min_norm_point(shifted) > 1e-8) {
            all = false;
            break;
          }
        }
        found = all;
      }
      if (!found) f.simplicial = false;
    }
  }
  return f;
}

}  // namespace

PLMap make_pl_map(ComplexPtr source, int euclidean_target_dim,
                  std::vector<Vec> vertex_images) {
  PLMap f;
  f.source = std::move(source);
  f.euclidean_target_dim = euclidean_target_dim;
  f.vertex_images = std::move(vertex_images);
  return finish_map(std::move(f));
}

PLMap make_pl_map(ComplexPtr source, ComplexPtr target,
                  std::vector<Vec> vertex_images) {
  PLMap f;
  f.source = std::move(source);
  f.target_complex = std::move(target);
  f.vertex_images = std::move(vertex_images);
  return finish_map(std::move(f));
}

namespace {

// Endpoint of a fiber segment, tagged with the facet it sits on so that
// segments from neighbouring pieces can be chained combinatorially.
struct SegmentEnd {
  std::vector<int> facet;          // sorted vertex tuple; empty = interior end
  std::vector<double> facet_bary;  // barycentric on the facet, sorted order
  Vec point;                       // source coordinates (lifted on the torus)
};

struct Segment {
  int piece;
  SegmentEnd end[2];
};

// Linear system for one piece: unknowns are the barycentric coordinates,
// plus a radial scale when the target is a sphere complex (so the fiber is
// taken through central projection and is independent of the chordal gap).
struct PieceSystem {
  int cols = 0;      // number of unknowns
  int nlam = 0;      // how many of them are barycentric coordinates
  int rows = 0;
  std::vector<double> A;  // rows x cols
  std::vector<double> b;
};

PieceSystem build_system(const PLMap& f, int t, const Vec& y) {
  auto Q = f.piece_images(t);
  const int m = f.target_ambient();
  const int k = f.source->dim;
  const bool radial = f.target_is_complex() &&
                      f.target_complex->space.kind == SpaceKind::RoundSphere;
  PieceSystem s;
  s.nlam = k + 1;
  s.cols = s.nlam + (radial ? 1 : 0);
  s.rows = m + 1;
  s.A.assign(s.rows * s.cols, 0.0);
  s.b.assign(s.rows, 0.0);
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < s.nlam; ++i) s.A[r * s.cols + i] = Q[i][r];
    if (radial)
      s.A[r * s.cols + s.nlam] = -y[r];
    else
      s.b[r] = y[r];
  }
  for (int i = 0; i < s.nlam; ++i) s.A[m * s.cols + i] = 1;
  s.b[m] = 1;
  return s;
}

void check_degenerate_hit(const PLMap& f, int t, const Vec& y, double tol) {
  auto Q = f.piece_images(t);
  if (f.target_is_complex() &&
      f.target_complex->space.kind == SpaceKind::RoundSphere) {
    for (auto& q : Q) q = normalized(q);
    if (hull_distance(Q, normalized(y)) <= tol)
      throw NonGenericTarget("target value meets a degenerate piece image");
    return;
  }
  if (hull_distance(Q, y) <= tol)
    throw NonGenericTarget("target value meets a degenerate piece image");
}

Vec source_point(const PLMap& f, int t, std::span<const double> lambda,
                 bool wrap) {
  auto X = f.source->top_coords(t);
  Vec p(f.source->ambient_dim());
  for (size_t i = 0; i < X.size(); ++i) p += lambda[i] * X[i];
  if (wrap && f.source->space.kind == SpaceKind::FlatTorus) p = torus_wrap(p);
  return p;
}

void fiber_codim0(const PLMap& f, const Vec& y, double tol, Fiber* out) {
  const int ntop = f.source->count(f.source->dim);
  for (int t = 0; t < ntop; ++t) {
    if (f.degenerate_piece[t]) {
      check_degenerate_hit(f, t, y, tol);
      continue;
    }
    PieceSystem s = build_system(f, t, y);
    std::vector<double> x(s.cols);
    bool ok;
    if (s.rows == s.cols) {
      std::vector<double> A = s.A, b = s.b;
      ok = solve_dense(s.cols, A.data(), b.data());
      x = b;
    } else {
      ok = solve_least_squares(s.rows, s.cols, s.A.data(), s.b.data(), x.data());
      if (ok) {
        double res = 0;
        for (int r = 0; r < s.rows; ++r) {
          double e = -s.b[r];
          for (int c = 0; c < s.cols; ++c) e += s.A[r * s.cols + c] * x[c];
          res += e * e;
        }
        ok = std::sqrt(res) <= tol;
      }
    }
    if (!ok) {
      check_degenerate_hit(f, t, y, tol);
      continue;
    }
    if (s.cols > s.nlam && x[s.nlam] <= tol) continue;  // behind the origin
    double mn = kInf;
    for (int i = 0; i < s.nlam; ++i) mn = std::min(mn, x[i]);
    if (mn < -tol) continue;
    if (mn <= tol)
      throw NonGenericTarget("target value on the image of a piece boundary");
    WeightedPoint wp;
    wp.lambda.assign(x.begin(), x.begin() + s.nlam);
    wp.point = source_point(f, t, wp.lambda, /*wrap=*/true);
    wp.weight = 1;
    wp.piece = t;
    out->points.push_back(std::move(wp));
  }
}

void fiber_codim1(const PLMap& f, const Vec& y, double tol, Fiber* out) {
  const auto& K = *f.source;
  const int ntop = K.count(K.dim);
  std::vector<Segment> segments;
  for (int t = 0; t < ntop; ++t) {
    if (f.degenerate_piece[t]) {
      check_degenerate_hit(f, t, y, tol);
      continue;
    }
    PieceSystem s = build_system(f, t, y);
    std::vector<double> w(s.cols);
    if (!nullspace_direction(s.rows, s.cols, s.A.data(), w.data())) {
      check_degenerate_hit(f, t, y, tol);
      continue;
    }
    // Particular solution: append the nullspace direction as an extra row to
    // make the stacked system full column rank.
    std::vector<double> B((s.rows + 1) * s.cols), rhs(s.rows + 1);
    std::copy(s.A.begin(), s.A.end(), B.begin());
    std::copy(s.b.begin(), s.b.end(), rhs.begin());
    for (int c = 0; c < s.cols; ++c) B[s.rows * s.cols + c] = w[c];
    rhs[s.rows] = 0;
    std::vector<double> x0(s.cols);
    if (!solve_least_squares(s.rows + 1, s.cols, B.data(), rhs.data(), x0.data()))
      continue;
    double res = 0;
    for (int r = 0; r < s.rows; ++r) {
      double e = -s.b[r];
      for (int c = 0; c < s.cols; ++c) e += s.A[r * s.cols + c] * x0[c];
      res += e * e;
    }
    if (std::sqrt(res) > tol) continue;  // y off this piece's image plane

    // Clip the solution line x0 + u w to lambda >= 0 (and positive radial
    // scale when present).
    double lo = -kInf, hi = kInf;
    int lo_idx = -1, hi_idx = -1;
    bool empty = false;
    for (int i = 0; i < s.cols; ++i) {
      const double floor_i = (i < s.nlam) ? 0.0 : tol;
      if (std::fabs(w[i]) < 1e-13) {
        if (x0[i] < floor_i - tol) {
          empty = true;
          break;
        }
        if (i < s.nlam && x0[i] < tol)
          throw NonGenericTarget("fiber runs inside a piece boundary");
        continue;
      }
      double bound = (floor_i - x0[i]) / w[i];
      if (w[i] > 0) {
        if (bound > lo) {
          lo = bound;
          lo_idx = i;
        }
      } else {
        if (bound < hi) {
          hi = bound;
          hi_idx = i;
        }
      }
    }
    if (empty || hi < lo - 1e-12) continue;
    if (hi - lo < 1e-11)
      throw NonGenericTarget("fiber touches a piece at a single point");
    if (lo_idx >= s.nlam || hi_idx >= s.nlam)
      throw NonGenericTarget("fiber segment clipped by the radial constraint");

    const auto& verts = K.top()[t];
    Segment seg;
    seg.piece = t;
    for (int e = 0; e < 2; ++e) {
      double u = e == 0 ? lo : hi;
      int drop = e == 0 ? lo_idx : hi_idx;
      std::vector<double> lam(s.nlam);
      for (int i = 0; i < s.nlam; ++i) lam[i] = x0[i] + u * w[i];
      // Two barycentric coordinates vanishing together means the fiber
      // passes through a ridge: not a generic value.
      int zeros = 0;
      for (int i = 0; i < s.nlam; ++i)
        if (lam[i] < 1e-9) ++zeros;
      if (drop < 0 || zeros > 1)
        throw NonGenericTarget("fiber passes through a ridge");
      lam[drop] = 0;
      SegmentEnd& end = seg.end[e];
      end.point = source_point(f, t, lam, /*wrap=*/false);
      std::vector<std::pair<int, double>> rest;
      for (int i = 0; i < s.nlam; ++i)
        if (i != drop) rest.push_back({verts[i], lam[i]});
      std::sort(rest.begin(), rest.end());
      for (auto& [v, l] : rest) {
        end.facet.push_back(v);
        end.facet_bary.push_back(l);
      }
    }
    if (seg.end[0].facet == seg.end[1].facet)
      throw NonGenericTarget("fiber segment lies along a facet");
    segments.push_back(std::move(seg));
  }

  // Match segment ends across shared facets and chain into components.
  struct EndRef {
    int seg;
    int side;
  };
  std::map<std::vector<int>, std::vector<EndRef>> by_facet;
  for (int i = 0; i < static_cast<int>(segments.size()); ++i)
    for (int e = 0; e < 2; ++e)
      by_facet[segments[i].end[e].facet].push_back({i, e});
  std::vector<std::array<int, 2>> link(segments.size(), {-1, -1});
  std::vector<std::array<int, 2>> link_side(segments.size(), {-1, -1});
  for (const auto& [facet, ends] : by_facet) {
    if (ends.size() == 1) continue;  // boundary facet: open end
    if (ends.size() != 2)
      throw NonGenericTarget("fiber meets a facet more than once");
    const auto& a = segments[ends[0].seg].end[ends[0].side];
    const auto& b = segments[ends[1].seg].end[ends[1].side];
    for (size_t i = 0; i < a.facet_bary.size(); ++i)
      if (std::fabs(a.facet_bary[i] - b.facet_bary[i]) > 1e-7)
        throw NonGenericTarget("mismatched fiber crossing on a shared facet");
    link[ends[0].seg][ends[0].side] = ends[1].seg;
    link_side[ends[0].seg][ends[0].side] = ends[1].side;
    link[ends[1].seg][ends[1].side] = ends[0].seg;
    link_side[ends[1].seg][ends[1].side] = ends[0].side;
  }

  const ModelSpace& space = K.space;
  std::vector<char> used(segments.size(), 0);
  auto walk = [&](int start, int start_side) {
    FiberComponent comp;
    int s = start, side = start_side;
    comp.points.push_back(segments[s].end[side].point);
    while (true) {
      used[s] = 1;
      int other = 1 - side;
      comp.points.push_back(segments[s].end[other].point);
      comp.length +=
          segment_length(space, segments[s].end[side].point,
                         segments[s].end[other].point);
      int next = link[s][other];
      if (next < 0) break;  // open end
      int next_side = link_side[s][other];
      if (next == start && next_side == start_side) {
        comp.closed = true;
        comp.points.pop_back();  // last point repeats the first
        break;
      }
      s = next;
      side = next_side;
    }
    if (space.kind == SpaceKind::FlatTorus)
      for (auto& p : comp.points) p = torus_wrap(p);
    out->components.push_back(std::move(comp));
  };
  // Open polylines first (they start at unmatched ends), then loops.
  for (int i = 0; i < static_cast<int>(segments.size()); ++i)
    for (int e = 0; e < 2; ++e)
      if (!used[i] && link[i][e] < 0) walk(i, e);
  for (int i = 0; i < static_cast<int>(segments.size()); ++i)
    if (!used[i]) walk(i, 0);
}

}  // namespace

Fiber fiber(const PLMap& f, const Vec& y, double tol) {
  const int cd = f.codim();
  if (cd != 0 && cd != 1)
    throw WrongCodimension("fiber supports codimension 0 and 1 only");
  if (y.size() != f.target_ambient())
    throw DimensionMismatch("target point has wrong ambient dimension");
  Fiber out;
  out.target_point = y;
  out.codim = cd;
  if (cd == 0)
    fiber_codim0(f, y, tol, &out);
  else
    fiber_codim1(f, y, tol, &out);
  return out;
}

Vec sample_regular_value(const PLMap& f, std::mt19937_64& rng,
                         int* perturbations) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Vec y(f.target_ambient());
    std::vector<double> lam;
    if (f.target_is_complex()) {
      const auto& T = *f.target_complex;
      int t = static_cast<int>(rng() % T.count(T.dim));
      lam.resize(T.dim + 1);
      double s = 0;
      for (auto& l : lam) {
        l = -std::log(std::max(uni(rng), 1e-300));
        s += l;
      }
      auto X = T.top_coords(t);
      for (size_t i = 0; i < lam.size(); ++i) y += (lam[i] / s) * X[i];
    } else {
      const auto& K = *f.source;
      int t = static_cast<int>(rng() % K.count(K.dim));
      lam.resize(K.dim + 1);
      double s = 0;
      for (auto& l : lam) {
        l = -std::log(std::max(uni(rng), 1e-300));
        s += l;
      }
      for (auto& l : lam) l /= s;
      y = f.eval(t, lam);
    }
    try {
      (void)fiber(f, y);
      return y;
    } catch (const NonGenericTarget&) {
      if (perturbations) ++*perturbations;
    }
  }
  throw NonGenericTarget("could not sample a regular target value");
}

Vec make_regular(const PLMap& f, Vec y, std::mt19937_64& rng, double scale,
                 int* perturbations) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      (void)fiber(f, y);
      return y;
    } catch (const NonGenericTarget&) {
      if (perturbations) ++*perturbations;
      for (int i = 0; i < y.size(); ++i) y[i] += scale * uni(rng);
    }
  }
  throw NonGenericTarget("could not perturb to a regular target value");
}

int mod2_degree(const PLMap& f, std::uint64_t seed) {
  if (f.codim() != 0)
    throw DimensionMismatch("mod-2 degree needs equal dimensions");
  if (!f.source->is_closed_manifold())
    throw NotClosedManifold("mod-2 degree needs a closed source");
  if (!f.target_is_complex() || !f.target_complex->is_closed_manifold())
    throw NotClosedManifold("mod-2 degree needs a closed polyhedral target");
  std::mt19937_64 rng(seed);
  int parity = -1;
  for (int s = 0; s < 7; ++s) {
    Vec y = sample_regular_value(f, rng);
    int p = fiber(f, y).total_weight() % 2;
    if (parity < 0)
      parity = p;
    else if (p != parity)
      throw NonGenericTarget("fiber parity disagrees between regular values");
  }
  return parity;
}

int multiplicity(const PLMap& f, int samples, std::uint64_t seed) {
  if (f.codim() != 0) throw WrongCodimension("multiplicity needs codimension 0");
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    Vec y = sample_regular_value(f, rng);
    best = std::max(best, fiber(f, y).total_weight());
  }
  return best;
}

FiberLengths fiber_length(const PLMap& f, const Vec& y, double tol) {
  if (f.codim() != 1) throw WrongCodimension("fiber_length needs codimension 1");
  Fiber fb = fiber(f, y, tol);
  FiberLengths out;
  for (const auto& c : fb.components) {
    out.per_component.push_back(c.length);
    out.total += c.length;
  }
  return out;
}

double source_distance(const PLMap& f, const Vec& a, const Vec& b) {
  const ModelSpace& sp = f.source->space;
  if (sp.kind == SpaceKind::RoundSphere)
    return distance(sp, normalized(a), normalized(b));
  if (sp.kind == SpaceKind::FlatTorus)
    return distance(sp, torus_wrap(a), torus_wrap(b));
  return norm(a - b);
}

}  // namespace widthlab
