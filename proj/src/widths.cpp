#include "widthlab/widths.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace widthlab {

namespace {

Vec model_point(const ModelSpace& space, const Vec& p) {
  if (space.kind == SpaceKind::RoundSphere) return normalized(p);
  if (space.kind == SpaceKind::FlatTorus) return torus_wrap(p);
  return p;
}

std::vector<double> dirichlet_lambda(std::mt19937_64& rng, int k) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> l(k);
  double s = 0;
  for (double& x : l) s += (x = ex(rng) + 1e-6);
  for (double& x : l) x /= s;
  return l;
}

double max_edge_length(const SimplicialComplex& K) {
  double m = 0;
  if (K.simplices.size() > 1)
    for (const auto& e : K.simplices[1])
      m = std::max(m, distance(K.space, K.vertices[e[0]], K.vertices[e[1]]));
  return m;
}

double source_diameter_cap(const SimplicialComplex& K) {
  if (K.space.kind == SpaceKind::RoundSphere) return M_PI;
  return set_diameter(K.space, K.vertices);
}

// ---------------------------------------------------------------------------
// Exact path (Euclidean sources): vertices of equal-image polytopes.

struct PieceData {
  std::vector<Vec> src;     // source simplex coordinates
  std::vector<Vec> img;     // vertex images
  Vec img_center, src_center;
  double img_radius = 0, src_radius = 0;
};

std::vector<PieceData> piece_data(const PLMap& f) {
  const auto& K = *f.source;
  std::vector<PieceData> out(K.top().size());
  for (size_t t = 0; t < out.size(); ++t) {
    PieceData& d = out[t];
    d.src = K.top_coords(static_cast<int>(t));
    d.img = f.piece_images(static_cast<int>(t));
    Vec cs(d.src[0].size()), ci(d.img[0].size());
    for (const Vec& p : d.src) cs += p;
    for (const Vec& q : d.img) ci += q;
    cs *= 1.0 / d.src.size();
    ci *= 1.0 / d.img.size();
    d.src_center = cs;
    d.img_center = ci;
    for (const Vec& p : d.src) d.src_radius = std::max(d.src_radius, norm(p - cs));
    for (const Vec& q : d.img) d.img_radius = std::max(d.img_radius, norm(q - ci));
  }
  return out;
}

// Vertices of {E x = e, x >= 0} by active-set enumeration: for every free
// coordinate subset solve the restricted least squares and keep consistent
// nonnegative basic solutions. cols <= 8, rows <= 5 throughout.
template <typename Emit>
void polytope_vertices(int rows, int cols, const double* E, const double* e,
                       Emit&& emit) {
  std::array<double, 8> x{};
  std::array<double, 5 * 8> A{};
  std::array<double, 8> sol{};
  std::array<int, 8> idx{};
  for (unsigned mask = 1; mask < (1u << cols); ++mask) {
    int kf = __builtin_popcount(mask);
    if (kf < 1 || kf > rows) continue;
    int c = 0;
    for (int j = 0; j < cols; ++j)
      if (mask & (1u << j)) idx[c++] = j;
    for (int r = 0; r < rows; ++r)
      for (int j = 0; j < kf; ++j) A[r * kf + j] = E[r * cols + idx[j]];
    if (!solve_least_squares(rows, kf, A.data(), e, sol.data())) continue;
    bool ok = true;
    for (int j = 0; j < kf; ++j)
      if (sol[j] < -1e-9) ok = false;
    if (!ok) continue;
    // Consistency: the restricted system must actually hit e.
    for (int r = 0; r < rows && ok; ++r) {
      double s = 0;
      for (int j = 0; j < kf; ++j) s += E[r * cols + idx[j]] * sol[j];
      if (std::fabs(s - e[r]) > 1e-8) ok = false;
    }
    if (!ok) continue;
    x.fill(0.0);
    for (int j = 0; j < kf; ++j) x[idx[j]] = std::max(0.0, sol[j]);
    emit(x.data());
  }
}

struct ExactResult {
  double width = 0;
  Vec witness;
  long candidates = 0;
};

// Max of |p1 - p2| over pairs with equal images: per piece pair the feasible
// set {f1(l1) = f2(l2), sum l = 1, l >= 0} is a polytope and the convex
// objective peaks at one of its vertices.
ExactResult exact_width(const PLMap& f) {
  const auto pd = piece_data(f);
  const int T = static_cast<int>(pd.size());
  const int m = f.target_ambient();
  ExactResult best;
  best.witness = Vec(m);
  std::array<double, 5 * 8> E{};
  std::array<double, 5> e{};
  for (int t1 = 0; t1 < T; ++t1)
    for (int t2 = t1; t2 < T; ++t2) {
      const PieceData& a = pd[t1];
      const PieceData& b = pd[t2];
      if (norm(a.img_center - b.img_center) >
          a.img_radius + b.img_radius + 1e-9)
        continue;
      double reach = norm(a.src_center - b.src_center) + a.src_radius +
                     b.src_radius;
      if (reach <= best.width) continue;
      const int k1 = static_cast<int>(a.src.size());
      const int k2 = static_cast<int>(b.src.size());
      const int cols = k1 + k2, rows = m + 2;
      E.fill(0.0);
      for (int r = 0; r < m; ++r) {
        for (int j = 0; j < k1; ++j) E[r * cols + j] = a.img[j][r];
        for (int j = 0; j < k2; ++j) E[r * cols + k1 + j] = -b.img[j][r];
        e[r] = 0;
      }
      for (int j = 0; j < k1; ++j) E[m * cols + j] = 1;
      for (int j = 0; j < k2; ++j) E[(m + 1) * cols + k1 + j] = 1;
      e[m] = e[m + 1] = 1;
      polytope_vertices(rows, cols, E.data(), e.data(), [&](const double* x) {
        ++best.candidates;
        Vec p1(a.src[0].size()), p2(p1.size());
        for (int j = 0; j < k1; ++j) p1 += x[j] * a.src[j];
        for (int j = 0; j < k2; ++j) p2 += x[k1 + j] * b.src[j];
        double d = norm(p1 - p2);
        if (d > best.width) {
          best.width = d;
          Vec y(m);
          for (int j = 0; j < k1; ++j) y += x[j] * a.img[j];
          best.witness = y;
        }
      });
    }
  return best;
}

// Closed-fiber vertices over a fixed y, one piece at a time (the per-piece
// slices decouple, and the pairwise max is attained at slice vertices).
std::vector<Vec> exact_fiber_vertices(const PLMap& f, const Vec& y) {
  const auto pd = piece_data(f);
  const int m = f.target_ambient();
  std::vector<Vec> pts;
  std::array<double, 5 * 8> E{};
  std::array<double, 5> e{};
  for (const PieceData& a : pd) {
    if (norm(y - a.img_center) > a.img_radius + 1e-7) continue;
    const int k = static_cast<int>(a.src.size());
    const int rows = m + 1;
    E.fill(0.0);
    for (int r = 0; r < m; ++r) {
      for (int j = 0; j < k; ++j) E[r * k + j] = a.img[j][r];
      e[r] = y[r];
    }
    for (int j = 0; j < k; ++j) E[m * k + j] = 1;
    e[m] = 1;
    polytope_vertices(rows, k, E.data(), e.data(), [&](const double* x) {
      Vec p(a.src[0].size());
      for (int j = 0; j < k; ++j) p += x[j] * a.src[j];
      pts.push_back(p);
    });
  }
  return pts;
}

bool euclidean_source(const PLMap& f) {
  auto k = f.source->space.kind;
  return k == SpaceKind::Euclidean || k == SpaceKind::EuclideanBall;
}

bool all_degenerate(const PLMap& f) {
  for (auto d : f.degenerate_piece)
    if (!d) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sampled path (sphere / torus sources).

double generic_fiber_diameter(const PLMap& f, Vec y, std::mt19937_64& rng,
                              int* perturbations) {
  const ModelSpace& space = f.source->space;
  for (int attempt = 0; attempt < 60; ++attempt) {
    try {
      Fiber fib = fiber(f, y);
      std::vector<Vec> pts;
      for (const auto& wp : fib.points) pts.push_back(model_point(space, wp.point));
      for (const auto& c : fib.components)
        for (const Vec& p : c.points) pts.push_back(model_point(space, p));
      if (pts.empty()) return 0.0;
      return set_diameter(space, pts);
    } catch (const NonGenericTarget&) {
      if (perturbations) ++(*perturbations);
      std::normal_distribution<double> g;
      double s = 1e-9 * std::pow(10.0, attempt / 12.0);
      for (int i = 0; i < y.size(); ++i) y[i] += s * g(rng);
    }
  }
  throw NonGenericTarget("could not reach a regular value near the sample");
}

struct TargetSample {
  Vec y;
  int top = -1;                // containing target top simplex, if any
  std::vector<double> lambda;  // barycentric coords in that simplex
};

std::vector<TargetSample> stratified_targets(const PLMap& f, int samples,
                                             std::mt19937_64& rng) {
  std::vector<TargetSample> out;
  if (f.target_is_complex()) {
    const auto& T = *f.target_complex;
    int ntop = static_cast<int>(T.top().size());
    int per = std::max(1, samples / ntop);
    for (int t = 0; t < ntop; ++t) {
      auto coords = T.top_coords(t);
      for (int s = 0; s < per; ++s) {
        TargetSample ts;
        ts.top = t;
        ts.lambda = dirichlet_lambda(rng, static_cast<int>(coords.size()));
        Vec y(coords[0].size());
        for (size_t j = 0; j < coords.size(); ++j) y += ts.lambda[j] * coords[j];
        ts.y = y;
        out.push_back(std::move(ts));
      }
    }
  } else {
    std::uniform_int_distribution<int> pick(0,
        static_cast<int>(f.source->top().size()) - 1);
    for (int s = 0; s < samples; ++s) {
      TargetSample ts;
      int t = pick(rng);
      auto l = dirichlet_lambda(rng, f.source->dim + 1);
      ts.y = f.eval(t, l);
      out.push_back(std::move(ts));
    }
  }
  return out;
}

// Smallest nonzero singular value of the per-piece differential, from the
// generalized eigenproblem of the image vs source edge Gram matrices.
void jacobi_eig(int n, double* A, double* evals) {
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += A[i * n + j] * A[i * n + j];
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A[p * n + q];
        if (std::fabs(apq) < 1e-18) continue;
        double theta = (A[q * n + q] - A[p * n + p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A[k * n + p], akq = A[k * n + q];
          A[k * n + p] = c * akp - s * akq;
          A[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A[p * n + k], aqk = A[q * n + k];
          A[p * n + k] = c * apk - s * aqk;
          A[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  for (int i = 0; i < n; ++i) evals[i] = A[i * n + i];
}

double min_nonzero_singular(const PLMap& f) {
  const auto& K = *f.source;
  const int n = K.dim;
  double best = kInf;
  for (size_t t = 0; t < K.top().size(); ++t) {
    if (!f.degenerate_piece.empty() && f.degenerate_piece[t]) continue;
    auto src = K.top_coords(static_cast<int>(t));
    auto img = f.piece_images(static_cast<int>(t));
    double Gs[9] = {0}, Gf[9] = {0};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Gs[i * n + j] = dot(src[i + 1] - src[0], src[j + 1] - src[0]);
        Gf[i * n + j] = dot(img[i + 1] - img[0], img[j + 1] - img[0]);
      }
    // Generalized problem Gf x = s^2 Gs x via Cholesky of Gs.
    double L[9] = {0};
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j <= i; ++j) {
        double s = Gs[i * n + j];
        for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
        if (i == j) {
          if (s <= 1e-18) { ok = false; break; }
          L[i * n + i] = std::sqrt(s);
        } else {
          L[i * n + j] = s / L[j * n + j];
        }
      }
    }
    if (!ok) continue;
    // B = inv(L) Gf inv(L)^T by two triangular solves.
    double W[9];
    for (int col = 0; col < n; ++col)
      for (int i = 0; i < n; ++i) {
        double s = Gf[i * n + col];
        for (int k = 0; k < i; ++k) s -= L[i * n + k] * W[k * n + col];
        W[i * n + col] = s / L[i * n + i];
      }
    double B[9];
    for (int row = 0; row < n; ++row)
      for (int i = 0; i < n; ++i) {
        double s = W[row * n + i];
        for (int k = 0; k < i; ++k) s -= L[i * n + k] * B[row * n + k];
        B[row * n + i] = s / L[i * n + i];
      }
    double ev[3];
    jacobi_eig(n, B, ev);
    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, ev[i]);
    for (int i = 0; i < n; ++i)
      if (ev[i] > 1e-12 * std::max(1.0, scale))
        best = std::min(best, std::sqrt(ev[i]));
  }
  return best;
}

double sample_cover_radius(const PLMap& f, int samples) {
  if (f.target_is_complex()) {
    const auto& T = *f.target_complex;
    int ntop = static_cast<int>(T.top().size());
    int per = std::max(1, samples / ntop);
    double h = 0;
    for (int t = 0; t < ntop; ++t) {
      auto coords = T.top_coords(t);
      double d = 0;
      for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = i + 1; j < coords.size(); ++j)
          d = std::max(d, norm(coords[i] - coords[j]));
      h = std::max(h, d / std::max(1.0, std::pow(per, 1.0 / T.dim)));
    }
    return h;
  }
  Vec lo, hi;
  bool first = true;
  for (size_t t = 0; t < f.source->top().size(); ++t)
    for (const Vec& q : f.piece_images(static_cast<int>(t))) {
      if (first) { lo = hi = q; first = false; continue; }
      for (int i = 0; i < q.size(); ++i) {
        lo[i] = std::min(lo[i], q[i]);
        hi[i] = std::max(hi[i], q[i]);
      }
    }
  double diag = first ? 0.0 : norm(hi - lo);
  int m = f.target_ambient();
  return diag / std::max(1.0, std::pow(static_cast<double>(samples), 1.0 / m));
}

}  // namespace

double fiber_diameter(const PLMap& f, const Vec& y, int* perturbations,
                      std::uint64_t seed) {
  if (euclidean_source(f)) {
    auto pts = exact_fiber_vertices(f, y);
    double d = 0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        d = std::max(d, norm(pts[i] - pts[j]));
    return d;
  }
  std::mt19937_64 rng(seed);
  return generic_fiber_diameter(f, y, rng, perturbations);
}

WidthReport map_width(const PLMap& f, int samples, int refine_rounds,
                      std::uint64_t seed, bool parallel) {
  if (f.codim() < 0 || f.codim() > 1)
    throw WrongCodimension("map_width needs codimension 0 or 1");
  WidthReport rep;
  rep.map_id = f.id;
  rep.mesh_scale = max_edge_length(*f.source);

  if (euclidean_source(f)) {
    ExactResult ex = exact_width(f);
    rep.lower = rep.upper = ex.width;
    rep.witness_target = ex.witness;
    rep.samples = static_cast<int>(std::min<long>(ex.candidates, 1 << 30));
    rep.exact = true;
    return rep;
  }

  const ModelSpace& space = f.source->space;
  if (all_degenerate(f)) {
    // Constant-like map: the fiber over the (single) critical image is the
    // whole source.
    rep.lower = rep.upper = set_diameter(space, f.source->vertices);
    rep.witness_target = f.vertex_images[0];
    rep.exact = true;
    return rep;
  }

  std::mt19937_64 rng(seed);
  std::vector<TargetSample> targets = stratified_targets(f, samples, rng);
  struct Slot {
    double diam = -1;
    int perturbations = 0;
  };

  auto evaluate = [&](std::vector<TargetSample>& ts, std::vector<Slot>& slots,
                      std::uint64_t salt) {
    slots.assign(ts.size(), {});
    int count = static_cast<int>(ts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (int i = 0; i < count; ++i) {
      std::mt19937_64 local(seed ^ salt ^ (0x9e3779b97f4a7c15ull * (i + 1)));
      try {
        slots[i].diam =
            generic_fiber_diameter(f, ts[i].y, local, &slots[i].perturbations);
      } catch (const NonGenericTarget&) {
        slots[i].diam = -1;  // dropped sample, logged via perturbation count
      }
    }
  };

  double best = -1;
  TargetSample witness;
  std::vector<Slot> slots;
  auto fold = [&](const std::vector<TargetSample>& ts) {
    for (size_t i = 0; i < ts.size(); ++i) {
      rep.perturbations += slots[i].perturbations;
      if (slots[i].diam > best) {
        best = slots[i].diam;
        witness = ts[i];
      }
    }
    rep.samples += static_cast<int>(ts.size());
  };
  evaluate(targets, slots, 0);
  fold(targets);

  for (int round = 1; round <= refine_rounds && best >= 0; ++round) {
    std::vector<TargetSample> local;
    double shrink = std::pow(0.45, round);
    if (f.target_is_complex() && witness.top >= 0) {
      auto coords = f.target_complex->top_coords(witness.top);
      for (int s = 0; s < 300; ++s) {
        TargetSample ts;
        ts.top = witness.top;
        auto l = dirichlet_lambda(rng, static_cast<int>(coords.size()));
        ts.lambda.resize(l.size());
        for (size_t j = 0; j < l.size(); ++j)
          ts.lambda[j] = (1 - shrink) * witness.lambda[j] + shrink * l[j];
        Vec y(coords[0].size());
        for (size_t j = 0; j < coords.size(); ++j) y += ts.lambda[j] * coords[j];
        ts.y = y;
        local.push_back(std::move(ts));
      }
    } else {
      std::normal_distribution<double> g;
      double scale = 0.3 * shrink * sample_cover_radius(f, 1);
      for (int s = 0; s < 300; ++s) {
        TargetSample ts;
        ts.y = witness.y;
        for (int i = 0; i < ts.y.size(); ++i) ts.y[i] += scale * g(rng);
        local.push_back(std::move(ts));
      }
    }
    evaluate(local, slots, 0x5bd1e995u * round);
    fold(local);
  }

  rep.lower = std::max(0.0, best);
  // Recompute the witness fiber so the reported diameter is reproducible.
  if (best >= 0) {
    rep.lower = fiber_diameter(f, witness.y);
    rep.witness_target = witness.y;
  }
  double sigma = min_nonzero_singular(f);
  double slack = std::isfinite(sigma) && sigma > 0
                     ? 2.0 * sample_cover_radius(f, samples) / sigma
                     : kInf;
  rep.upper = std::min(rep.lower + slack, source_diameter_cap(*f.source));
  rep.upper = std::max(rep.upper, rep.lower);
  return rep;
}

PLMap shchepin_map(int n) {
  if (n < 2 || n > 3)
    throw UnsupportedDimension("shchepin_map supports n in {2, 3}");
  ComplexPtr K = simplex_ball(n, 0);
  ComplexPtr target = n == 2 ? tripod() : cone_over_tetra_edges();

  // Corner coordinates of the inscribed regular simplex.
  std::vector<Vec> corners;
  for (int v : K->marked_vertices) corners.push_back(K->vertices[v]);
  const int k = n + 1;

  // Orthogonal projection onto the simplex: best feasible face projection.
  auto project = [&](const Vec& p) {
    Vec best;
    double bestd = kInf;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      int kf = __builtin_popcount(mask);
      std::vector<int> idx;
      for (int j = 0; j < k; ++j)
        if (mask & (1u << j)) idx.push_back(j);
      // Foot of the perpendicular onto the affine hull of the face, in the
      // edge-vector parameterization (the barycentric sum is then exact).
      const Vec& c0 = corners[idx[0]];
      Vec q = c0;
      std::vector<double> x(kf, 0.0);
      x[0] = 1.0;
      if (kf > 1) {
        std::vector<double> A(n * (kf - 1)), b(n), t(kf - 1);
        for (int r = 0; r < n; ++r) {
          for (int j = 1; j < kf; ++j)
            A[r * (kf - 1) + (j - 1)] = corners[idx[j]][r] - c0[r];
          b[r] = p[r] - c0[r];
        }
        if (!solve_least_squares(n, kf - 1, A.data(), b.data(), t.data()))
          continue;
        for (int j = 1; j < kf; ++j) {
          x[j] = t[j - 1];
          x[0] -= t[j - 1];
          q += t[j - 1] * (corners[idx[j]] - c0);
        }
      }
      bool feas = true;
      for (double v : x)
        if (v < -1e-12) feas = false;
      if (!feas) continue;
      double d = norm(q - p);
      if (d < bestd) {
        bestd = d;
        best = q;
      }
    }
    return best;
  };

  // The skeleton-collapse g on the barycentric subdivision: faces of
  // dimension <= n-2 are fixed, higher-dimensional face barycenters go to
  // the cone point.
  auto collapse = [&](const Vec& q) {
    std::vector<double> beta(k), rhs(n + 1);
    std::vector<double> A((n + 1) * k);
    for (int r = 0; r < n; ++r) {
      for (int j = 0; j < k; ++j) A[r * k + j] = corners[j][r];
      rhs[r] = q[r];
    }
    for (int j = 0; j < k; ++j) A[n * k + j] = 1;
    rhs[n] = 1;
    solve_least_squares(n + 1, k, A.data(), rhs.data(), beta.data());
    std::vector<int> order(k);
    for (int j = 0; j < k; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return beta[a] > beta[b]; });
    Vec out(n);
    Vec partial(n);
    for (int j = 0; j < k; ++j) {
      partial += corners[order[j]];
      double next = j + 1 < k ? beta[order[j + 1]] : 0.0;
      double mu = (j + 1) * (beta[order[j]] - next);
      if (mu <= 0) continue;
      if (j + 1 <= n - 1) out += mu * (1.0 / (j + 1)) * partial;
      // faces of dimension >= n-1: barycenter collapses to the cone point
    }
    return out;
  };

  std::vector<Vec> images;
  images.reserve(K->vertices.size());
  for (const Vec& v : K->vertices) images.push_back(collapse(project(v)));
  PLMap f = make_pl_map(K, target, std::move(images));
  f.id = "shchepin:" + std::to_string(n);
  return f;
}

double bound_value(const ModelSpace& space, BoundKind kind) {
  switch (kind) {
    case BoundKind::Rho:
      return constants(space).rho;
    case BoundKind::Kappa:
      return constants(space).kappa;
    case BoundKind::SphereSimplex:
      if (space.kind != SpaceKind::RoundSphere)
        throw PreconditionViolated("sphere_simplex bound needs a round sphere");
      return std::acos(-1.0 / space.n);
  }
  throw MalformedInput("unknown bound kind");
}

std::vector<BoundRow> width_bound_harness(const ModelSpace& space,
                                          const std::vector<PLMap>& maps,
                                          BoundKind kind, double slack,
                                          int samples, std::uint64_t seed) {
  double bound = bound_value(space, kind);
  std::vector<BoundRow> rows;
  for (const PLMap& f : maps) {
    if (!(f.source->space == space))
      throw PreconditionViolated("map source does not match the harness space");
    WidthReport rep = map_width(f, samples, 3, seed);
    rows.push_back({f.id, rep.lower, bound, rep.lower >= bound - slack});
  }
  return rows;
}

HalfSphereVerdict half_sphere_test(std::span<const Vec> points) {
  Cap cap = smallest_enclosing_cap(points);
  HalfSphereVerdict v;
  v.cap_radius = cap.radius;
  v.boundary = std::fabs(cap.radius - M_PI / 2) <= 1e-9;
  v.inside = cap.radius < M_PI / 2 - 1e-9;
  if (v.inside) v.direction = cap.center;
  return v;
}

}  // namespace widthlab
