#include "widthlab/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace widthlab {

namespace {

// Orthonormal basis of the tangent space at a unit vector x, deterministic.
std::vector<Vec> tangent_basis(const Vec& x) {
  const int d = x.size();
  std::vector<Vec> basis;
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d - 1; ++i) {
    Vec e(d);
    e[i] = 1;
    Vec w = e - dot(e, x) * x;
    for (const auto& b : basis) w -= dot(w, b) * b;
    if (norm(w) > 1e-6) basis.push_back(normalized(w));
  }
  return basis;
}

Vec random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vec v(d);
  do {
    for (int i = 0; i < d; ++i) v[i] = g(rng);
  } while (norm(v) < 1e-6);
  return normalized(v);
}

struct Best {
  double residual = kInf;
  Vec x, y;
  bool better(double r, const Vec& cx, const Vec& old_x) const {
    if (r < residual - 1e-15) return true;
    if (r > residual + 1e-15) return false;
    return lex_less(cx, old_x);
  }
};

}  // namespace

CoincidencePair borsuk_ulam_pair(const AnalyticMap& f, double tol, long budget,
                                 std::uint64_t seed) {
  if (f.source.kind != SpaceKind::RoundSphere || f.source.n < 1 ||
      f.source.n > 3)
    throw UnsupportedDimension("antipodal search needs S^n, n in 1..3");
  if (f.target_dim != f.source.n)
    throw DimensionMismatch("Borsuk-Ulam needs target dimension n");
  const int n = f.source.n;
  const int d = n + 1;
  long evals = 0;
  auto g = [&](const Vec& x) {
    evals += 2;
    return f.fn(x) - f.fn(-x);
  };
  auto res_norm = [](const Vec& r) { return norm_inf(r); };

  std::mt19937_64 rng(seed);
  Best best;
  const int kStarts = 64;
  for (int s = 0; s < kStarts && evals < budget; ++s) {
    Vec x = random_unit(rng, d);
    Vec r = g(x);
    double rn = res_norm(r);
    for (int iter = 0; iter < 60 && evals < budget; ++iter) {
      if (rn <= 1e-14) break;
      auto U = tangent_basis(x);
      // Numerical Jacobian of g in the tangent chart.
      std::vector<double> J(n * n);
      const double h = 1e-6;
      for (int c = 0; c < n; ++c) {
        Vec xp = normalized(x + h * U[c]);
        Vec xm = normalized(x - h * U[c]);
        Vec col = g(xp) - g(xm);
        for (int rrow = 0; rrow < n; ++rrow) J[rrow * n + c] = col[rrow] / (2 * h);
      }
      std::vector<double> rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = -r[i];
      std::vector<double> A = J;
      if (!solve_dense(n, A.data(), rhs.data())) break;
      Vec du(n);
      for (int i = 0; i < n; ++i) du[i] = rhs[i];
      bool improved = false;
      for (double step : {1.0, 0.5, 0.25, 0.1, 0.03}) {
        Vec cand = x;
        for (int c = 0; c < n; ++c) cand += (step * du[c]) * U[c];
        cand = normalized(cand);
        Vec rc = g(cand);
        double rcn = res_norm(rc);
        if (rcn < rn) {
          x = cand;
          r = rc;
          rn = rcn;
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    if (best.better(rn, x, best.x)) {
      best.residual = rn;
      best.x = x;
      best.y = -x;
    }
  }
  if (best.residual > tol) throw BudgetExhausted(best.residual);
  CoincidencePair out;
  out.x = best.x;
  out.y = best.y;
  out.distance = M_PI;
  out.residual = best.residual;
  out.method = "multistart-newton";
  out.evaluations = evals;
  return out;
}

namespace {

// State for the Hopf search: a base point and a unit tangent direction.
struct BundlePoint {
  Vec x;
  Vec v;
};

BundlePoint perturb(const ModelSpace& sp, const BundlePoint& s,
                    std::span<const double> u) {
  if (sp.kind == SpaceKind::FlatTorus) {
    BundlePoint t;
    t.x = torus_wrap(s.x + Vec{u[0], u[1]});
    double th = std::atan2(s.v[1], s.v[0]) + u[2];
    t.v = {std::cos(th), std::sin(th)};
    return t;
  }
  const int d = s.x.size();
  const int n = d - 1;
  auto U = tangent_basis(s.x);
  BundlePoint t;
  t.x = s.x;
  for (int i = 0; i < n; ++i) t.x += u[i] * U[i];
  t.x = normalized(t.x);
  // Rotate v inside the old tangent plane, then project to the new one.
  Vec v = s.v;
  if (n >= 2) {
    std::vector<Vec> W;  // basis of the complement of v in the tangent space
    for (const auto& b : U) {
      Vec w = b - dot(b, v) * v;
      for (const auto& prev : W) w -= dot(w, prev) * prev;
      if (norm(w) > 1e-8) W.push_back(normalized(w));
      if (static_cast<int>(W.size()) == n - 1) break;
    }
    for (size_t i = 0; i < W.size(); ++i) v += u[n + i] * W[i];
  }
  v -= dot(v, t.x) * t.x;
  double nv = norm(v);
  if (nv < 1e-9) {
    // Degenerate transport; restart from any tangent direction.
    v = tangent_basis(t.x)[0];
    nv = 1;
  }
  t.v = (1.0 / nv) * v;
  return t;
}

}  // namespace

CoincidencePair hopf_pair(const AnalyticMap& f, double delta, double tol,
                          long budget, std::uint64_t seed) {
  const ModelSpace& sp = f.source;
  bool sphere = sp.kind == SpaceKind::RoundSphere;
  if (!sphere && sp.kind != SpaceKind::FlatTorus)
    throw UnsupportedDimension("Hopf search needs S^n or T^2");
  if (sphere && (sp.n < 1 || sp.n > 3))
    throw UnsupportedDimension("Hopf search needs n in 1..3");
  if (f.target_dim != sp.n)
    throw DimensionMismatch("Hopf search needs target dimension dim X");
  double rho = constants(sp).rho;
  if (!(delta > 0) || delta > rho + 1e-12)
    throw DeltaOutOfRange("need 0 < delta <= rho(X)");
  delta = std::min(delta, rho);

  const int n = sp.n;
  const int nparams = sphere ? 2 * n - 1 : 3;
  long evals = 0;
  auto endpoints = [&](const BundlePoint& s) {
    return std::pair<Vec, Vec>{geodesic_shoot(sp, s.x, s.v, delta / 2),
                               geodesic_shoot(sp, s.x, -s.v, delta / 2)};
  };
  auto residual = [&](const BundlePoint& s) {
    auto [p, q] = endpoints(s);
    evals += 2;
    return f.fn(p) - f.fn(q);
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Best best;
  BundlePoint best_state;
  const int kStarts = 64;
  for (int s0 = 0; s0 < kStarts && evals < budget; ++s0) {
    BundlePoint s;
    if (sphere) {
      s.x = random_unit(rng, n + 1);
      Vec raw = random_unit(rng, n + 1);
      raw -= dot(raw, s.x) * s.x;
      if (norm(raw) < 1e-6) continue;
      s.v = normalized(raw);
    } else {
      s.x = {uni(rng), uni(rng)};
      double th = 2 * M_PI * uni(rng);
      s.v = {std::cos(th), std::sin(th)};
    }
    Vec r = residual(s);
    double rn = norm_inf(r);
    double mu = 1e-4;
    for (int iter = 0; iter < 80 && evals < budget; ++iter) {
      if (rn <= 1e-14) break;
      const double h = 1e-6;
      std::vector<double> J(n * nparams);
      for (int c = 0; c < nparams; ++c) {
        std::vector<double> up(nparams, 0.0), um(nparams, 0.0);
        up[c] = h;
        um[c] = -h;
        Vec rp = residual(perturb(sp, s, up));
        Vec rm = residual(perturb(sp, s, um));
        for (int i = 0; i < n; ++i) J[i * nparams + c] = (rp[i] - rm[i]) / (2 * h);
      }
      // Levenberg step on the (underdetermined) least-squares system.
      std::vector<double> N(nparams * nparams, 0.0), rhs(nparams, 0.0);
      for (int a = 0; a < nparams; ++a) {
        for (int b = 0; b < nparams; ++b)
          for (int i = 0; i < n; ++i)
            N[a * nparams + b] += J[i * nparams + a] * J[i * nparams + b];
        for (int i = 0; i < n; ++i) rhs[a] -= J[i * nparams + a] * r[i];
      }
      bool improved = false;
      for (int tries = 0; tries < 8; ++tries) {
        std::vector<double> A = N, b = rhs;
        for (int a = 0; a < nparams; ++a) A[a * nparams + a] += mu;
        if (!solve_dense(nparams, A.data(), b.data())) {
          mu *= 10;
          continue;
        }
        BundlePoint cand = perturb(sp, s, b);
        Vec rc = residual(cand);
        double rcn = norm_inf(rc);
        if (rcn < rn) {
          s = cand;
          r = rc;
          rn = rcn;
          mu = std::max(1e-12, mu / 3);
          improved = true;
          break;
        }
        mu *= 10;
      }
      if (!improved) break;
    }
    if (best.better(rn, s.x, best_state.x)) {
      best.residual = rn;
      best_state = s;
    }
  }
  if (best.residual > tol) throw BudgetExhausted(best.residual);
  auto [p, q] = endpoints(best_state);
  CoincidencePair out;
  out.x = p;
  out.y = q;
  out.distance = distance(sp, p, q);
  out.residual = best.residual;
  out.method = "tangent-bundle-levenberg";
  out.evaluations = evals;
  return out;
}

CoincidencePair even_degree_pair(const PLMap& f, double tol, long budget,
                                 std::uint64_t seed) {
  (void)seed;  // the search is exhaustive and deterministic
  if (f.source->space.kind != SpaceKind::RoundSphere)
    throw UnsupportedDimension("far-pair search needs a sphere source");
  if (mod2_degree(f) != 0) throw OddDegree("far pairs need an even-degree map");

  const auto& K = *f.source;
  const int n = K.dim;
  auto anti = K.antipodal_vertex_map();
  std::map<std::vector<int>, int> index_of;
  for (int t = 0; t < K.count(n); ++t) index_of[K.top()[t]] = t;

  const bool radial = f.target_complex->space.kind == SpaceKind::RoundSphere;
  long evals = 0;
  // Normalized image difference between x and -x for barycentric lambda in
  // piece t (and the antipodal piece with matched vertex order).
  auto residual_at = [&](int t, const std::vector<int>& anti_verts,
                         std::span<const double> lam) {
    ++evals;
    Vec a(f.target_ambient()), b(f.target_ambient());
    const auto& verts = K.top()[t];
    for (size_t i = 0; i < lam.size(); ++i) {
      a += lam[i] * f.vertex_images[verts[i]];
      b += lam[i] * f.vertex_images[anti_verts[i]];
    }
    if (radial) {
      a = normalized(a);
      b = normalized(b);
    }
    return a - b;
  };

  Best best;
  int best_piece = -1;
  std::vector<double> best_lam;
  const int grid = n == 1 ? 24 : 8;
  for (int t = 0; t < K.count(n) && evals < budget; ++t) {
    const auto& verts = K.top()[t];
    std::vector<int> averts(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) averts[i] = anti[verts[i]];
    {
      auto sorted = averts;
      std::sort(sorted.begin(), sorted.end());
      if (!index_of.count(sorted))
        throw NotClosedManifold("mesh is not antipodally closed");
      // Handle each antipodal pair of pieces once.
      if (index_of[sorted] < t) continue;
    }
    // Coarse grid over the simplex, then local Gauss-Newton refinement.
    std::vector<std::vector<double>> starts;
    if (n == 1) {
      for (int i = 0; i <= grid; ++i) {
        double u = static_cast<double>(i) / grid;
        starts.push_back({u, 1 - u});
      }
    } else {
      for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid - i; ++j) {
          double u = static_cast<double>(i) / grid;
          double v = static_cast<double>(j) / grid;
          starts.push_back({u, v, 1 - u - v});
        }
    }
    for (auto lam : starts) {
      Vec r = residual_at(t, averts, lam);
      double rn = norm_inf(r);
      const double h = 1e-7;
      for (int iter = 0; iter < 40 && rn > 1e-14 && evals < budget; ++iter) {
        const int m = f.target_ambient();
        const int fr = n;  // free barycentric coordinates
        std::vector<double> J(m * fr);
        for (int c = 0; c < fr; ++c) {
          auto lp = lam, lm = lam;
          lp[c] += h;
          lp.back() -= h;
          lm[c] -= h;
          lm.back() += h;
          Vec rp = residual_at(t, averts, lp);
          Vec rm = residual_at(t, averts, lm);
          for (int i = 0; i < m; ++i) J[i * fr + c] = (rp[i] - rm[i]) / (2 * h);
        }
        std::vector<double> N(fr * fr, 0.0), rhs(fr, 0.0);
        for (int a = 0; a < fr; ++a) {
          for (int b = 0; b < fr; ++b)
            for (int i = 0; i < m; ++i)
              N[a * fr + b] += J[i * fr + a] * J[i * fr + b];
          for (int i = 0; i < m; ++i) rhs[a] -= J[i * fr + a] * r[i];
          N[a * fr + a] += 1e-10;
        }
        if (!solve_dense(fr, N.data(), rhs.data())) break;
        auto cand = lam;
        for (int c = 0; c < fr; ++c) {
          cand[c] += rhs[c];
          cand.back() -= rhs[c];
        }
        // Project back into the simplex.
        double sum = 0;
        for (auto& l : cand) {
          l = std::max(l, 0.0);
          sum += l;
        }
        if (sum <= 0) break;
        for (auto& l : cand) l /= sum;
        Vec rc = residual_at(t, averts, cand);
        double rcn = norm_inf(rc);
        if (rcn >= rn) break;
        lam = cand;
        r = rc;
        rn = rcn;
      }
      Vec x(K.ambient_dim());
      for (size_t i = 0; i < lam.size(); ++i) x += lam[i] * K.vertices[verts[i]];
      x = normalized(x);
      if (best.better(rn, x, best.x)) {
        best.residual = rn;
        best.x = x;
        best.y = -x;
        best_piece = t;
        best_lam = lam;
      }
    }
  }
  (void)best_piece;
  (void)best_lam;
  if (best.residual > tol) throw BudgetExhausted(best.residual);
  CoincidencePair out;
  out.x = best.x;
  out.y = best.y;
  out.distance = M_PI;
  out.residual = best.residual;
  out.method = "antipodal-piece-scan";
  out.evaluations = evals;
  return out;
}

}  // namespace widthlab
