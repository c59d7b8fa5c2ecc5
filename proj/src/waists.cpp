#include "widthlab/waists.hpp"

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

std::vector<Vec> sample_targets(const PLMap& f, int samples,
                                std::mt19937_64& rng) {
  std::vector<Vec> out;
  out.reserve(samples);
  if (f.target_is_complex()) {
    const auto& T = *f.target_complex;
    int ntop = static_cast<int>(T.top().size());
    int per = std::max(1, samples / ntop);
    for (int t = 0; t < ntop; ++t) {
      auto coords = T.top_coords(t);
      for (int s = 0; s < per; ++s) {
        auto l = dirichlet_lambda(rng, static_cast<int>(coords.size()));
        Vec y(coords[0].size());
        for (size_t j = 0; j < coords.size(); ++j) y += l[j] * coords[j];
        out.push_back(y);
      }
    }
  } else {
    std::uniform_int_distribution<int> pick(
        0, static_cast<int>(f.source->top().size()) - 1);
    for (int s = 0; s < samples; ++s) {
      int t = pick(rng);
      auto l = dirichlet_lambda(rng, f.source->dim + 1);
      out.push_back(f.eval(t, l));
    }
  }
  return out;
}

struct FiberStats {
  double statistic = -1;  // total length, or max loop length
  double max_component = 0;
  bool valid = false;
};

// Fiber statistic at (a perturbation of) y. loops_only enforces the
// manifold-target genericity requirement that every component closes up.
FiberStats fiber_stats(const PLMap& f, Vec y, bool loops_only,
                       std::mt19937_64& rng, int* perturbations) {
  std::normal_distribution<double> g;
  for (int attempt = 0; attempt < 60; ++attempt) {
    bool retry = false;
    try {
      Fiber fib = fiber(f, y);
      FiberStats st;
      st.statistic = 0;
      for (const auto& c : fib.components) {
        if (loops_only && !c.closed) {
          retry = true;
          break;
        }
        st.max_component = std::max(st.max_component, c.length);
        if (loops_only)
          st.statistic = std::max(st.statistic, c.length);
        else
          st.statistic += c.length;
      }
      if (!retry) {
        st.valid = true;
        return st;
      }
    } catch (const NonGenericTarget&) {
      retry = true;
    }
    if (retry) {
      if (perturbations) ++(*perturbations);
      double s = 1e-9 * std::pow(10.0, attempt / 12.0);
      for (int i = 0; i < y.size(); ++i) y[i] += s * g(rng);
    }
  }
  return {};
}

}  // namespace

double floor_value(const ModelSpace& space, FloorKind kind) {
  switch (kind) {
    case FloorKind::PiPolyhedral:
      if (space.kind != SpaceKind::RoundSphere)
        throw PreconditionViolated("the pi floor is for round-sphere sources");
      return M_PI;
    case FloorKind::TwoKappa:
      return 2.0 * constants(space).kappa;
    case FloorKind::TwoPiManifold:
      if (space.kind != SpaceKind::RoundSphere)
        throw PreconditionViolated("the 2*pi floor needs a CAT(1) source");
      return 2.0 * M_PI;
  }
  throw MalformedInput("unknown floor kind");
}

WaistReport waist_check(const PLMap& f, FloorKind kind, int samples,
                        std::uint64_t seed, double slack, bool parallel) {
  if (f.codim() != 1) throw WrongCodimension("waist_check needs codimension 1");
  const bool loops_only = kind == FloorKind::TwoPiManifold;
  WaistReport rep;
  rep.map_id = f.id;
  rep.floor = floor_value(f.source->space, kind);
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  std::vector<Vec> targets = sample_targets(f, samples, rng);
  std::vector<FiberStats> stats(targets.size());
  struct Slot { int perturbations = 0; };
  std::vector<Slot> slots(targets.size());
  int count = static_cast<int>(targets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 local(seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
    stats[i] = fiber_stats(f, targets[i], loops_only, local,
                           &slots[i].perturbations);
  }
  int best = -1;
  for (int i = 0; i < count; ++i) {
    rep.perturbations += slots[i].perturbations;
    if (stats[i].valid && (best < 0 || stats[i].statistic > stats[best].statistic))
      best = i;
  }
  rep.samples = count;
  if (best >= 0) {
    rep.max_total_length = stats[best].statistic;
    rep.max_component_length = stats[best].max_component;
    rep.witness_target = targets[best];
    // Cap of the longest witness component, recomputed from the fiber.
    try {
      auto comps = connected_fiber_map(f, targets[best]);
      const FiberComponentInfo* longest = nullptr;
      for (const auto& c : comps)
        if (!longest || c.length > longest->length) longest = &c;
      if (longest) rep.witness_component_cap = longest->cap;
    } catch (const NonGenericTarget&) {
      // witness was only regular after perturbation; cap stays empty
    }
  }
  rep.pass = rep.max_total_length >= rep.floor - slack;
  return rep;
}

CroftonEstimate crofton_probability(const std::vector<Vec>& curve, bool closed,
                                    long trials, std::uint64_t seed,
                                    bool parallel) {
  if (curve.size() < 2) throw PreconditionViolated("curve needs >= 2 points");
  std::vector<Vec> pts;
  pts.reserve(curve.size());
  for (const Vec& p : curve) pts.push_back(normalized(p));
  CroftonEstimate est;
  est.trials = trials;
  const size_t npt = pts.size();
  const size_t nseg = closed ? npt : npt - 1;
  for (size_t i = 0; i < nseg; ++i) {
    double c = std::clamp(dot(pts[i], pts[(i + 1) % npt]), -1.0, 1.0);
    est.length += std::acos(c);
  }

  long hits = 0;
  double esum = 0, esum2 = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : hits, esum, esum2) \
    if (parallel)
#endif
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (t + 1)));
    std::normal_distribution<double> g;
    Vec u = normalized(Vec{g(rng), g(rng), g(rng)});
    int crossings = 0;
    double prev = dot(u, pts[0]);
    if (prev == 0) prev = 1e-300;
    for (size_t i = 1; i <= nseg; ++i) {
      double cur = dot(u, pts[i % npt]);
      if (cur == 0) cur = 1e-300;
      if (prev * cur < 0) ++crossings;
      prev = cur;
    }
    if (crossings > 0) ++hits;
    esum += crossings;
    esum2 += static_cast<double>(crossings) * crossings;
  }
  est.p_hat = static_cast<double>(hits) / trials;
  est.e_hat = esum / trials;
  est.sigma_p = std::sqrt(std::max(0.0, est.p_hat * (1 - est.p_hat) / trials));
  double var = std::max(0.0, esum2 / trials - est.e_hat * est.e_hat);
  est.sigma_e = std::sqrt(var / trials);
  return est;
}

std::vector<FiberComponentInfo> connected_fiber_map(const PLMap& f, const Vec& y,
                                                    double tol) {
  if (f.codim() != 1)
    throw WrongCodimension("connected_fiber_map needs codimension 1");
  Fiber fib = fiber(f, y, tol);
  const ModelSpace& space = f.source->space;
  std::vector<FiberComponentInfo> out;
  for (const auto& c : fib.components) {
    FiberComponentInfo info;
    info.points = c.points;
    info.closed = c.closed;
    info.length = c.length;
    if (space.kind == SpaceKind::RoundSphere) {
      std::vector<Vec> unit;
      unit.reserve(c.points.size());
      for (const Vec& p : c.points) unit.push_back(normalized(p));
      info.cap = smallest_enclosing_cap(unit);
    }
    out.push_back(std::move(info));
  }
  return out;
}

ConjectureWitness conjecture_probe(const PLMap& f, int samples, double tol,
                                   std::uint64_t seed, bool parallel) {
  if (f.source->space.kind != SpaceKind::RoundSphere)
    throw PreconditionViolated("conjecture probe is for sphere sources");
  if (f.codim() != 1)
    throw WrongCodimension("conjecture probe needs codimension 1 targets");
  ConjectureWitness best;
  best.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<Vec> targets = sample_targets(f, samples, rng);

  struct Result {
    double radius = -1;
    Vec y;
    FiberComponentInfo comp;
  };
  const int block = 64;
  for (size_t base = 0; base < targets.size(); base += block) {
    int n = static_cast<int>(std::min<size_t>(block, targets.size() - base));
    std::vector<Result> results(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
#endif
    for (int i = 0; i < n; ++i) {
      std::mt19937_64 local(seed ^ (0x9e3779b97f4a7c15ull * (base + i + 1)));
      Vec y = targets[base + i];
      std::normal_distribution<double> g;
      for (int attempt = 0; attempt < 40; ++attempt) {
        try {
          auto comps = connected_fiber_map(f, y);
          for (auto& c : comps)
            if (c.cap.radius > results[i].radius) {
              results[i].radius = c.cap.radius;
              results[i].y = y;
              results[i].comp = c;
            }
          break;
        } catch (const NonGenericTarget&) {
          double s = 1e-9 * std::pow(10.0, attempt / 10.0);
          for (int k = 0; k < y.size(); ++k) y[k] += s * g(local);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      best.samples += 1;
      if (results[i].radius > best.cap_radius) {
        best.cap_radius = results[i].radius;
        best.target = results[i].y;
        best.component = std::move(results[i].comp);
      }
    }
    if (best.cap_radius >= M_PI / 2 - tol) break;  // witness found
  }
  best.evades_half_spheres = best.cap_radius >= M_PI / 2 - tol;
  return best;
}

}  // namespace widthlab
