#include "widthlab/geomlemmas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "widthlab/errors.hpp"

namespace widthlab {

namespace {

const ModelSpace kS2 = ModelSpace::sphere(2);

double polygon_length(const std::vector<Vec>& curve, bool closed) {
  double L = 0;
  size_t nseg = closed ? curve.size() : curve.size() - 1;
  for (size_t i = 0; i < nseg; ++i)
    L += distance(kS2, curve[i], curve[(i + 1) % curve.size()]);
  return L;
}

// Point at arc-length s along the closed polygon.
Vec point_at(const std::vector<Vec>& curve, double s) {
  size_t npt = curve.size();
  for (size_t i = 0; i < npt; ++i) {
    const Vec& p = curve[i];
    const Vec& q = curve[(i + 1) % npt];
    double d = distance(kS2, p, q);
    if (s <= d || i + 1 == npt) {
      if (d < 1e-15) return p;
      return short_path(kS2, p, q, std::min(1.0, s / d));
    }
    s -= d;
  }
  return curve[0];
}

std::string format_points(const std::vector<Vec>& pts) {
  std::string out;
  char buf[128];
  for (const Vec& p : pts) {
    out += out.empty() ? "" : " ";
    for (int i = 0; i < p.size(); ++i) {
      std::snprintf(buf, sizeof buf, i ? ",%.17g" : "(%.17g", p[i]);
      out += buf;
    }
    out += ")";
  }
  return out;
}

Vec random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v{g(rng), g(rng), g(rng)};
  while (norm(v) < 1e-6) v = {g(rng), g(rng), g(rng)};
  return normalized(v);
}

Vec random_tangent(const Vec& p, std::mt19937_64& rng) {
  Vec t = random_unit(rng);
  t -= dot(t, p) * p;
  while (norm(t) < 1e-6) {
    t = random_unit(rng);
    t -= dot(t, p) * p;
  }
  return normalized(t);
}

std::uint64_t mix(std::uint64_t seed, long i) {
  return seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(i + 1));
}

struct TrialOutcome {
  double margin = kInf;
  std::string reproducer;
};

LemmaVerdict reduce_campaign(const std::string& lemma,
                             const std::vector<TrialOutcome>& outcomes,
                             double tol) {
  LemmaVerdict v;
  v.lemma = lemma;
  v.trials = static_cast<long>(outcomes.size());
  for (const auto& o : outcomes) {
    if (o.margin < -tol) ++v.failures;
    if (o.margin < v.worst_margin) {
      v.worst_margin = o.margin;
      v.worst_case = o.reproducer;
    }
  }
  return v;
}

}  // namespace

HemisphereResult hemisphere_check(const std::vector<Vec>& curve, bool closed,
                                  double tol) {
  if (!closed) throw NotClosed("hemisphere lemma needs a closed curve");
  if (curve.empty()) throw EmptySet("empty curve");
  HemisphereResult r;
  r.length = polygon_length(curve, true);
  if (r.length > 2 * M_PI + tol)
    throw PreconditionViolated("curve longer than 2*pi");
  std::vector<Vec> unit;
  unit.reserve(curve.size());
  for (const Vec& p : curve) unit.push_back(normalized(p));
  r.cap = smallest_enclosing_cap(unit);
  r.margin = M_PI / 2 - r.cap.radius;
  return r;
}

double median_check(const Vec& a, const Vec& b, const Vec& c) {
  double ab = distance(kS2, a, b), ac = distance(kS2, a, c);
  if (ab + ac >= M_PI)
    throw PreconditionViolated("median lemma needs d(a,b) + d(a,c) < pi");
  Vec m = short_path(kS2, b, c, 0.5);
  return (ab + ac) / 2 - distance(kS2, a, m);
}

double quarter_ball_check(const std::vector<Vec>& curve) {
  if (curve.size() < 2) throw PreconditionViolated("curve needs >= 2 points");
  double L = polygon_length(curve, true);
  if (L >= 2 * M_PI) throw PreconditionViolated("quarter-ball lemma needs l < 2*pi");
  Vec a = curve[0];
  Vec b = point_at(curve, L / 2);
  Vec m = short_path(kS2, a, b, 0.5);
  double far = 0;
  size_t npt = curve.size();
  for (size_t i = 0; i < npt; ++i) {
    const Vec& p = curve[i];
    const Vec& q = curve[(i + 1) % npt];
    double d = distance(kS2, p, q);
    int sub = 8;
    for (int j = 0; j <= sub; ++j) {
      Vec x = d < 1e-15 ? p : short_path(kS2, p, q, static_cast<double>(j) / sub);
      far = std::max(far, distance(kS2, m, x));
    }
  }
  return L / 4 - far;
}

LemmaVerdict ball_convexity_check(const ModelSpace& space, const Vec& center,
                                  double r, int pairs, std::uint64_t seed,
                                  double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto sample_in_ball = [&]() {
    double s = r * std::sqrt(u(rng));
    if (space.kind == SpaceKind::RoundSphere) {
      return geodesic_shoot(space, center, random_tangent(center, rng), s);
    }
    double th = 2 * M_PI * u(rng);
    Vec dir(center.size());
    dir[0] = std::cos(th);
    dir[1] = std::sin(th);
    return geodesic_shoot(space, center, dir, s);
  };
  std::vector<TrialOutcome> outcomes(pairs);
  for (int t = 0; t < pairs; ++t) {
    Vec p1 = sample_in_ball(), p2 = sample_in_ball();
    TrialOutcome& o = outcomes[t];
    o.reproducer = "pair " + format_points({p1, p2});
    try {
      double maxd = 0;
      const int steps = 48;
      for (int j = 0; j <= steps; ++j) {
        Vec x = short_path(space, p1, p2, static_cast<double>(j) / steps);
        maxd = std::max(maxd, distance(space, center, x));
      }
      o.margin = r - maxd;
    } catch (const OutsideShortPathDomain&) {
      o.margin = -1.0;  // no unique geodesic: only possible outside the regime
      o.reproducer += " [no unique geodesic]";
    }
  }
  return reduce_campaign("ball-convexity", outcomes, tol);
}

std::vector<Vec> random_closed_polygon(std::uint64_t seed, double max_length,
                                       int verts) {
  if (verts < 2 || max_length <= 0)
    throw PreconditionViolated("polygon needs >= 2 vertices, positive length");
  std::mt19937_64 rng(seed);
  std::vector<Vec> poly;
  for (int i = 0; i < verts; ++i) {
    Vec p = random_unit(rng);
    if (!poly.empty() && distance(kS2, poly.back(), p) > 2.8)
      p = short_path(kS2, poly.back(), p, 0.5);
    poly.push_back(p);
  }
  if (polygon_length(poly, true) <= max_length) return poly;
  // Contract toward the first vertex until the length fits.
  const Vec p0 = poly[0];
  auto contracted = [&](double alpha) {
    std::vector<Vec> out;
    out.reserve(poly.size());
    for (const Vec& p : poly) out.push_back(short_path(kS2, p0, p, alpha));
    return out;
  };
  double lo = 0, hi = 1;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    if (polygon_length(contracted(mid), true) <= 0.999 * max_length)
      lo = mid;
    else
      hi = mid;
  }
  return contracted(lo);
}

LemmaVerdict hemisphere_campaign(long trials, std::uint64_t seed, double tol,
                                 bool parallel) {
  std::vector<TrialOutcome> outcomes(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32) if (parallel)
#endif
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix(seed, t));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    double target = 2 * M_PI * u(rng);
    auto poly = random_closed_polygon(mix(seed, t) + 1, target, 4 + t % 5);
    HemisphereResult r = hemisphere_check(poly, true);
    outcomes[t].margin = r.margin;
    outcomes[t].reproducer =
        "length=" + std::to_string(r.length) + " " + format_points(poly);
  }
  return reduce_campaign("hemisphere", outcomes, tol);
}

LemmaVerdict median_campaign(long trials, std::uint64_t seed, double tol,
                             bool parallel) {
  std::vector<TrialOutcome> outcomes(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix(seed, t));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec a = random_unit(rng);
    double total = (M_PI - 1e-9) * u(rng);
    double r1 = total * u(rng), r2 = total - r1;
    Vec b = geodesic_shoot(kS2, a, random_tangent(a, rng), r1);
    Vec c = geodesic_shoot(kS2, a, random_tangent(a, rng), r2);
    outcomes[t].margin = median_check(a, b, c);
    outcomes[t].reproducer = "triple " + format_points({a, b, c});
  }
  return reduce_campaign("median", outcomes, tol);
}

LemmaVerdict quarter_ball_campaign(long trials, std::uint64_t seed, double tol,
                                   bool parallel) {
  std::vector<TrialOutcome> outcomes(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32) if (parallel)
#endif
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix(seed, t));
    std::uniform_real_distribution<double> u(0.05, 1.0);
    double target = (2 * M_PI - 1e-6) * u(rng);
    auto poly = random_closed_polygon(mix(seed, t) + 3, target, 3 + t % 6);
    outcomes[t].margin = quarter_ball_check(poly);
    outcomes[t].reproducer = format_points(poly);
  }
  return reduce_campaign("quarter-ball", outcomes, tol);
}

LemmaVerdict convexity_campaign(long balls, int pairs_per_ball,
                                std::uint64_t seed, double tol, bool parallel) {
  std::vector<TrialOutcome> outcomes(balls);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
  for (long t = 0; t < balls; ++t) {
    std::mt19937_64 rng(mix(seed, t));
    std::uniform_real_distribution<double> u(0.05, 0.999);
    LemmaVerdict one;
    if (t % 2 == 0) {
      Vec center = random_unit(rng);
      double r = (M_PI / 2 - 1e-3) * u(rng);
      one = ball_convexity_check(kS2, center, r, pairs_per_ball, mix(seed, t) + 7,
                                 tol);
    } else {
      Vec center{u(rng), u(rng)};
      double r = (0.25 - 1e-3) * u(rng);
      one = ball_convexity_check(ModelSpace::torus(), center, r, pairs_per_ball,
                                 mix(seed, t) + 7, tol);
    }
    outcomes[t].margin = one.worst_margin;
    outcomes[t].reproducer = one.worst_case;
  }
  LemmaVerdict v = reduce_campaign("ball-convexity", outcomes, tol);
  v.trials = balls * pairs_per_ball;
  return v;
}

}  // namespace widthlab
