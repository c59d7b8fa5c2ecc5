#include "widthlab/cyclespace.hpp"

#include <algorithm>
#include <cmath>

namespace widthlab {

namespace {

// Canonical representative of a source point in its model space.
Vec model_point(const ModelSpace& space, const Vec& p) {
  if (space.kind == SpaceKind::RoundSphere) return normalized(p);
  if (space.kind == SpaceKind::FlatTorus) return torus_wrap(p);
  return p;
}

// Reduces a point multiset mod 2: points matching within tol annihilate.
std::vector<Vec> reduce_mod2(const ModelSpace& space, std::vector<Vec> pts,
                             double tol = 1e-9) {
  std::vector<char> dead(pts.size(), 0);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (dead[j]) continue;
      if (distance(space, pts[i], pts[j]) < tol) {
        dead[i] = dead[j] = 1;
        break;
      }
    }
  }
  std::vector<Vec> out;
  for (size_t i = 0; i < pts.size(); ++i)
    if (!dead[i]) out.push_back(pts[i]);
  return out;
}

std::vector<Vec> model_fiber_points(const PLMap& f, const Fiber& fb) {
  std::vector<Vec> pts;
  pts.reserve(fb.points.size());
  for (const auto& wp : fb.points)
    pts.push_back(model_point(f.source->space, wp.point));
  return pts;
}

// Random interior point of a random source piece.
std::pair<int, std::vector<double>> random_source_barycentric(
    const PLMap& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto& K = *f.source;
  int t = static_cast<int>(rng() % K.count(K.dim));
  std::vector<double> lam(K.dim + 1);
  double s = 0;
  for (auto& l : lam) {
    l = -std::log(std::max(uni(rng), 1e-300));
    s += l;
  }
  for (auto& l : lam) l /= s;
  return {t, lam};
}

void require_even_degree(const PLMap& f) {
  if (mod2_degree(f) != 0)
    throw OddDegree("the fiber cycle needs an even-degree map");
}

}  // namespace

ZeroCycle cycle_map(const PLMap& f, const Vec& y) {
  require_even_degree(f);
  Fiber fb = fiber(f, y);
  ZeroCycle c;
  c.support = reduce_mod2(f.source->space, model_fiber_points(f, fb));
  return c;
}

int canonical_class_eval(const PLMap& f, int probes, std::uint64_t seed,
                         int* resampled) {
  require_even_degree(f);
  std::mt19937_64 rng(seed);
  int parity = -1;
  for (int p = 0; p < probes; ++p) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 200)
        throw NonGenericTarget("could not find a generic probe point");
      auto [t, lam] = random_source_barycentric(f, rng);
      auto X = f.source->top_coords(t);
      Vec x0(f.source->ambient_dim());
      for (size_t i = 0; i < lam.size(); ++i) x0 += lam[i] * X[i];
      x0 = model_point(f.source->space, x0);
      Vec y = f.eval(t, lam);
      ZeroCycle c;
      try {
        c = cycle_map(f, y);
      } catch (const NonGenericTarget&) {
        if (resampled) ++*resampled;
        continue;
      }
      // Count how often the probe point itself shows up in the cycle.
      int count = 0;
      for (const auto& q : c.support)
        if (distance(f.source->space, q, x0) < 1e-6) ++count;
      int here = count % 2;
      if (parity < 0)
        parity = here;
      else if (here != parity)
        throw NonGenericTarget("probe parity disagreement");
      break;
    }
  }
  return parity;
}

ZeroCycle contraction_homotopy(const PLMap& f, const Vec& y, double t) {
  if (t < 0 || t > 1) throw PreconditionViolated("homotopy parameter in [0,1]");
  ZeroCycle base = cycle_map(f, y);
  const ModelSpace& sp = f.source->space;
  std::vector<Vec> pts;
  for (size_t i = 0; i < base.support.size(); ++i)
    for (size_t j = 0; j < base.support.size(); ++j) {
      if (i == j) continue;
      pts.push_back(short_path(sp, base.support[i], base.support[j], t / 2));
    }
  ZeroCycle out;
  out.support = reduce_mod2(sp, std::move(pts));
  return out;
}

FiberGraph fiber_graph(const PLMap& f, const Vec& y, double delta) {
  double rho = constants(f.source->space).rho;
  if (!(delta > 0) || delta > rho)
    throw DeltaOutOfRange("need 0 < delta <= rho(source)");
  Fiber fb = fiber(f, y);
  FiberGraph g;
  g.y = y;
  g.delta = delta;
  g.vertices = model_fiber_points(f, fb);
  for (size_t i = 0; i < g.vertices.size(); ++i)
    for (size_t j = i + 1; j < g.vertices.size(); ++j) {
      double d = distance(f.source->space, g.vertices[i], g.vertices[j]);
      if (std::fabs(d - delta) <= 1e-9)
        throw DeltaPairFound(g.vertices[i], g.vertices[j], d);
      if (d < delta)
        g.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  return g;
}

namespace {

struct PathEval {
  std::vector<Vec> pts;
  std::vector<double> cum;  // cumulative chord length, normalized to [0,1]

  explicit PathEval(const std::vector<Vec>& path) : pts(path) {
    if (pts.size() < 2) throw PreconditionViolated("path needs >= 2 points");
    cum.assign(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i)
      cum[i] = cum[i - 1] + norm(pts[i] - pts[i - 1]);
    double total = cum.back();
    if (total <= 0) throw PreconditionViolated("path has zero length");
    for (auto& c : cum) c /= total;
  }
  Vec at(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    size_t i = 1;
    while (i + 1 < pts.size() && cum[i] < t) ++i;
    double lo = cum[i - 1], hi = cum[i];
    double u = hi > lo ? (t - lo) / (hi - lo) : 0.0;
    return pts[i - 1] + u * (pts[i] - pts[i - 1]);
  }
};

// Fiber signature: which pieces carry a fiber point (sorted), plus points.
struct Signature {
  std::vector<int> pieces;
  std::map<int, Vec> point_by_piece;
};

// Event location is bisected to 1e-10 in the path parameter, which is far
// inside the default 1e-9 genericity band in target space; the tracker
// therefore runs the fiber solver with a much tighter band.
constexpr double kTrackTol = 1e-13;

Signature signature_at(const PLMap& f, const PathEval& path, double& t) {
  for (int nudge = 0; nudge < 12; ++nudge) {
    try {
      Fiber fb = fiber(f, path.at(t), kTrackTol);
      Signature s;
      for (const auto& wp : fb.points) {
        s.pieces.push_back(wp.piece);
        s.point_by_piece[wp.piece] = model_point(f.source->space, wp.point);
      }
      std::sort(s.pieces.begin(), s.pieces.end());
      return s;
    } catch (const NonGenericTarget&) {
      t += (nudge % 2 ? -1 : 1) * (nudge + 1) * 1e-9;  // step off the stratum
    }
  }
  throw NonGenericTarget("path parameter stuck on a critical image");
}

bool pieces_adjacent(const SimplicialComplex& K, int a, int b) {
  const auto& sa = K.top()[a];
  const auto& sb = K.top()[b];
  std::vector<int> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  return static_cast<int>(common.size()) == K.dim;
}

std::map<int, int> graph_parities(const PLMap& f, const Vec& y, double delta,
                                  const std::map<int, int>& id_by_piece) {
  Fiber fb = fiber(f, y, kTrackTol);
  std::vector<Vec> pts = model_fiber_points(f, fb);
  std::map<int, int> out;
  for (size_t i = 0; i < fb.points.size(); ++i) {
    auto it = id_by_piece.find(fb.points[i].piece);
    if (it == id_by_piece.end()) continue;
    int deg = 0;
    for (size_t j = 0; j < pts.size(); ++j)
      if (j != i && distance(f.source->space, pts[i], pts[j]) < delta) ++deg;
    out[it->second] = deg % 2;
  }
  return out;
}

}  // namespace

TrackResult track_events(const PLMap& f, const std::vector<Vec>& path,
                         double delta) {
  if (f.codim() != 0 || f.target_is_complex())
    throw PreconditionViolated("event tracking needs codim 0 into R^m");
  PathEval pe(path);
  TrackResult out;
  double t0 = 0.0;
  Signature s0 = signature_at(f, pe, t0);
  std::map<int, int> id_by_piece;
  int next_id = 0;
  for (int p : s0.pieces) id_by_piece[p] = next_id++;

  const int kSteps = 600;
  double cursor = t0;
  Signature cur = s0;
  for (int k = 1; k <= kSteps; ++k) {
    double t1 = static_cast<double>(k) / kSteps;
    if (t1 <= cursor) continue;
    while (true) {
      double ta = cursor, tb = t1;
      Signature sb = signature_at(f, pe, tb);
      if (sb.pieces == cur.pieces) {
        cursor = tb;
        cur = sb;
        break;
      }
      // Bisect the earliest signature change down to 1e-10.
      Signature sa = cur;
      while (tb - ta > 1e-10) {
        double tm = 0.5 * (ta + tb);
        Signature sm = signature_at(f, pe, tm);
        if (sm.pieces == sa.pieces) {
          ta = tm;
          sa = sm;
        } else {
          tb = tm;
          sb = sm;
        }
      }
      std::vector<int> added, removed;
      std::set_difference(sb.pieces.begin(), sb.pieces.end(), sa.pieces.begin(),
                          sa.pieces.end(), std::back_inserter(added));
      std::set_difference(sa.pieces.begin(), sa.pieces.end(), sb.pieces.begin(),
                          sb.pieces.end(), std::back_inserter(removed));
      EventRecord ev;
      ev.param = 0.5 * (ta + tb);
      if (added.size() == 2 && removed.empty()) {
        if (!pieces_adjacent(*f.source, added[0], added[1]))
          throw NonSimpleEvent("pair created on non-adjacent pieces");
        ev.kind = EventKind::PairCreated;
        for (int p : added) {
          id_by_piece[p] = next_id;
          ev.vertices.push_back(next_id++);
        }
      } else if (removed.size() == 2 && added.empty()) {
        if (!pieces_adjacent(*f.source, removed[0], removed[1]))
          throw NonSimpleEvent("pair annihilated on non-adjacent pieces");
        ev.kind = EventKind::PairAnnihilated;
        for (int p : removed) {
          ev.vertices.push_back(id_by_piece.at(p));
          id_by_piece.erase(p);
        }
      } else if (added.size() == 1 && removed.size() == 1) {
        if (!pieces_adjacent(*f.source, added[0], removed[0]))
          throw NonSimpleEvent("vertex jumped between non-adjacent pieces");
        ev.kind = EventKind::VertexExchange;
        int id = id_by_piece.at(removed[0]);
        id_by_piece.erase(removed[0]);
        id_by_piece[added[0]] = id;
        ev.vertices.push_back(id);
      } else {
        throw NonSimpleEvent("simultaneous signature changes");
      }
      // Parities just after the event, at a safe offset from the stratum.
      ev.parities =
          graph_parities(f, pe.at(std::min(1.0, tb + 1e-8)), delta, id_by_piece);
      out.events.push_back(std::move(ev));
      cursor = tb;
      cur = sb;
    }
  }
  out.final_parities = graph_parities(f, pe.at(1.0), delta, id_by_piece);
  for (const auto& [piece, id] : id_by_piece)
    out.final_points[id] = cur.point_by_piece.at(piece);
  return out;
}

namespace {

// Smallest |pairwise distance - delta| over the fiber of y, with the pair.
struct PairGap {
  double gap = kInf;
  Vec a, b;
};

PairGap pair_gap(const PLMap& f, const Vec& y, double delta) {
  PairGap best;
  Fiber fb = fiber(f, y);
  auto pts = model_fiber_points(f, fb);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double g = std::fabs(distance(f.source->space, pts[i], pts[j]) - delta);
      if (g < best.gap) {
        best.gap = g;
        best.a = pts[i];
        best.b = pts[j];
      }
    }
  return best;
}

}  // namespace

ParityCertificate parity_certificate(const PLMap& f, double delta, int samples,
                                     std::uint64_t seed) {
  double rho = constants(f.source->space).rho;
  if (!(delta > 0) || delta > rho)
    throw DeltaOutOfRange("need 0 < delta <= rho(source)");
  ParityCertificate out;

  // Constant (fully degenerate) map: every pair of source points at
  // distance delta already has equal images.
  bool all_degenerate = true;
  for (auto d : f.degenerate_piece)
    if (!d) all_degenerate = false;
  if (all_degenerate) {
    const ModelSpace& sp = f.source->space;
    Vec x1 = model_point(sp, f.source->vertices[0]);
    Vec x2;
    if (sp.kind == SpaceKind::RoundSphere) {
      Vec v(x1.size());
      v[(std::fabs(x1[0]) > 0.9) ? 1 : 0] = 1;
      v -= dot(v, x1) * x1;
      x2 = geodesic_shoot(sp, x1, normalized(v), delta);
    } else {
      x2 = model_point(sp, x1 + Vec{delta, 0});
    }
    out.kind = ParityCertificate::DeltaPair;
    out.x1 = x1;
    out.x2 = x2;
    out.distance = distance(f.source->space, x1, x2);
    return out;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vec, int>> seen;  // (target value, parity)
  for (int s = 0; s < samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 200)
        throw NonGenericTarget("could not sample a generic source point");
      auto [t, lam] = random_source_barycentric(f, rng);
      Vec y = f.eval(t, lam);
      try {
        FiberGraph g = fiber_graph(f, y, delta);
        // The sampled point's own fiber vertex: the one from piece t.
        Fiber fb = fiber(f, y);
        int self = -1;
        for (size_t i = 0; i < fb.points.size(); ++i)
          if (fb.points[i].piece == t) self = static_cast<int>(i);
        if (self < 0) continue;
        seen.push_back({y, g.degree(self) % 2});
        ++out.samples_used;
      } catch (const DeltaPairFound& hit) {
        out.kind = ParityCertificate::DeltaPair;
        out.x1 = hit.x1;
        out.x2 = hit.x2;
        out.distance = hit.distance;
        return out;
      } catch (const NonGenericTarget&) {
        continue;
      }
      break;
    }
  }
  bool mixed = false;
  for (const auto& [y, p] : seen)
    if (p != seen.front().second) mixed = true;
  if (!mixed) {
    out.kind = seen.front().second ? ParityCertificate::ConstantOddParity
                                   : ParityCertificate::ConstantEvenParity;
    out.parity = seen.front().second;
    return out;
  }

  // Mixed parities mean some fiber pair crosses distance delta between two
  // of the sampled target values; hunt it down along the connecting segment.
  Vec ya, yb;
  for (const auto& [y, p] : seen)
    if (p != seen.front().second) {
      ya = seen.front().first;
      yb = y;
      break;
    }
  auto gap_at = [&](double u) -> PairGap {
    Vec y = ya + u * (yb - ya);
    for (int nudge = 0; nudge < 12; ++nudge) {
      try {
        return pair_gap(f, y, delta);
      } catch (const NonGenericTarget&) {
        for (int i = 0; i < y.size(); ++i) y[i] += 1e-11 * (nudge + 1);
      }
    }
    return {};
  };
  double best_u = 0;
  PairGap best;
  const int kScan = 2000;
  for (int i = 0; i <= kScan; ++i) {
    double u = static_cast<double>(i) / kScan;
    PairGap g = gap_at(u);
    if (g.gap < best.gap) {
      best = g;
      best_u = u;
    }
  }
  double lo = std::max(0.0, best_u - 1.0 / kScan);
  double hi = std::min(1.0, best_u + 1.0 / kScan);
  for (int it = 0; it < 200 && best.gap > 1e-10; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    PairGap g1 = gap_at(m1), g2 = gap_at(m2);
    if (g1.gap < best.gap) best = g1;
    if (g2.gap < best.gap) best = g2;
    if (g1.gap <= g2.gap)
      hi = m2;
    else
      lo = m1;
  }
  if (best.gap > 1e-6) throw BudgetExhausted(best.gap);
  out.kind = ParityCertificate::DeltaPair;
  out.x1 = best.a;
  out.x2 = best.b;
  out.distance = distance(f.source->space, best.a, best.b);
  return out;
}

}  // namespace widthlab
