#include "widthlab/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace widthlab {

std::string ModelSpace::name() const {
  switch (kind) {
    case SpaceKind::RoundSphere:
      return "S" + std::to_string(n);
    case SpaceKind::Euclidean:
      return "R" + std::to_string(n);
    case SpaceKind::EuclideanBall:
      return "B" + std::to_string(n);
    case SpaceKind::FlatTorus:
      return "T2";
  }
  return "?";
}

ModelSpace ModelSpace::parse(const std::string& name) {
  if (name.size() < 2) throw MalformedInput("bad space name: " + name);
  int n = std::stoi(name.substr(1));
  switch (name[0]) {
    case 'S':
      return sphere(n);
    case 'R':
      return euclidean(n);
    case 'B':
      return ball(n);
    case 'T':
      if (n != 2) throw UnsupportedDimension("only T2 is supported");
      return torus();
  }
  throw MalformedInput("bad space name: " + name);
}

SpaceConstants constants(const ModelSpace& space) {
  switch (space.kind) {
    case SpaceKind::RoundSphere:
      return {M_PI, M_PI / 2};
    case SpaceKind::FlatTorus:
      return {0.5, 0.25};
    default:
      return {kInf, kInf};
  }
}

void validate_point(const ModelSpace& space, const Vec& p, double tol) {
  if (p.size() != space.ambient_dim())
    throw InvalidPoint("point dimension " + std::to_string(p.size()) +
                       " does not match space " + space.name());
  switch (space.kind) {
    case SpaceKind::RoundSphere:
      if (std::fabs(norm(p) - 1.0) > tol)
        throw InvalidPoint("point off the unit sphere");
      break;
    case SpaceKind::EuclideanBall:
      if (norm(p) > 1.0 + tol) throw InvalidPoint("point outside the unit ball");
      break;
    default:
      break;
  }
}

Vec torus_wrap(const Vec& p) {
  Vec q = p;
  for (int i = 0; i < q.size(); ++i) {
    q[i] -= std::floor(q[i]);
    if (q[i] >= 1.0) q[i] -= 1.0;  // guard against floor rounding
  }
  return q;
}

Vec torus_delta(const Vec& p, const Vec& q) {
  Vec d = q - p;
  for (int i = 0; i < d.size(); ++i) {
    d[i] -= std::round(d[i]);
  }
  return d;
}

double distance(const ModelSpace& space, const Vec& p, const Vec& q) {
  validate_point(space, p);
  validate_point(space, q);
  switch (space.kind) {
    case SpaceKind::RoundSphere: {
      double c = dot(p, q) / (norm(p) * norm(q));
      return std::acos(std::clamp(c, -1.0, 1.0));
    }
    case SpaceKind::FlatTorus:
      return norm(torus_delta(p, q));
    default:
      return dist_euclidean(p, q);
  }
}

Vec short_path(const ModelSpace& space, const Vec& p, const Vec& q, double t) {
  double d = distance(space, p, q);
  SpaceConstants c = constants(space);
  if (d >= c.rho)
    throw OutsideShortPathDomain("distance " + std::to_string(d) +
                                 " is not below the injectivity radius");
  switch (space.kind) {
    case SpaceKind::RoundSphere: {
      if (d == 0) return p;
      // slerp; exact equivariance s(p,q,t) = s(q,p,1-t) holds because the
      // formula is symmetric under (p,q,t) -> (q,p,1-t).
      double s = std::sin(d);
      Vec r = (std::sin((1 - t) * d) / s) * p + (std::sin(t * d) / s) * q;
      return normalized(r);
    }
    case SpaceKind::FlatTorus: {
      Vec delta = torus_delta(p, q);
      return torus_wrap(p + t * delta);
    }
    default:
      return (1 - t) * p + t * q;
  }
}

Vec geodesic_shoot(const ModelSpace& space, const Vec& x, const Vec& v, double len) {
  validate_point(space, x);
  if (std::fabs(norm(v) - 1.0) > kPointTol)
    throw InvalidTangent("tangent vector is not unit length");
  switch (space.kind) {
    case SpaceKind::RoundSphere: {
      if (std::fabs(dot(x, v)) > kPointTol)
        throw InvalidTangent("vector is not tangent to the sphere");
      return normalized(std::cos(len) * x + std::sin(len) * v);
    }
    case SpaceKind::FlatTorus:
      return torus_wrap(x + len * v);
    default:
      return x + len * v;
  }
}

double set_diameter(const ModelSpace& space, std::span<const Vec> points) {
  if (points.empty()) throw EmptySet("set_diameter of an empty set");
  double d = 0;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      d = std::max(d, distance(space, points[i], points[j]));
  return d;
}

// ---------------------------------------------------------------------------
// Minimum-norm point (Wolfe's algorithm) and the enclosing cap.

double min_norm_point(std::span<const Vec> points, Vec* direction, int max_iter,
                      double tol) {
  if (points.empty()) throw EmptySet("min_norm_point of an empty set");
  const int d = points[0].size();

  // Corral of at most d+1 affinely independent points.
  std::vector<int> corral;
  std::vector<double> lambda;
  {
    int best = 0;
    for (size_t i = 1; i < points.size(); ++i)
      if (norm2(points[i]) < norm2(points[best])) best = static_cast<int>(i);
    corral = {best};
    lambda = {1.0};
  }
  Vec w = points[corral[0]];

  auto affine_min = [&](std::vector<double>& alpha) -> bool {
    // minimize |sum alpha_i s_i|^2 subject to sum alpha = 1.
    int k = static_cast<int>(corral.size());
    // KKT system in (alpha, mu): [G 1; 1^T 0] [alpha; -mu] = [0; 1]
    int m = k + 1;
    std::vector<double> A(m * m, 0.0), b(m, 0.0);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j)
        A[i * m + j] = dot(points[corral[i]], points[corral[j]]);
      A[i * m + k] = 1.0;
      A[k * m + i] = 1.0;
    }
    b[k] = 1.0;
    if (!solve_dense(m, A.data(), b.data(), 1e-14)) return false;
    alpha.assign(b.begin(), b.begin() + k);
    return true;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    // Most violating vertex.
    int best = -1;
    double best_dot = kInf;
    for (size_t i = 0; i < points.size(); ++i) {
      double v = dot(w, points[i]);
      if (v < best_dot - 1e-15) {
        best_dot = v;
        best = static_cast<int>(i);
      }
    }
    double ww = norm2(w);
    if (ww - best_dot <= tol * std::max(1.0, ww)) break;
    if (std::find(corral.begin(), corral.end(), best) == corral.end()) {
      corral.push_back(best);
      lambda.push_back(0.0);
    }
    // Minor cycle: pull the affine minimizer back into the simplex.
    for (int minor = 0; minor < 2 * d + 8; ++minor) {
      std::vector<double> alpha;
      if (!affine_min(alpha)) {
        // Affinely dependent corral: drop the smallest-weight member.
        size_t drop = 0;
        for (size_t i = 1; i < lambda.size(); ++i)
          if (lambda[i] < lambda[drop]) drop = i;
        corral.erase(corral.begin() + drop);
        lambda.erase(lambda.begin() + drop);
        continue;
      }
      bool interior = true;
      for (double a : alpha)
        if (a <= 1e-12) interior = false;
      if (interior) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] <= 1e-12)
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      for (size_t i = 0; i < alpha.size(); ++i)
        lambda[i] = (1 - theta) * lambda[i] + theta * alpha[i];
      for (size_t i = lambda.size(); i-- > 0;) {
        if (lambda[i] <= 1e-12) {
          corral.erase(corral.begin() + i);
          lambda.erase(lambda.begin() + i);
        }
      }
    }
    w = Vec(d);
    for (size_t i = 0; i < corral.size(); ++i) w += lambda[i] * points[corral[i]];
  }

  double m = norm(w);
  if (direction) *direction = m > 0 ? normalized(w) : Vec(d);
  return m;
}

namespace {

double min_angle_to(std::span<const Vec> points, const Vec& u) {
  double best = -1.0;
  for (const Vec& p : points) best = std::max(best, dot(u, p));
  return std::acos(std::clamp(best, -1.0, 1.0));
}

void push_unit(std::vector<Vec>& out, Vec v) {
  double r = norm(v);
  if (r < 1e-12) return;
  out.push_back(v * (1.0 / r));
}

// Deterministic unit vector orthogonal to p.
Vec any_orthogonal(const Vec& p) {
  int k = 0;
  for (int i = 1; i < p.size(); ++i)
    if (std::fabs(p[i]) < std::fabs(p[k])) k = i;
  Vec e(p.size());
  e[k] = 1.0;
  return normalized(e - dot(e, p) * p);
}

Vec cross3(const Vec& a, const Vec& b) {
  Vec c(3);
  c[0] = a[1] * b[2] - a[2] * b[1];
  c[1] = a[2] * b[0] - a[0] * b[2];
  c[2] = a[0] * b[1] - a[1] * b[0];
  return c;
}

// Generalized cross product of three vectors in R^4.
Vec cross4(const Vec& a, const Vec& b, const Vec& c) {
  Vec r(4);
  auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2,
                 double c0, double c1, double c2) {
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
           a2 * (b0 * c1 - b1 * c0);
  };
  r[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
  r[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
  r[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
  r[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  return r;
}

}  // namespace

Cap smallest_enclosing_cap(std::span<const Vec> points, double tol) {
  if (points.empty()) throw EmptySet("smallest_enclosing_cap of an empty set");
  const int d = points[0].size();

  Vec u;
  double m = min_norm_point(points, &u);
  if (m > 1e-11) {
    double best = 1.0;
    for (const Vec& p : points) best = std::min(best, dot(u, p));
    return {u, std::acos(std::clamp(best, -1.0, 1.0))};
  }

  // Hull contains the origin: the optimum is the complement of the largest
  // point-free cap. Enumerate its candidate centers (equidistant from one,
  // two, or d points); candidates come from a farthest-point subsample when
  // the input is large, the value is always evaluated on the full input.
  std::vector<Vec> sample(points.begin(), points.end());
  const size_t kMaxSample = d >= 4 ? 60 : 240;
  if (sample.size() > kMaxSample) {
    std::vector<Vec> picked;
    picked.push_back(sample[0]);
    std::vector<double> dist2(sample.size(), kInf);
    while (picked.size() < kMaxSample) {
      size_t far = 0;
      for (size_t i = 0; i < sample.size(); ++i) {
        dist2[i] = std::min(dist2[i], norm2(sample[i] - picked.back()));
        if (dist2[i] > dist2[far]) far = i;
      }
      picked.push_back(sample[far]);
    }
    sample.swap(picked);
  }

  std::vector<Vec> cand;
  for (const Vec& p : sample) {
    push_unit(cand, -p);
  }
  for (size_t i = 0; i < sample.size(); ++i)
    for (size_t j = i + 1; j < sample.size(); ++j) {
      Vec s = sample[i] + sample[j];
      if (norm(s) < 1e-12) {
        Vec o = any_orthogonal(sample[i]);
        cand.push_back(o);
        cand.push_back(-o);
        if (d == 3) cand.push_back(normalized(cross3(sample[i], o)));
      } else {
        push_unit(cand, -s);
        push_unit(cand, s);
      }
      if (d == 3) {
        // Equidistant great-circle directions for the pair.
        Vec axis = sample[i] - sample[j];
        Vec mid = s;
        if (norm(mid) > 1e-12) {
          Vec t = cross3(axis, mid);
          push_unit(cand, t);
          push_unit(cand, -t);
        }
      }
    }
  if (d == 3) {
    for (size_t i = 0; i < sample.size(); ++i)
      for (size_t j = i + 1; j < sample.size(); ++j)
        for (size_t k = j + 1; k < sample.size(); ++k) {
          Vec w = cross3(sample[i] - sample[j], sample[i] - sample[k]);
          push_unit(cand, w);
          push_unit(cand, -w);
        }
  } else if (d == 4) {
    for (size_t i = 0; i < sample.size(); ++i)
      for (size_t j = i + 1; j < sample.size(); ++j)
        for (size_t k = j + 1; k < sample.size(); ++k)
          for (size_t l = k + 1; l < sample.size(); ++l) {
            Vec w = cross4(sample[i] - sample[j], sample[i] - sample[k],
                           sample[i] - sample[l]);
            push_unit(cand, w);
            push_unit(cand, -w);
          }
  }

  double best_val = -1.0;
  Vec best_center;
  bool have = false;
  for (const Vec& c : cand) {
    double v = min_angle_to(points, c);
    Vec center = -c;
    if (!have || v > best_val + tol) {
      best_val = std::max(best_val, v);
      best_center = center;
      have = true;
    } else if (v > best_val - tol && lex_less(center, best_center)) {
      best_val = std::max(best_val, v);
      best_center = center;
    }
  }
  if (!have) {  // degenerate input (all candidates vanished)
    best_center = points[0];
    best_val = min_angle_to(points, -best_center);
  }
  return {best_center, M_PI - best_val};
}

}  // namespace widthlab
