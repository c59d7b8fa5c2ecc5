#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace widthlab {

// Small fixed-capacity vector for ambient coordinates (ambient dim <= 4).
struct Vec {
  std::array<double, 4> a{0, 0, 0, 0};
  int n = 0;

  Vec() = default;
  explicit Vec(int dim) : n(dim) {}
  Vec(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) a[i++] = x;
  }
  static Vec from(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (int i = 0; i < v.n; ++i) v.a[i] = xs[i];
    return v;
  }
  std::vector<double> to_std() const { return {a.begin(), a.begin() + n}; }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }
  int size() const { return n; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec x, const Vec& y) { return x += y; }
  friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
  friend Vec operator*(Vec x, double s) { return x *= s; }
  friend Vec operator*(double s, Vec x) { return x *= s; }
  friend Vec operator-(Vec x) {
    for (int i = 0; i < x.n; ++i) x.a[i] = -x.a[i];
    return x;
  }
  friend bool operator==(const Vec& x, const Vec& y) {
    if (x.n != y.n) return false;
    for (int i = 0; i < x.n; ++i)
      if (x.a[i] != y.a[i]) return false;
    return true;
  }
};

inline double dot(const Vec& x, const Vec& y) {
  double s = 0;
  for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
  return s;
}

inline double norm2(const Vec& x) { return dot(x, x); }
inline double norm(const Vec& x) { return std::sqrt(norm2(x)); }

inline double dist_euclidean(const Vec& x, const Vec& y) { return norm(x - y); }

inline double norm_inf(const Vec& x) {
  double m = 0;
  for (int i = 0; i < x.n; ++i) m = std::max(m, std::fabs(x.a[i]));
  return m;
}

inline Vec normalized(const Vec& x) {
  double r = norm(x);
  Vec y = x;
  if (r > 0) y *= 1.0 / r;
  return y;
}

// Lexicographic comparison, used for deterministic tie-breaking.
inline bool lex_less(const Vec& x, const Vec& y) {
  for (int i = 0; i < x.n && i < y.n; ++i) {
    if (x.a[i] < y.a[i]) return true;
    if (x.a[i] > y.a[i]) return false;
  }
  return x.n < y.n;
}

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (int i = 0; i < v.n; ++i) os << (i ? ", " : "") << v.a[i];
  return os << ')';
}

// Dense Gaussian elimination with partial pivoting for systems up to 5x5.
// Returns false if the matrix is singular relative to `tol`.
// A is row-major m x m, b has length m; the solution overwrites b.
bool solve_dense(int m, double* A, double* b, double tol = 1e-13);

// Least squares min |A x - b| for A (rows x cols), rows >= cols, via normal
// equations. Returns false on rank deficiency. x has length cols.
bool solve_least_squares(int rows, int cols, const double* A, const double* b,
                         double* x, double tol = 1e-12);

// Nullspace direction of A (rows x cols) with rank cols-1; returns false if
// the rank is lower. w has length cols.
bool nullspace_direction(int rows, int cols, const double* A, double* w,
                         double tol = 1e-10);

}  // namespace widthlab
