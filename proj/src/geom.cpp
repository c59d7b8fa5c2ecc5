#include "widthlab/geom.hpp"

#include <algorithm>
#include <cstring>

namespace widthlab {

bool solve_dense(int m, double* A, double* b, double tol) {
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::fabs(A[r * m + col]) > std::fabs(A[piv * m + col])) piv = r;
    if (std::fabs(A[piv * m + col]) < tol) return false;
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(A[col * m + c], A[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    double inv = 1.0 / A[col * m + col];
    for (int r = col + 1; r < m; ++r) {
      double f = A[r * m + col] * inv;
      if (f == 0) continue;
      for (int c = col; c < m; ++c) A[r * m + c] -= f * A[col * m + c];
      b[r] -= f * b[col];
    }
  }
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < m; ++c) s -= A[r * m + c] * b[c];
    b[r] = s / A[r * m + r];
  }
  return true;
}

bool solve_least_squares(int rows, int cols, const double* A, const double* b,
                         double* x, double tol) {
  // Normal equations; systems here are tiny and well scaled.
  double N[25], rhs[5];
  for (int i = 0; i < cols; ++i) {
    rhs[i] = 0;
    for (int r = 0; r < rows; ++r) rhs[i] += A[r * cols + i] * b[r];
    for (int j = 0; j < cols; ++j) {
      double s = 0;
      for (int r = 0; r < rows; ++r) s += A[r * cols + i] * A[r * cols + j];
      N[i * cols + j] = s;
    }
  }
  std::memcpy(x, rhs, sizeof(double) * cols);
  return solve_dense(cols, N, x, tol);
}

bool nullspace_direction(int rows, int cols, const double* A, double* w,
                         double tol) {
  // Row-reduce a copy; the single free column yields the direction.
  std::vector<double> M(A, A + rows * cols);
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < rows; ++r)
      if (std::fabs(M[r * cols + col]) > best) {
        best = std::fabs(M[r * cols + col]);
        piv = r;
      }
    if (piv < 0) continue;
    for (int c = 0; c < cols; ++c) std::swap(M[rank * cols + c], M[piv * cols + c]);
    double inv = 1.0 / M[rank * cols + col];
    for (int c = 0; c < cols; ++c) M[rank * cols + c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double f = M[r * cols + col];
      if (f == 0) continue;
      for (int c = 0; c < cols; ++c) M[r * cols + c] -= f * M[rank * cols + c];
    }
    pivot_col[rank++] = col;
  }
  if (rank != cols - 1) return false;
  std::vector<bool> is_pivot(cols, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_col = c;
  for (int c = 0; c < cols; ++c) w[c] = 0;
  w[free_col] = 1;
  for (int r = 0; r < rank; ++r) w[pivot_col[r]] = -M[r * cols + free_col];
  double nrm = 0;
  for (int c = 0; c < cols; ++c) nrm += w[c] * w[c];
  nrm = std::sqrt(nrm);
  for (int c = 0; c < cols; ++c) w[c] /= nrm;
  return true;
}

}  // namespace widthlab
