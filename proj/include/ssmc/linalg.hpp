#pragma once

// Tiny dense kernels for the chart dimension range (n <= 8): LU inversion with
// partial pivoting for the metric inverse, and a Jacobi eigenvalue sweep for
// the metric signature.  No external dependency is worth pulling in for 8x8.

#include <cmath>
#include <vector>

#include "ssmc/errors.hpp"

namespace ssmc {

// Invert a row-major n x n matrix in place of `inv`; returns the determinant.
// Throws singular_metric when a pivot (or the determinant) underflows the
// 1e-10 conditioning floor used across the catalog.
inline double lu_invert(int n, const std::vector<double>& a, std::vector<double>& inv) {
  std::vector<double> lu = a;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  double det = 1.0;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(lu[col * n + col]);
    for (int row = col + 1; row < n; ++row) {
      const double v = std::fabs(lu[row * n + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (best < 1e-300) throw singular_metric("matrix is numerically singular");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(lu[pivot * n + j], lu[col * n + j]);
      std::swap(perm[pivot], perm[col]);
      det = -det;
    }
    det *= lu[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      const double f = lu[row * n + col] / lu[col * n + col];
      lu[row * n + col] = f;
      for (int j = col + 1; j < n; ++j) lu[row * n + j] -= f * lu[col * n + j];
    }
  }
  if (std::fabs(det) < 1e-10) throw singular_metric("|det| below the 1e-10 conditioning floor");

  inv.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> col_b(n), y(n);
  for (int rhs = 0; rhs < n; ++rhs) {
    for (int i = 0; i < n; ++i) col_b[i] = (perm[i] == rhs) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i) {
      y[i] = col_b[i];
      for (int j = 0; j < i; ++j) y[i] -= lu[i * n + j] * y[j];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) y[i] -= lu[i * n + j] * y[j];
      y[i] /= lu[i * n + i];
      inv[i * n + rhs] = y[i];
    }
  }
  return det;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations (ascending).
// Only used for signature classification, so modest accuracy suffices.
inline std::vector<double> symmetric_eigenvalues(int n, std::vector<double> a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a[i * n + i];
  for (int i = 1; i < n; ++i)
    for (int j = i; j > 0 && eig[j] < eig[j - 1]; --j) std::swap(eig[j], eig[j - 1]);
  return eig;
}

}  // namespace ssmc
