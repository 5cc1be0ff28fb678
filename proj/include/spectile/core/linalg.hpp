#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "spectile/core/rational.hpp"

namespace spectile::linalg {

inline RMat transpose(const RMat& a) {
  if (a.empty()) return {};
  RMat t(a[0].size(), RVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline RVec multiply(const RMat& a, const RVec& x) {
  RVec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

inline RMat multiply(const RMat& a, const RMat& b) {
  const RMat bt = transpose(b);
  RMat c(a.size(), RVec(bt.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < bt.size(); ++j) c[i][j] = dot(a[i], bt[j]);
  return c;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RMat a) { return rref(a).size(); }

inline Rational determinant(RMat a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

/// Basis of {x : a x = 0}.
inline std::vector<RVec> nullspace(RMat a, std::size_t cols) {
  std::vector<RVec> basis;
  if (a.empty()) {
    for (std::size_t j = 0; j < cols; ++j) {
      RVec e(cols, Rational(0));
      e[j] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RVec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(v);
  }
  return basis;
}

/// Unique solution of a x = b for square invertible a.
inline std::optional<RVec> solve(const RMat& a, const RVec& b) {
  const std::size_t n = a.size();
  RMat aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  const auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  RVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline std::optional<RMat> inverse(const RMat& a) {
  const std::size_t n = a.size();
  RMat aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  const auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RMat inv(n, RVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Rank of the affine hull of a point set (points.size() - 1 at most).
inline std::size_t affine_rank(const std::vector<RVec>& points) {
  if (points.size() < 2) return 0;
  RMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(diffs);
}

/// Column-style Hermite reduction of integer generators. Input columns
/// span a lattice of rank r; returns r basis columns (as vectors).
inline std::vector<std::vector<Integer>> integer_lattice_basis(std::vector<std::vector<Integer>> cols) {
  if (cols.empty()) return {};
  const std::size_t d = cols[0].size();
  std::vector<std::vector<Integer>> basis;
  std::size_t row = 0;
  while (row < d && !cols.empty()) {
    // Euclid on the entries of `row` across remaining columns.
    while (true) {
      std::size_t best = cols.size();
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        if (best == cols.size() || abs(cols[j][row]) < abs(cols[best][row])) best = j;
      }
      if (best == cols.size()) break;
      bool reduced = false;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (j == best || cols[j][row] == 0) continue;
        const Integer q = cols[j][row] / cols[best][row];
        for (std::size_t i = 0; i < d; ++i) cols[j][i] -= q * cols[best][i];
        reduced = true;
      }
      if (!reduced) {
        auto pivot = cols[best];
        if (pivot[row] < 0)
          for (auto& x : pivot) x = -x;
        basis.push_back(pivot);
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
    }
    cols.erase(std::remove_if(cols.begin(), cols.end(),
                              [](const std::vector<Integer>& c) {
                                for (const auto& x : c)
                                  if (x != 0) return false;
                                return true;
                              }),
               cols.end());
    ++row;
  }
  return basis;
}

}  // namespace spectile::linalg
