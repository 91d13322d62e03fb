#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "seqlab/scalar.hpp"

namespace seqlab {

template <Scalar S>
using Matrix = std::vector<std::vector<S>>;

/// Reduced row echelon form of a matrix.
template <Scalar S>
struct RowEchelon {
  Matrix<S> rows;                   ///< nonzero rows of the RREF, one per pivot
  std::vector<std::size_t> pivots;  ///< pivot column of each row, increasing
  Matrix<S> transform;              ///< rows[i] = sum_j transform[i][j] * input[j] (when tracked)

  std::size_t rank() const noexcept { return rows.size(); }
};

namespace detail {

template <Scalar S>
double matrix_scale(const Matrix<S>& a) {
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) scale = std::max(scale, ScalarOps<S>::to_double(ScalarOps<S>::abs(v)));
  return scale;
}

}  // namespace detail

/// Gauss-Jordan elimination. Float mode uses partial pivoting and treats
/// entries below eta * max|a| as zero; exact mode pivots on the first
/// nonzero entry. Deterministic in both modes.
template <Scalar S>
RowEchelon<S> reduce(Matrix<S> a, double eta, bool track_transform = false) {
  using Ops = ScalarOps<S>;
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  const double tol = Ops::exact ? 0.0 : eta * std::max(1.0, detail::matrix_scale(a));

  Matrix<S> t;
  if (track_transform) {
    t.assign(m, std::vector<S>(m, S(0)));
    for (std::size_t i = 0; i < m; ++i) t[i][i] = S(1);
  }

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t best = m;
    if constexpr (Ops::exact) {
      for (std::size_t i = r; i < m; ++i) {
        if (sgn(a[i][col]) != 0) {
          best = i;
          break;
        }
      }
    } else {
      double best_abs = tol;
      for (std::size_t i = r; i < m; ++i) {
        double v = std::fabs(a[i][col]);
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
      if (best == m) {
        for (std::size_t i = r; i < m; ++i) a[i][col] = 0.0;
      }
    }
    if (best == m) continue;

    std::swap(a[r], a[best]);
    if (track_transform) std::swap(t[r], t[best]);

    const S inv = S(1) / a[r][col];
    for (std::size_t j = col; j < n; ++j) a[r][j] *= inv;
    a[r][col] = S(1);
    if (track_transform)
      for (auto& v : t[r]) v *= inv;

    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const S factor = a[i][col];
      if (Ops::is_zero(factor, 0.0)) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= factor * a[r][j];
      a[i][col] = S(0);
      if (track_transform)
        for (std::size_t j = 0; j < m; ++j) t[i][j] -= factor * t[r][j];
    }
    pivots.push_back(col);
    ++r;
  }

  a.resize(r);
  if (track_transform) t.resize(r);
  return RowEchelon<S>{std::move(a), std::move(pivots), std::move(t)};
}

template <Scalar S>
std::size_t rank(Matrix<S> a, double eta) {
  return reduce(std::move(a), eta).rank();
}

/// Nullspace vector of `a` whose lexicographically-first free variable is 1
/// and whose other free variables are 0. Empty when the nullspace is trivial.
template <Scalar S>
std::optional<std::vector<S>> first_nullspace_vector(Matrix<S> a, std::size_t columns, double eta) {
  auto ech = reduce(std::move(a), eta);
  std::size_t free_col = columns;
  for (std::size_t c = 0, k = 0; c < columns; ++c) {
    if (k < ech.pivots.size() && ech.pivots[k] == c) {
      ++k;
      continue;
    }
    free_col = c;
    break;
  }
  if (free_col == columns) return std::nullopt;
  std::vector<S> x(columns, S(0));
  x[free_col] = S(1);
  for (std::size_t i = 0; i < ech.rank(); ++i) {
    if (ech.pivots[i] < free_col) x[ech.pivots[i]] = -ech.rows[i][free_col];
  }
  return x;
}

/// Basis of the nullspace of `a` (columns unknowns), one vector per free column.
template <Scalar S>
Matrix<S> nullspace_basis(Matrix<S> a, std::size_t columns, double eta) {
  auto ech = reduce(std::move(a), eta);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  Matrix<S> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> x(columns, S(0));
    x[f] = S(1);
    for (std::size_t i = 0; i < ech.rank(); ++i) x[ech.pivots[i]] = -ech.rows[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves the square system a x = b; empty if singular (relative to eta in float mode).
template <Scalar S>
std::optional<std::vector<S>> solve_square(Matrix<S> a, std::vector<S> b, double eta) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto ech = reduce(std::move(a), eta);
  if (ech.rank() < n || ech.pivots.back() >= n) return std::nullopt;
  std::vector<S> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ech.rows[i][n];
  return x;
}

/// Inverse of a square matrix; empty if singular.
template <Scalar S>
std::optional<Matrix<S>> invert(const Matrix<S>& a, double eta) {
  const std::size_t n = a.size();
  Matrix<S> aug(n, std::vector<S>(2 * n, S(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = S(1);
  }
  auto ech = reduce(std::move(aug), eta);
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<S> inv(n, std::vector<S>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = ech.rows[i][n + j];
  return inv;
}

}  // namespace seqlab
