#include "seqlab/lp_solver.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/errors.hpp"

namespace seqlab {

BoxLpResult maximize_in_box(const Matrix<double>& b, const std::vector<double>& c) {
  const std::size_t m = b.size();
  const std::size_t d = c.size();
  for (const auto& row : b) {
    if (row.size() != d) throw Error(Errc::LengthMismatch, "box LP: row length differs from c");
  }

  std::vector<double> colscale(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    double mx = 0.0;
    for (const auto& row : b) mx = std::max(mx, std::fabs(row[i]));
    if (mx > 0.0) colscale[i] = 1.0 / mx;
  }

  // Columns: x+ (d), x- (d), slacks (2m); last column is the right-hand side.
  const std::size_t rows = 2 * m;
  const std::size_t cols = 2 * d + rows;
  std::vector<double> tab(rows * (cols + 1), 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return tab[r * (cols + 1) + col]; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      const double v = b[r][i] * colscale[i];
      at(r, i) = v;
      at(r, d + i) = -v;
      at(m + r, i) = -v;
      at(m + r, d + i) = v;
    }
    at(r, 2 * d + r) = 1.0;
    at(m + r, 2 * d + m + r) = 1.0;
    at(r, cols) = 1.0;
    at(m + r, cols) = 1.0;
  }
  // Reduced costs for maximization: entering columns have z_j < 0.
  std::vector<double> z(cols + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    z[i] = -c[i] * colscale[i];
    z[d + i] = c[i] * colscale[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = 2 * d + r;

  const double tol = 1e-11;
  const std::size_t max_iter = 50 * (rows + cols) + 1000;
  BoxLpResult res;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_iter) throw Error(Errc::SearchExhausted, "box LP: iteration limit reached");
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (z[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    double best = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = at(r, enter);
      if (a <= tol) continue;
      const double ratio = at(r, cols) / a;
      if (leave == rows || ratio < best - 1e-15 ||
          (std::fabs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) {
      res.bounded = false;
      return res;
    }

    const double piv = at(leave, enter);
    for (std::size_t j = 0; j <= cols; ++j) at(leave, j) /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) at(r, j) -= f * at(leave, j);
    }
    const double fz = z[enter];
    for (std::size_t j = 0; j <= cols; ++j) z[j] -= fz * at(leave, j);
    basis[leave] = enter;
  }

  std::vector<double> xs(2 * d, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < 2 * d) xs[basis[r]] = at(r, cols);
  }
  res.x.resize(d);
  res.value = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    res.x[i] = (xs[i] - xs[d + i]) * colscale[i];
    res.value += c[i] * res.x[i];
  }
  return res;
}

}  // namespace seqlab
