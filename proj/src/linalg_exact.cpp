#include "hypres/linalg_exact.hpp"

#include <stdexcept>

namespace hypres {

std::optional<RVector> rational_solve(RMatrix a, RVector b) {
  const size_t n = a.size();
  if (n == 0 || b.size() != n) throw std::invalid_argument("rational_solve: bad shapes");
  for (auto& row : a)
    if (row.size() != n) throw std::invalid_argument("rational_solve: non-square");
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rational inv = Rational(1) / a[col][col];
    for (size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

std::optional<RVector> rational_solve_overdetermined(RMatrix a, RVector b) {
  const size_t rows = a.size();
  if (rows == 0) return std::nullopt;
  const size_t cols = a[0].size();
  if (b.size() != rows) throw std::invalid_argument("bad shapes");
  std::vector<int> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    Rational inv = Rational(1) / a[rank][col];
    for (size_t j = col; j < cols; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      Rational f = a[r][col];
      for (size_t j = col; j < cols; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  // consistency of the remaining rows
  for (size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  for (size_t col = 0; col < cols; ++col)
    if (pivot_of_col[col] < 0) return std::nullopt;  // underdetermined
  RVector x(cols);
  for (size_t col = 0; col < cols; ++col) x[col] = b[pivot_of_col[col]];
  return x;
}

Rational rational_det(RMatrix a) {
  const size_t n = a.size();
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rational inv = Rational(1) / a[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      Rational f = a[r][col] * inv;
      for (size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return det;
}

std::optional<RMatrix> rational_inverse(const RMatrix& a) {
  const size_t n = a.size();
  RMatrix aug = a;
  for (size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = Rational(1);
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && aug[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(aug[piv], aug[col]);
    Rational inv = Rational(1) / aug[col][col];
    for (size_t j = col; j < 2 * n; ++j) aug[col][j] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col].is_zero()) continue;
      Rational f = aug[r][col];
      for (size_t j = col; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  RMatrix out(n, RVector(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

RMatrix rational_matmul(const RMatrix& a, const RMatrix& b) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RMatrix out(n, RVector(m, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

}  // namespace hypres
