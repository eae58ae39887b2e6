#include "ainf/linalg.hpp"

namespace ainf {

Rref rref(Matrix m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int c = col; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
    Rational inv = m.at(row, col);
    for (int c = col; c < m.cols(); ++c) m.at(row, c) /= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return Rref{std::move(m), std::move(pivots)};
}

std::vector<std::vector<Rational>> kernel_basis(const Rref& r) {
  const Matrix& m = r.m;
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rational>> out;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (int row = 0; row < r.rank(); ++row)
      v[r.pivot_cols[row]] = -m.at(row, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const Matrix& m,
                                           const std::vector<Rational>& b) {
  Matrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  Rref rr = rref(std::move(aug));
  std::vector<Rational> x(m.cols());
  for (int row = 0; row < rr.rank(); ++row) {
    int col = rr.pivot_cols[row];
    if (col == m.cols()) return std::nullopt;  // 0 = 1 row
    x[col] = rr.m.at(row, m.cols());
  }
  return x;
}

std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  Rref rr = rref(std::move(aug));
  if (rr.rank() < n || rr.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = rr.m.at(r, n + c);
  return inv;
}

}  // namespace ainf
