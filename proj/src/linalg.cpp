#include "weiljets/linalg.hpp"

#include <stdexcept>

namespace weiljets {

bool is_zero_at(const PadicNumber& x, long threshold) {
  return x.is_zero() || x.valuation() >= threshold;
}

Elimination eliminate(PadicMatrix m, long threshold) {
  Elimination out;
  if (m.empty()) return out;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int pivot_row = 0;
  for (int col = 0; col < cols && pivot_row < rows; ++col) {
    int best = -1;
    long best_val = threshold;
    for (int r = pivot_row; r < rows; ++r) {
      if (is_zero_at(m[r][col], threshold)) continue;
      if (best == -1 || m[r][col].valuation() < best_val) {
        best = r;
        best_val = m[r][col].valuation();
      }
    }
    if (best == -1) continue;  // free column
    std::swap(m[pivot_row], m[best]);
    PadicNumber inv = m[pivot_row][col].inverse();
    for (int c = col; c < cols; ++c) m[pivot_row][c] = m[pivot_row][c] * inv;
    for (int r = 0; r < rows; ++r) {
      if (r == pivot_row || is_zero_at(m[r][col], threshold)) continue;
      PadicNumber factor = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] = m[r][c] - factor * m[pivot_row][c];
    }
    out.pivot_columns.push_back(col);
    out.pivot_valuations.push_back(best_val);
    ++pivot_row;
  }
  out.rank = static_cast<int>(out.pivot_columns.size());
  out.reduced = std::move(m);
  return out;
}

std::vector<std::vector<PadicNumber>> kernel_basis(const PadicMatrix& m, long threshold) {
  if (m.empty()) return {};
  const int cols = static_cast<int>(m[0].size());
  const std::int64_t p = m[0][0].prime();
  const int n = m[0][0].precision();
  Elimination e = eliminate(m, threshold);
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<PadicNumber>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<PadicNumber> v(cols, PadicNumber::zero(p, n));
    v[f] = PadicNumber::from_integer(1, p, n);
    for (int r = 0; r < e.rank; ++r) {
      if (!is_zero_at(e.reduced[r][f], threshold)) v[e.pivot_columns[r]] = -e.reduced[r][f];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<PadicNumber> solve_square(const PadicMatrix& m, const std::vector<PadicNumber>& rhs,
                                      long threshold) {
  const int n = static_cast<int>(m.size());
  if (n == 0 || static_cast<int>(m[0].size()) != n || static_cast<int>(rhs.size()) != n)
    throw std::invalid_argument("solve_square: shape mismatch");
  PadicMatrix aug = m;
  for (int r = 0; r < n; ++r) aug[r].push_back(rhs[r]);
  Elimination e = eliminate(std::move(aug), threshold);
  if (e.rank != n || e.pivot_columns.back() >= n)
    throw std::domain_error("solve_square: matrix singular at precision");
  std::vector<PadicNumber> x(n, PadicNumber::zero(rhs[0].prime(), rhs[0].precision()));
  for (int r = 0; r < n; ++r) x[e.pivot_columns[r]] = e.reduced[r][n];
  return x;
}

}  // namespace weiljets
