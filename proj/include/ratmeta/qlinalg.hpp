#pragma once

#include "ratmeta/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ratmeta {

/// Row-echelon reduction in place; returns pivot column per row.
inline std::vector<size_t> q_row_reduce(std::vector<QVec>& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rat inv = Rat(1) / m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

inline size_t q_rank(std::vector<QVec> m) { return q_row_reduce(m).size(); }

/// One solution of A x = b, if any.
inline std::optional<QVec> q_solve(const std::vector<QVec>& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("q_solve: shape");
  if (a.empty()) return QVec{};
  size_t cols = a[0].size();
  std::vector<QVec> aug(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = q_row_reduce(aug);
  for (size_t i = 0; i < aug.size(); ++i)
    if (pivots[i] == cols) return std::nullopt;  // 0 = 1 row
  QVec x(cols, Rat(0));
  for (size_t i = 0; i < aug.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

/// Basis of {x : A x = 0} over the rationals.
inline std::vector<QVec> q_nullspace(const std::vector<QVec>& a, size_t cols) {
  std::vector<QVec> m = a;
  auto pivots = q_row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    QVec v(cols, Rat(0));
    v[free_col] = 1;
    for (size_t i = 0; i < m.size(); ++i) v[pivots[i]] = -m[i][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ratmeta
