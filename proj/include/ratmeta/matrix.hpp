#pragma once

#include "ratmeta/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace ratmeta {

/// Dense arbitrary-precision integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Int(0)) {}
  IntMatrix(size_t rows, size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("IntMatrix: entry count");
  }

  static IntMatrix identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Int& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Int& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  IntMatrix multiply(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  IntMatrix transposed() const {
    IntMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  void swap_rows(size_t a, size_t b) {
    for (size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(size_t a, size_t b) {
    for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += c * row b
  void add_row(size_t a, size_t b, const Int& c) {
    for (size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
  }
  void add_col(size_t a, size_t b, const Int& c) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
  }
  void negate_row(size_t a) {
    for (size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }
  void negate_col(size_t a) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
  }

  /// Exact determinant via fraction-free Bareiss elimination.
  Int det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: square matrix required");
    size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sgn = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        size_t p = k + 1;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        a.swap_rows(k, p);
        sgn = -sgn;
      }
      for (size_t i = k + 1; i < n; ++i)
        for (size_t j = k + 1; j < n; ++j)
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      prev = a(k, k);
    }
    return sgn > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
  }

 private:
  size_t rows_, cols_;
  std::vector<Int> e_;
};

struct SmithForm {
  IntMatrix U, D, V;  // U * M * V == D
};

/// Smith normal form with unimodular transforms. D diagonal, nonnegative,
/// with d1 | d2 | ... along the diagonal.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  size_t r = m.rows(), c = m.cols();
  SmithForm s{IntMatrix::identity(r), m, IntMatrix::identity(c)};
  IntMatrix& d = s.D;

  auto abs_lt = [](const Int& a, const Int& b) {
    return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
  };

  size_t t = std::min(r, c);
  for (size_t k = 0; k < t; ++k) {
    // move a smallest nonzero entry of the trailing block to (k, k)
    for (;;) {
      size_t pi = k, pj = k;
      bool found = false;
      for (size_t i = k; i < r; ++i)
        for (size_t j = k; j < c; ++j)
          if (d(i, j) != 0 && (!found || abs_lt(d(i, j), d(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found) goto divisibility;  // trailing block is zero
      if (pi != k) {
        d.swap_rows(k, pi);
        s.U.swap_rows(k, pi);
      }
      if (pj != k) {
        d.swap_cols(k, pj);
        s.V.swap_cols(k, pj);
      }
      bool clean = true;
      for (size_t i = k + 1; i < r; ++i)
        if (d(i, k) != 0) {
          Int q = d(i, k) / d(k, k);
          d.add_row(i, k, -q);
          s.U.add_row(i, k, -q);
          if (d(i, k) != 0) clean = false;
        }
      for (size_t j = k + 1; j < c; ++j)
        if (d(k, j) != 0) {
          Int q = d(k, j) / d(k, k);
          d.add_col(j, k, -q);
          s.V.add_col(j, k, -q);
          if (d(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // pivot must divide every entry of the remaining block
      bool divides_all = true;
      for (size_t i = k + 1; i < r && divides_all; ++i)
        for (size_t j = k + 1; j < c && divides_all; ++j)
          if (d(i, j) % d(k, k) != 0) {
            d.add_row(k, i, 1);
            s.U.add_row(k, i, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (d(k, k) < 0) {
      d.negate_row(k);
      s.U.negate_row(k);
    }
  }
divisibility:
  for (size_t k = 0; k < t; ++k)
    if (d(k, k) < 0) {
      d.negate_row(k);
      s.U.negate_row(k);
    }
  return s;
}

/// Row-style Hermite normal form: returns (H, rank) where H's nonzero rows are
/// an upper-echelon basis of the row lattice, pivots positive, entries above a
/// pivot reduced into [0, pivot).
inline std::pair<IntMatrix, size_t> hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  size_t rows = h.rows(), cols = h.cols();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    // gcd out the column below `row`
    for (;;) {
      size_t p = rows;
      for (size_t i = row; i < rows; ++i)
        if (h(i, col) != 0 &&
            (p == rows ||
             boost::multiprecision::abs(h(i, col)) < boost::multiprecision::abs(h(p, col))))
          p = i;
      if (p == rows) break;  // column zero from `row` down
      if (p != row) h.swap_rows(row, p);
      bool done = true;
      for (size_t i = row + 1; i < rows; ++i)
        if (h(i, col) != 0) {
          Int q = h(i, col) / h(row, col);
          h.add_row(i, row, -q);
          if (h(i, col) != 0) done = false;
        }
      if (done) break;
    }
    if (row < rows && h(row, col) != 0) {
      if (h(row, col) < 0) h.negate_row(row);
      for (size_t i = 0; i < row; ++i) {
        Int q = h(i, col) / h(row, col);
        if (h(i, col) - q * h(row, col) < 0) q -= 1;  // floor division
        if (q != 0) h.add_row(i, row, -q);
      }
      ++row;
    }
  }
  return {h, row};
}

/// Basis of {x : M x = 0} over the integers, returned as rows. Computed from
/// the HNF of [M^T | I]: rows whose M^T-part vanished carry kernel vectors.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  size_t r = m.rows(), c = m.cols();
  IntMatrix aug(c, r + c);
  for (size_t i = 0; i < c; ++i) {
    for (size_t j = 0; j < r; ++j) aug(i, j) = m(j, i);
    aug(i, r + i) = 1;
  }
  auto [h, rank] = hermite_normal_form(aug);
  (void)rank;
  std::vector<std::vector<Int>> basis;
  for (size_t i = 0; i < c; ++i) {
    bool zero_left = true;
    bool zero_right = true;
    for (size_t j = 0; j < r && zero_left; ++j)
      if (h(i, j) != 0) zero_left = false;
    for (size_t j = 0; j < c && zero_right; ++j)
      if (h(i, r + j) != 0) zero_right = false;
    if (zero_left && !zero_right) {
      std::vector<Int> v(c);
      for (size_t j = 0; j < c; ++j) v[j] = h(i, r + j);
      basis.push_back(std::move(v));
    }
  }
  IntMatrix k(basis.size(), c);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < c; ++j) k(i, j) = basis[i][j];
  return k;
}

}  // namespace ratmeta
