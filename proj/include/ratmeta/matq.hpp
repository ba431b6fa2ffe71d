#pragma once

#include "ratmeta/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

/// Dense exact-rational square matrix; the bridge into triangular matrix group
/// instances works over these.
class QMatrix {
 public:
  QMatrix() : d_(0) {}
  explicit QMatrix(size_t d) : d_(d), e_(d * d, Rat(0)) {}
  QMatrix(size_t d, std::vector<Rat> entries) : d_(d), e_(std::move(entries)) {
    if (e_.size() != d_ * d_) throw std::invalid_argument("QMatrix: entry count");
  }

  static QMatrix identity(size_t d) {
    QMatrix m(d);
    for (size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
  }

  size_t dim() const { return d_; }
  Rat& operator()(size_t i, size_t j) { return e_[i * d_ + j]; }
  const Rat& operator()(size_t i, size_t j) const { return e_[i * d_ + j]; }
  bool operator==(const QMatrix& o) const { return d_ == o.d_ && e_ == o.e_; }
  bool operator!=(const QMatrix& o) const { return !(*this == o); }

  QMatrix operator*(const QMatrix& o) const {
    if (d_ != o.d_) throw std::invalid_argument("QMatrix: dimension mismatch");
    QMatrix r(d_);
    for (size_t i = 0; i < d_; ++i)
      for (size_t k = 0; k < d_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (size_t j = 0; j < d_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
      }
    return r;
  }

  Rat det() const {
    QMatrix a = *this;
    Rat det = 1;
    for (size_t k = 0; k < d_; ++k) {
      size_t p = k;
      while (p < d_ && a(p, k) == 0) ++p;
      if (p == d_) return 0;
      if (p != k) {
        for (size_t j = 0; j < d_; ++j) std::swap(a(k, j), a(p, j));
        det = -det;
      }
      det *= a(k, k);
      for (size_t i = k + 1; i < d_; ++i) {
        if (a(i, k) == 0) continue;
        Rat f = a(i, k) / a(k, k);
        for (size_t j = k; j < d_; ++j) a(i, j) -= f * a(k, j);
      }
    }
    return det;
  }

  QMatrix inverse() const {
    QMatrix a = *this;
    QMatrix inv = identity(d_);
    for (size_t k = 0; k < d_; ++k) {
      size_t p = k;
      while (p < d_ && a(p, k) == 0) ++p;
      if (p == d_) throw std::invalid_argument("QMatrix: singular matrix");
      if (p != k)
        for (size_t j = 0; j < d_; ++j) {
          std::swap(a(k, j), a(p, j));
          std::swap(inv(k, j), inv(p, j));
        }
      Rat piv = a(k, k);
      for (size_t j = 0; j < d_; ++j) {
        a(k, j) /= piv;
        inv(k, j) /= piv;
      }
      for (size_t i = 0; i < d_; ++i) {
        if (i == k || a(i, k) == 0) continue;
        Rat f = a(i, k);
        for (size_t j = 0; j < d_; ++j) {
          a(i, j) -= f * a(k, j);
          inv(i, j) -= f * inv(k, j);
        }
      }
    }
    return inv;
  }

  bool is_upper_triangular() const {
    for (size_t i = 0; i < d_; ++i) {
      if ((*this)(i, i) == 0) return false;  // invertibility on the diagonal
      for (size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != 0) return false;
    }
    return true;
  }

  bool is_unitriangular() const {
    if (!is_upper_triangular()) return false;
    for (size_t i = 0; i < d_; ++i)
      if ((*this)(i, i) != 1) return false;
    return true;
  }

  std::string key() const {
    std::string s;
    for (const auto& x : e_) s += rat_to_string(x) + ",";
    return s;
  }

 private:
  size_t d_;
  std::vector<Rat> e_;
};

inline QMatrix commutator(const QMatrix& x, const QMatrix& y) {
  return x * y * x.inverse() * y.inverse();
}

/// Group-ops adapter so automata can run over GL(d, Q) directly.
struct QMatrixGroup {
  using Elem = QMatrix;
  size_t d = 0;

  Elem identity() const { return QMatrix::identity(d); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_identity(const Elem& a) const { return a == QMatrix::identity(d); }
  std::string key(const Elem& a) const { return a.key(); }
};

}  // namespace ratmeta
