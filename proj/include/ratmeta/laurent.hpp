#pragma once

#include "ratmeta/direction.hpp"
#include "ratmeta/polytope.hpp"
#include "ratmeta/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

/// Exponent vector of a Laurent monomial; length is the ambient variable count
/// (zero variables means the constant ring).
using ExpVec = std::vector<int64_t>;

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("ExpVec: length mismatch");
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline ExpVec exp_neg(const ExpVec& a) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

/// Graded lexicographic: by total degree, ties coordinatewise.
inline bool exp_less(const ExpVec& a, const ExpVec& b) {
  int64_t da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
/// Terms are kept sorted in graded-lex order with no zero coefficients, so
/// equality is representational.
class LaurentPoly {
 public:
  explicit LaurentPoly(size_t n = 0) : n_(n) {}

  static LaurentPoly zero(size_t n) { return LaurentPoly(n); }
  static LaurentPoly constant(size_t n, const Int& c) {
    LaurentPoly p(n);
    if (c != 0) p.terms_.emplace_back(ExpVec(n, 0), c);
    return p;
  }
  static LaurentPoly monomial(size_t n, const ExpVec& e, const Int& c) {
    if (e.size() != n) throw std::invalid_argument("LaurentPoly: exponent length");
    LaurentPoly p(n);
    if (c != 0) p.terms_.emplace_back(e, c);
    return p;
  }

  size_t vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::pair<ExpVec, Int>>& terms() const { return terms_; }

  bool operator==(const LaurentPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

  LaurentPoly operator+(const LaurentPoly& o) const {
    check(o);
    LaurentPoly r(n_);
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && exp_less(terms_[i].first, o.terms_[j].first))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || exp_less(o.terms_[j].first, terms_[i].first)) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        Int c = terms_[i].second + o.terms_[j].second;
        if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r(*this);
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

  LaurentPoly operator*(const LaurentPoly& o) const {
    check(o);
    std::map<ExpVec, Int, decltype(&exp_less)> acc(&exp_less);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) acc[exp_add(ea, eb)] += ca * cb;
    LaurentPoly r(n_);
    for (auto& [e, c] : acc)
      if (c != 0) r.terms_.emplace_back(e, c);
    return r;
  }

  LaurentPoly scalar_mul(const Int& c) const {
    LaurentPoly r(n_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  /// Multiplication by c * X^e without building a temporary polynomial.
  LaurentPoly shift(const ExpVec& e, const Int& c = Int(1)) const {
    if (c == 0) return LaurentPoly(n_);
    LaurentPoly r(n_);
    r.terms_.reserve(terms_.size());
    for (const auto& [ex, co] : terms_) r.terms_.emplace_back(exp_add(ex, e), co * c);
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const auto& a, const auto& b) { return exp_less(a.first, b.first); });
    return r;
  }

  Int coefficient(const ExpVec& e) const {
    for (const auto& [ex, c] : terms_)
      if (ex == e) return c;
    return 0;
  }

  bool all_coefficients_nonnegative() const {
    for (const auto& t : terms_)
      if (t.second < 0) return false;
    return true;
  }

  Int coefficient_sum_abs() const {
    Int s = 0;
    for (const auto& t : terms_) s += boost::multiprecision::abs(t.second);
    return s;
  }

  /// Exact substitution X_i -> r_i, every r_i nonzero (and positive in the
  /// callers that quantify over R_{>0}^n).
  Rat evaluate(const QVec& r) const {
    if (r.size() != n_) throw std::invalid_argument("evaluate: point length");
    for (const auto& x : r)
      if (x == 0) throw std::invalid_argument("evaluate: zero coordinate");
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
      Rat m(c);
      for (size_t i = 0; i < n_; ++i) {
        int64_t k = e[i];
        Rat base = k >= 0 ? r[i] : Rat(1) / r[i];
        for (int64_t j = 0; j < (k >= 0 ? k : -k); ++j) m *= base;
      }
      acc += m;
    }
    return acc;
  }

 private:
  void check(const LaurentPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("LaurentPoly: variable count mismatch");
  }
  size_t n_;
  std::vector<std::pair<ExpVec, Int>> terms_;  // sorted graded-lex, nonzero coefficients
};

struct WeightedDegree {
  bool neg_infinity = false;  // deg_v(0) = -infinity
  Rat value;
  LaurentPoly initial;
};

/// Weighted degree max{v·a} over the support, plus the initial polynomial
/// (sum of the terms attaining it). For the zero polynomial the degree is
/// -infinity and the initial polynomial is zero.
inline WeightedDegree deg_and_initial(const LaurentPoly& f, const Direction& v) {
  WeightedDegree r;
  if (f.is_zero()) {
    r.neg_infinity = true;
    r.initial = LaurentPoly::zero(f.vars());
    return r;
  }
  if (v.v.size() != f.vars()) throw std::invalid_argument("deg_and_initial: dimension mismatch");
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    Int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += v.v[i] * e[i];
    if (first || Rat(d) > r.value) {
      r.value = Rat(d);
      first = false;
    }
  }
  LaurentPoly init(f.vars());
  for (const auto& [e, c] : f.terms()) {
    Int d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += v.v[i] * e[i];
    if (Rat(d) == r.value) init = init + LaurentPoly::monomial(f.vars(), e, c);
  }
  r.initial = init;
  return r;
}

/// Convex hull of the exponent vectors. Rejects the zero polynomial.
inline Polytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("newton_polytope: zero polynomial");
  std::vector<QVec> pts;
  for (const auto& [e, c] : f.terms()) {
    QVec p(f.vars());
    for (size_t i = 0; i < f.vars(); ++i) p[i] = Rat(Int(e[i]));
    pts.push_back(std::move(p));
  }
  return convex_hull_faces(pts).hull;
}

// ---------------------------------------------------------------------------
// Text grammar:  poly := term (('+'|'-') term)* ;  term := [int] ('*'? var)* ;
// var := 'X' index ('^' int)?   Whitespace-insensitive.
// ---------------------------------------------------------------------------

inline std::string format_poly(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    Int coeff = c;
    if (out.empty()) {
      if (coeff < 0) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += coeff < 0 ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    bool any_var = false;
    std::string vars;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) vars += "*";
      vars += "X" + std::to_string(i + 1);
      if (e[i] != 1) vars += "^" + std::to_string(e[i]);
      any_var = true;
    }
    if (!any_var) {
      out += coeff.str();
    } else {
      if (coeff != 1) out += coeff.str() + "*";
      out += vars;
    }
  }
  return out;
}

namespace detail {

struct PolyParser {
  const std::string& s;
  size_t pos = 0;
  size_t n;

  explicit PolyParser(const std::string& str, size_t vars) : s(str), n(vars) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::optional<Int> integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      return std::nullopt;
    }
    return Int(s.substr(start, pos - start));
  }

  LaurentPoly term() {
    skip_ws();
    Int coeff = 1;
    ExpVec e(n, 0);
    bool saw_anything = false;
    if (auto c = integer()) {
      coeff = *c;
      saw_anything = true;
    }
    for (;;) {
      skip_ws();
      size_t save = pos;
      eat('*');
      skip_ws();
      if (pos < s.size() && (s[pos] == 'X' || s[pos] == 'x')) {
        ++pos;
        auto idx = integer();
        if (!idx || *idx < 1 || *idx > Int(n))
          throw std::invalid_argument("poly parse: bad variable index in '" + s + "'");
        size_t i = static_cast<size_t>(idx->convert_to<int64_t>()) - 1;
        Int ex = 1;
        if (eat('^')) {
          auto p = integer();
          if (!p) throw std::invalid_argument("poly parse: missing exponent in '" + s + "'");
          ex = *p;
        }
        e[i] += ex.convert_to<int64_t>();
        saw_anything = true;
      } else {
        pos = save;
        break;
      }
    }
    if (!saw_anything) throw std::invalid_argument("poly parse: empty term in '" + s + "'");
    return LaurentPoly::monomial(n, e, coeff);
  }

  LaurentPoly parse() {
    skip_ws();
    LaurentPoly acc(n);
    if (pos < s.size() && s[pos] == '-') {
      ++pos;
      acc = -term();
    } else {
      if (pos < s.size() && s[pos] == '+') ++pos;
      acc = term();
    }
    for (;;) {
      skip_ws();
      if (pos >= s.size()) break;
      if (s[pos] == '+') {
        ++pos;
        acc = acc + term();
      } else if (s[pos] == '-') {
        ++pos;
        acc = acc - term();
      } else {
        throw std::invalid_argument("poly parse: unexpected '" + std::string(1, s[pos]) +
                                    "' in '" + s + "'");
      }
    }
    return acc;
  }
};

}  // namespace detail

inline LaurentPoly parse_poly(const std::string& text, size_t n) {
  detail::PolyParser p(text, n);
  auto r = p.parse();
  return r;
}

}  // namespace ratmeta
