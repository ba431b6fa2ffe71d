#pragma once

#include "ratmeta/laurent.hpp"
#include "ratmeta/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Strong Groebner machinery for submodules of Z[x_1..x_m]^d, monomials with
/// nonnegative exponents. Used by the Groebner module backend after encoding
/// Laurent variables as pairs (x_i, y_i) with x_i y_i = 1.
namespace groebner {

struct Term {
  ExpVec mono;  // nonnegative entries
  size_t pos = 0;
  Int coeff;
};

/// Module element as a term list, kept sorted descending in the order:
/// graded-lex on the monomial, then position (term over position).
using Elem = std::vector<Term>;

inline bool term_order_less(const ExpVec& ma, size_t pa, const ExpVec& mb, size_t pb) {
  if (ma != mb) return exp_less(ma, mb);
  return pa > pb;  // lower position is considered larger
}

inline void normalize(Elem& e) {
  std::sort(e.begin(), e.end(), [](const Term& a, const Term& b) {
    return term_order_less(b.mono, b.pos, a.mono, a.pos);  // descending
  });
  Elem out;
  for (auto& t : e) {
    if (!out.empty() && out.back().mono == t.mono && out.back().pos == t.pos) {
      out.back().coeff += t.coeff;
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(std::move(t));
    }
  }
  e = std::move(out);
}

inline Elem add(const Elem& a, const Elem& b) {
  Elem r = a;
  r.insert(r.end(), b.begin(), b.end());
  normalize(r);
  return r;
}

inline Elem scale_shift(const Elem& a, const Int& c, const ExpVec& shift) {
  Elem r;
  if (c == 0) return r;
  r.reserve(a.size());
  for (const auto& t : a) r.push_back({exp_add(t.mono, shift), t.pos, t.coeff * c});
  normalize(r);
  return r;
}

inline bool mono_divides(const ExpVec& a, const ExpVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExpVec mono_lcm(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

/// Canonical full reduction: every term whose monomial-with-position is
/// divisible by some basis lead gets its coefficient reduced into [0, |lead|).
/// With a strong basis this yields unique normal forms.
inline Elem reduce(Elem e, const std::vector<Elem>& basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ti = 0; ti < e.size(); ++ti) {
      const Term& t = e[ti];
      for (const auto& g : basis) {
        if (g.empty()) continue;
        const Term& lg = g[0];
        if (lg.pos != t.pos || !mono_divides(lg.mono, t.mono)) continue;
        Int a = boost::multiprecision::abs(lg.coeff);
        Int q = t.coeff / a;
        Int r = t.coeff - q * a;
        if (r < 0) {
          q -= 1;
          r += a;
        }
        if (q == 0) continue;  // already canonical against this reducer
        if (lg.coeff < 0) q = -q;
        ExpVec shift(t.mono.size());
        for (size_t i = 0; i < shift.size(); ++i) shift[i] = t.mono[i] - lg.mono[i];
        e = add(e, scale_shift(g, -q, shift));
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return e;
}

inline std::optional<std::pair<Int, Int>> bezout(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  return std::make_pair(old_s, old_t);  // old_s*a + old_t*b = gcd
}

inline bool elem_eq(const Elem& a, const Elem& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].mono != b[i].mono || a[i].pos != b[i].pos || a[i].coeff != b[i].coeff) return false;
  return true;
}

/// Strong Groebner basis over Z (S-vectors and gcd-vectors), auto-reduced.
/// Throws unsupported_error if the computation exceeds the desk-scale cap.
inline std::vector<Elem> strong_basis(std::vector<Elem> gens, size_t cap = 600) {
  std::vector<Elem> basis;
  for (auto& g : gens) {
    normalize(g);
    if (!g.empty()) basis.push_back(std::move(g));
  }
  std::deque<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Elem& f = basis[i];
    const Elem& g = basis[j];
    if (f.empty() || g.empty()) continue;
    if (f[0].pos != g[0].pos) continue;
    ExpVec l = mono_lcm(f[0].mono, g[0].mono);
    ExpVec sf(l.size()), sg(l.size());
    for (size_t k = 0; k < l.size(); ++k) {
      sf[k] = l[k] - f[0].mono[k];
      sg[k] = l[k] - g[0].mono[k];
    }
    Int a = f[0].coeff, b = g[0].coeff;
    Int gc = boost::multiprecision::gcd(a, b);
    Int lc = a / gc * b;  // lcm with sign; fine either way

    std::vector<Elem> candidates;
    candidates.push_back(add(scale_shift(f, lc / a, sf), scale_shift(g, -(lc / b), sg)));
    auto [u, v] = *bezout(a, b);
    candidates.push_back(add(scale_shift(f, u, sf), scale_shift(g, v, sg)));

    for (auto& c : candidates) {
      Elem red = reduce(std::move(c), basis);
      if (red.empty()) continue;
      size_t idx = basis.size();
      for (size_t k = 0; k < idx; ++k) pairs.emplace_back(k, idx);
      basis.push_back(std::move(red));
      if (basis.size() > cap) throw unsupported_error("groebner: basis size cap exceeded");
    }
  }

  // auto-reduce for canonical normal forms
  bool stable = false;
  while (!stable) {
    stable = true;
    for (size_t i = 0; i < basis.size(); ++i) {
      Elem cur = basis[i];
      std::vector<Elem> others;
      for (size_t j = 0; j < basis.size(); ++j)
        if (j != i && !basis[j].empty()) others.push_back(basis[j]);
      Elem red = reduce(cur, others);
      if (!elem_eq(red, cur)) {
        basis[i] = red;
        stable = false;
      }
    }
    basis.erase(std::remove_if(basis.begin(), basis.end(),
                               [](const Elem& e) { return e.empty(); }),
                basis.end());
  }
  return basis;
}

}  // namespace groebner

}  // namespace ratmeta
