#pragma once

#include "ratmeta/laurent.hpp"
#include "ratmeta/module.hpp"
#include "ratmeta/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

/// Element (y, a) of Y ⋊ Z^n.
struct SemidirectElem {
  ModElem y;
  ExpVec a;

  bool operator==(const SemidirectElem& o) const { return a == o.a && y == o.y; }
  bool operator!=(const SemidirectElem& o) const { return !(*this == o); }
};

/// Group operations of Y ⋊ Z^n:
///   (y, a)(y', a') = (y + X^a · y', a + a')
///   (y, a)^{-1}    = (−X^{−a} · y, −a)
struct SemidirectGroup {
  using Elem = SemidirectElem;

  ModulePtr module;
  size_t n = 0;

  SemidirectGroup() = default;
  explicit SemidirectGroup(ModulePtr m) : module(std::move(m)), n(module->n) {}

  Elem identity() const { return {module->zero(), ExpVec(n, 0)}; }

  Elem make(ModElem y, ExpVec a) const {
    if (a.size() != n) throw std::invalid_argument("semidirect: Z^n part length");
    return {std::move(y), std::move(a)};
  }

  Elem mul(const Elem& g, const Elem& h) const {
    if (g.a.size() != n || h.a.size() != n)
      throw std::invalid_argument("semidirect: ambient mismatch");
    return {g.y + h.y.act_monomial(g.a), exp_add(g.a, h.a)};
  }

  Elem inv(const Elem& g) const {
    return {-(g.y.act_monomial(exp_neg(g.a))), exp_neg(g.a)};
  }

  bool eq(const Elem& g, const Elem& h) const { return g == h; }

  bool is_identity(const Elem& g) const {
    for (auto x : g.a)
      if (x != 0) return false;
    return g.y.is_zero();
  }

  std::string key(const Elem& g) const {
    std::string s = g.y.key() + "|";
    for (auto x : g.a) s += std::to_string(x) + ",";
    return s;
  }
};

}  // namespace ratmeta
