#pragma once

#include "ratmeta/groebner.hpp"
#include "ratmeta/laurent.hpp"
#include "ratmeta/rational.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

enum class Backend { Free, Evaluation, Groebner };

class ModElem;

/// Finitely presented Z[X_1^±..X_n^±]-module with element normal forms.
///
/// Backends:
///   Free        - Z[X^±]^rank, no relations.
///   Evaluation  - rank 1 with substitution targets X_i -> t_i (values live in
///                 Q), an optional coefficient modulus, or both. Targets absent
///                 with a modulus m realizes Z_m[X^±]^rank (lamplighter-style
///                 coefficient modules) without Groebner machinery.
///   Groebner    - arbitrary relations, reduced by a strong Groebner basis
///                 over Z after adjoining inverse variables (x_i y_i = 1).
class ModulePresentation : public std::enable_shared_from_this<ModulePresentation> {
 public:
  size_t n = 0;
  size_t rank = 0;
  Backend backend = Backend::Free;
  std::vector<std::vector<LaurentPoly>> relations;
  std::optional<QVec> targets;
  std::optional<Int> modulus;

  static std::shared_ptr<const ModulePresentation> make_free(size_t n, size_t rank) {
    auto p = std::shared_ptr<ModulePresentation>(new ModulePresentation());
    p->n = n;
    p->rank = rank;
    p->backend = Backend::Free;
    return p;
  }

  static std::shared_ptr<const ModulePresentation> make_evaluation(
      size_t n, size_t rank, std::optional<QVec> targets, std::optional<Int> modulus) {
    auto p = std::shared_ptr<ModulePresentation>(new ModulePresentation());
    p->n = n;
    p->rank = rank;
    p->backend = Backend::Evaluation;
    if (!targets && !modulus)
      throw std::invalid_argument("evaluation backend needs targets or a modulus");
    if (targets) {
      if (rank != 1) throw std::invalid_argument("evaluation backend with targets requires rank 1");
      if (targets->size() != n) throw std::invalid_argument("evaluation targets: length != n");
      for (const auto& t : *targets)
        if (t == 0) throw std::invalid_argument("evaluation backend: zero target");
    }
    if (modulus) {
      if (*modulus < 1) throw std::invalid_argument("evaluation backend: modulus must be positive");
      if (targets)
        for (const auto& t : *targets)
          if (boost::multiprecision::gcd(rat_den(t), *modulus) != 1)
            throw std::invalid_argument("evaluation backend: target denominator not invertible");
    }
    p->targets = std::move(targets);
    p->modulus = std::move(modulus);
    return p;
  }

  static std::shared_ptr<const ModulePresentation> make_groebner(
      size_t n, size_t rank, std::vector<std::vector<LaurentPoly>> relations) {
    if (n > 3 || rank > 4)
      throw unsupported_error("groebner backend limited to n <= 3, rank <= 4");
    auto p = std::shared_ptr<ModulePresentation>(new ModulePresentation());
    p->n = n;
    p->rank = rank;
    p->backend = Backend::Groebner;
    for (const auto& rel : relations) {
      if (rel.size() != rank) throw std::invalid_argument("relation vector length != rank");
      for (const auto& f : rel)
        for (const auto& [e, c] : f.terms()) {
          int64_t deg = 0;
          for (auto x : e) deg += x >= 0 ? x : -x;
          if (deg > 12) throw unsupported_error("groebner backend: relation degree > 12");
        }
    }
    p->relations = std::move(relations);
    p->precompute_basis();
    return p;
  }

  ModElem zero() const;
  ModElem element(std::vector<LaurentPoly> coords) const;
  ModElem from_value(const Rat& v) const;  // evaluation-with-targets backend

  bool uses_value() const { return backend == Backend::Evaluation && targets.has_value(); }

  Rat substitute(const LaurentPoly& f) const {
    Rat v = f.evaluate(*targets);
    if (modulus) v = mod_value(v);
    return v;
  }

  Rat mod_value(const Rat& v) const {
    // reduce p/q mod m via the inverse of q; denominators are checked coprime
    Int m = *modulus;
    Int num = rat_num(v) % m;
    if (num < 0) num += m;
    Int den = rat_den(v) % m;
    auto [u, w] = *groebner::bezout(den, m);
    Int inv = u % m;
    if (inv < 0) inv += m;
    Int r = (num * inv) % m;
    if (r < 0) r += m;
    return Rat(r);
  }

  LaurentPoly mod_coeffs(const LaurentPoly& f) const {
    LaurentPoly out(f.vars());
    for (const auto& [e, c] : f.terms()) {
      Int r = c % *modulus;
      if (r < 0) r += *modulus;
      if (r != 0) out = out + LaurentPoly::monomial(f.vars(), e, r);
    }
    return out;
  }

  // Groebner internals exposed for normal_form
  const std::vector<groebner::Elem>& basis() const { return basis_; }

  groebner::Elem encode(const std::vector<LaurentPoly>& coords) const {
    groebner::Elem e;
    for (size_t j = 0; j < coords.size(); ++j)
      for (const auto& [ex, c] : coords[j].terms()) {
        ExpVec m(2 * n, 0);
        for (size_t i = 0; i < n; ++i) {
          if (ex[i] >= 0)
            m[i] = ex[i];
          else
            m[n + i] = -ex[i];
        }
        e.push_back({m, j, c});
      }
    groebner::normalize(e);
    return e;
  }

  std::vector<LaurentPoly> decode(const groebner::Elem& e) const {
    std::vector<LaurentPoly> coords(rank, LaurentPoly::zero(n));
    for (const auto& t : e) {
      ExpVec ex(n, 0);
      for (size_t i = 0; i < n; ++i) ex[i] = t.mono[i] - t.mono[n + i];
      coords[t.pos] = coords[t.pos] + LaurentPoly::monomial(n, ex, t.coeff);
    }
    return coords;
  }

 private:
  ModulePresentation() = default;

  void precompute_basis() {
    std::vector<groebner::Elem> gens;
    for (const auto& rel : relations) gens.push_back(encode(rel));
    // x_i y_i = 1 in every coordinate
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < rank; ++j) {
        groebner::Elem e;
        ExpVec xy(2 * n, 0);
        xy[i] = 1;
        xy[n + i] = 1;
        e.push_back({xy, j, Int(1)});
        e.push_back({ExpVec(2 * n, 0), j, Int(-1)});
        groebner::normalize(e);
        gens.push_back(std::move(e));
      }
    basis_ = groebner::strong_basis(std::move(gens));
  }

  std::vector<groebner::Elem> basis_;
};

using ModulePtr = std::shared_ptr<const ModulePresentation>;

/// Element of a finitely presented module, stored in backend normal form.
class ModElem {
 public:
  ModElem() = default;

  const ModulePtr& presentation() const { return pres_; }

  bool is_zero() const {
    if (!pres_) return true;
    if (pres_->uses_value()) return value_ == 0;
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool operator==(const ModElem& o) const {
    return value_ == o.value_ && coords_ == o.coords_;
  }
  bool operator!=(const ModElem& o) const { return !(*this == o); }

  ModElem operator+(const ModElem& o) const {
    require_same(o);
    if (pres_->uses_value()) return make_value(pres_, value_ + o.value_);
    std::vector<LaurentPoly> c(coords_.size(), LaurentPoly::zero(pres_->n));
    for (size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return pres_->element(std::move(c));
  }

  ModElem operator-() const {
    if (!pres_) return *this;
    if (pres_->uses_value()) return make_value(pres_, -value_);
    std::vector<LaurentPoly> c(coords_.size(), LaurentPoly::zero(pres_->n));
    for (size_t i = 0; i < coords_.size(); ++i) c[i] = -coords_[i];
    return pres_->element(std::move(c));
  }

  ModElem operator-(const ModElem& o) const { return *this + (-o); }

  /// Module action p · e.
  ModElem act(const LaurentPoly& p) const {
    if (p.vars() != pres_->n) throw std::invalid_argument("act: variable count mismatch");
    if (pres_->uses_value()) return make_value(pres_, pres_->substitute(p) * value_);
    std::vector<LaurentPoly> c(coords_.size(), LaurentPoly::zero(pres_->n));
    for (size_t i = 0; i < coords_.size(); ++i) c[i] = p * coords_[i];
    return pres_->element(std::move(c));
  }

  ModElem act_monomial(const ExpVec& e) const {
    return act(LaurentPoly::monomial(pres_->n, e, Int(1)));
  }

  const std::vector<LaurentPoly>& coords() const { return coords_; }
  const Rat& value() const { return value_; }

  /// Canonical serialization; doubles as the oracle's dedup key.
  std::string key() const {
    if (!pres_) return "<>";
    if (pres_->uses_value()) return rat_to_string(value_);
    std::string s;
    for (const auto& c : coords_) {
      s += format_poly(c);
      s += ";";
    }
    return s;
  }

 private:
  friend class ModulePresentation;

  static ModElem make_value(const ModulePtr& p, Rat v) {
    ModElem e;
    e.pres_ = p;
    if (p->modulus) v = p->mod_value(v);
    e.value_ = std::move(v);
    return e;
  }

  void require_same(const ModElem& o) const {
    if (pres_ != o.pres_) {
      if (!pres_ || !o.pres_ || pres_->n != o.pres_->n || pres_->rank != o.pres_->rank ||
          pres_->backend != o.pres_->backend)
        throw std::invalid_argument("module elements from different presentations");
    }
  }

  ModulePtr pres_;
  std::vector<LaurentPoly> coords_;
  Rat value_ = 0;
};

inline ModElem ModulePresentation::zero() const {
  return element(std::vector<LaurentPoly>(rank, LaurentPoly::zero(n)));
}

inline ModElem ModulePresentation::from_value(const Rat& v) const {
  if (!uses_value()) throw std::logic_error("from_value: not an evaluation backend");
  return ModElem::make_value(shared_from_this(), v);
}

/// Normal form on construction: this is the only way elements come to exist,
/// so equality of elements is equality of normal forms.
inline ModElem ModulePresentation::element(std::vector<LaurentPoly> coords) const {
  if (coords.size() != rank) throw std::invalid_argument("element: coordinate count != rank");
  for (const auto& c : coords)
    if (c.vars() != n) throw std::invalid_argument("element: variable count mismatch");
  ModElem e;
  e.pres_ = shared_from_this();
  switch (backend) {
    case Backend::Free:
      e.coords_ = std::move(coords);
      break;
    case Backend::Evaluation:
      if (targets) {
        Rat v = substitute(coords[0]);
        return ModElem::make_value(shared_from_this(), v);
      }
      e.coords_.reserve(rank);
      for (auto& c : coords) e.coords_.push_back(mod_coeffs(c));
      break;
    case Backend::Groebner: {
      auto red = groebner::reduce(encode(coords), basis_);
      e.coords_ = decode(red);
      break;
    }
  }
  return e;
}

}  // namespace ratmeta
