#pragma once

#include "ratmeta/automaton.hpp"
#include "ratmeta/laurent.hpp"
#include "ratmeta/matrix.hpp"
#include "ratmeta/qlinalg.hpp"
#include "ratmeta/semidirect.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Linear description of the candidate position polynomials with support in
/// the box {‖e‖∞ <= radius}: slots are (label, monomial) pairs, rows are the
/// symmetry identities and, when the module admits them, the linearized
/// zero-representation conditions (auxiliary columns absorb lattice or
/// modulus multiples).
struct BoxSystem {
  size_t t = 0;
  int64_t radius = 0;
  std::vector<ExpVec> box;                       // monomials, graded-lex order
  std::map<ExpVec, size_t> box_index;
  size_t slots = 0;                              // t * |box|
  size_t aux = 0;
  std::vector<std::vector<Int>> rows;            // width slots + aux
  bool module_conditions_linear = false;         // (iii) captured in rows?

  size_t slot(size_t label, const ExpVec& e) const {
    return (label - 1) * box.size() + box_index.at(e);
  }
};

namespace detail {

inline std::vector<ExpVec> box_monomials(size_t n, int64_t radius) {
  std::vector<ExpVec> out;
  ExpVec cur(n, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int64_t v = -radius; v <= radius; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), exp_less);
  return out;
}

}  // namespace detail

inline BoxSystem build_box_system(const Automaton<SemidirectGroup>& a, int64_t radius) {
  const ModulePtr& mod = a.group.module;
  size_t n = a.group.n, t = a.transitions.size();
  BoxSystem sys;
  sys.t = t;
  sys.radius = radius;
  sys.box = detail::box_monomials(n, radius);
  for (size_t i = 0; i < sys.box.size(); ++i) sys.box_index[sys.box[i]] = i;
  sys.slots = t * sys.box.size();

  auto in_box = [&](const ExpVec& e) {
    for (auto x : e)
      if (x > radius || x < -radius) return false;
    return true;
  };

  std::vector<std::vector<Int>> rows;

  // symmetry identities, one row per (state, monomial) over the box hull
  for (size_t i = 1; i <= a.states; ++i) {
    std::set<ExpVec> monos;
    for (size_t l = 1; l <= t; ++l) {
      if (a.origin(l) == i)
        for (const auto& e : sys.box) monos.insert(e);
      if (a.dest(l) == i)
        for (const auto& e : sys.box) monos.insert(exp_add(e, a.eval(l).a));
    }
    for (const auto& m : monos) {
      std::vector<Int> row(sys.slots, Int(0));
      bool nontrivial = false;
      for (size_t l = 1; l <= t; ++l) {
        if (a.origin(l) == i && in_box(m)) {
          row[sys.slot(l, m)] += 1;
          nontrivial = true;
        }
        if (a.dest(l) == i) {
          ExpVec src = exp_add(m, exp_neg(a.eval(l).a));
          if (in_box(src)) {
            row[sys.slot(l, src)] -= 1;
            nontrivial = true;
          }
        }
      }
      if (nontrivial) rows.push_back(std::move(row));
    }
  }

  // zero-representation conditions, linear for every backend except Groebner
  // with n >= 1 (checked directly against the module there)
  std::vector<std::vector<Int>> mod_rows;      // rows needing a private aux column (×m)
  std::vector<std::vector<Int>> lattice_rows;  // rows over slots plus shared lattice columns
  size_t lattice_cols = 0;

  if (mod->backend == Backend::Free || (mod->backend == Backend::Evaluation && !mod->targets)) {
    // per coordinate j and monomial µ: Σ_{l,e} c_{l,e}·coeff(y_lj, µ−e) = 0
    for (size_t j = 0; j < mod->rank; ++j) {
      std::set<ExpVec> monos;
      for (size_t l = 1; l <= t; ++l)
        for (const auto& e : sys.box)
          for (const auto& [ye, yc] : a.eval(l).y.coords()[j].terms()) monos.insert(exp_add(e, ye));
      for (const auto& mu : monos) {
        std::vector<Int> row(sys.slots, Int(0));
        bool nontrivial = false;
        for (size_t l = 1; l <= t; ++l)
          for (const auto& [ye, yc] : a.eval(l).y.coords()[j].terms()) {
            ExpVec e = exp_add(mu, exp_neg(ye));
            if (in_box(e)) {
              row[sys.slot(l, e)] += yc;
              nontrivial = true;
            }
          }
        if (!nontrivial) continue;
        if (mod->modulus)
          mod_rows.push_back(std::move(row));
        else
          rows.push_back(std::move(row));
      }
    }
    sys.module_conditions_linear = true;
  } else if (mod->backend == Backend::Evaluation && mod->targets) {
    // single value equation Σ c_{l,e}·(X^e y_l)(targets) = 0, denominators cleared
    QVec coeffs(sys.slots, Rat(0));
    for (size_t l = 1; l <= t; ++l)
      for (const auto& e : sys.box) {
        Rat v = a.eval(l).y.value();
        if (v == 0) continue;
        LaurentPoly mono = LaurentPoly::monomial(n, e, Int(1));
        coeffs[sys.slot(l, e)] = mono.evaluate(*mod->targets) * v;
      }
    Int den = 1;
    for (const auto& c : coeffs) den = boost::multiprecision::lcm(den, rat_den(c));
    std::vector<Int> row(sys.slots, Int(0));
    bool nontrivial = false;
    for (size_t s = 0; s < sys.slots; ++s) {
      row[s] = rat_num(coeffs[s]) * (den / rat_den(coeffs[s]));
      nontrivial |= (row[s] != 0);
    }
    if (nontrivial) {
      if (mod->modulus)
        mod_rows.push_back(std::move(row));
      else
        rows.push_back(std::move(row));
    }
    sys.module_conditions_linear = true;
  } else if (mod->backend == Backend::Groebner) {
    // Membership in the relation module N restricted to a fixed support box
    // is lattice-linear: reduction by the strong basis never raises the
    // graded degree, so the N-elements of degree <= D are spanned by the
    // basis multiples X^e·g with deg(X^e·lead(g)) <= D. Those multiples
    // become shared auxiliary columns.
    std::map<std::pair<size_t, ExpVec>, size_t> coord_index;  // (position, mono) -> row
    auto coord_of = [&](size_t pos, const ExpVec& mono) {
      auto key = std::make_pair(pos, mono);
      auto it = coord_index.find(key);
      if (it != coord_index.end()) return it->second;
      size_t idx = coord_index.size();
      coord_index[key] = idx;
      return idx;
    };

    std::vector<std::pair<size_t, groebner::Elem>> slot_elems;  // (slot, encoded X^e y_l)
    int64_t max_deg = 0;
    for (size_t l = 1; l <= t; ++l) {
      const auto& y = a.eval(l).y.coords();
      for (const auto& e : sys.box) {
        std::vector<LaurentPoly> shifted;
        shifted.reserve(y.size());
        for (const auto& c : y) shifted.push_back(c.shift(e));
        auto enc = mod->encode(shifted);
        for (const auto& term : enc) {
          int64_t d = 0;
          for (auto x : term.mono) d += x;
          max_deg = std::max(max_deg, d);
        }
        if (!enc.empty()) slot_elems.emplace_back(sys.slot(l, e), std::move(enc));
      }
    }

    // auxiliary columns: all basis multiples within the degree bound
    std::vector<groebner::Elem> aux_elems;
    for (const auto& g : mod->basis()) {
      if (g.empty()) continue;
      int64_t lead_deg = 0;
      for (auto x : g[0].mono) lead_deg += x;
      int64_t room = max_deg - lead_deg;
      if (room < 0) continue;
      std::vector<ExpVec> shifts;
      ExpVec cur(2 * mod->n, 0);
      std::function<void(size_t, int64_t)> rec = [&](size_t i, int64_t left) {
        if (i == cur.size()) {
          shifts.push_back(cur);
          return;
        }
        for (int64_t v = 0; v <= left; ++v) {
          cur[i] = v;
          rec(i + 1, left - v);
        }
        cur[i] = 0;
      };
      rec(0, room);
      for (const auto& sft : shifts) aux_elems.push_back(groebner::scale_shift(g, Int(1), sft));
    }
    if (aux_elems.size() > 4000) {
      sys.module_conditions_linear = false;  // fall back to direct checks
    } else {
      for (const auto& [slot, enc] : slot_elems)
        for (const auto& term : enc) coord_of(term.pos, term.mono);
      for (const auto& enc : aux_elems)
        for (const auto& term : enc) coord_of(term.pos, term.mono);
      lattice_cols = aux_elems.size();
      std::vector<std::vector<Int>> rows_by_coord(
          coord_index.size(), std::vector<Int>(sys.slots + lattice_cols, Int(0)));
      for (const auto& [slot, enc] : slot_elems)
        for (const auto& term : enc)
          rows_by_coord[coord_of(term.pos, term.mono)][slot] += term.coeff;
      for (size_t ai = 0; ai < aux_elems.size(); ++ai)
        for (const auto& term : aux_elems[ai])
          rows_by_coord[coord_of(term.pos, term.mono)][sys.slots + ai] = term.coeff;
      for (auto& r : rows_by_coord) {
        bool nontrivial = false;
        for (const auto& x : r) nontrivial |= (x != 0);
        if (nontrivial) lattice_rows.push_back(std::move(r));
      }
      sys.module_conditions_linear = true;
    }
  }

  // assemble: widen plain rows, give each modulus row its own aux column
  size_t total_aux = mod_rows.size() + lattice_cols;
  for (auto& r : rows) r.resize(sys.slots + total_aux, Int(0));
  size_t aux_at = sys.slots;
  for (auto& r : mod_rows) {
    r.resize(sys.slots + total_aux, Int(0));
    r[aux_at++] = *mod->modulus;
    rows.push_back(std::move(r));
  }
  for (auto& r : lattice_rows) {
    std::vector<Int> wide(sys.slots + total_aux, Int(0));
    for (size_t s = 0; s < sys.slots; ++s) wide[s] = r[s];
    for (size_t c = 0; c < lattice_cols; ++c) wide[aux_at + c] = r[sys.slots + c];
    rows.push_back(std::move(wide));
  }
  sys.aux = total_aux;
  sys.rows = std::move(rows);
  return sys;
}

/// Integer kernel of the box system, projected to the slot coordinates.
/// The projections of a kernel basis generate the lattice of admissible
/// coefficient vectors.
inline std::vector<std::vector<Int>> box_kernel_generators(const BoxSystem& sys) {
  size_t width = sys.slots + sys.aux;
  IntMatrix m(sys.rows.size(), width);
  for (size_t i = 0; i < sys.rows.size(); ++i)
    for (size_t j = 0; j < width; ++j) m(i, j) = sys.rows[i][j];
  IntMatrix k = integer_kernel(m);
  std::vector<std::vector<Int>> gens;
  for (size_t i = 0; i < k.rows(); ++i) {
    std::vector<Int> g(sys.slots);
    bool nonzero = false;
    for (size_t j = 0; j < sys.slots; ++j) {
      g[j] = k(i, j);
      nonzero |= (g[j] != 0);
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

/// Evaluated necessary conditions at a positive rational point r: every
/// admissible tuple f (any support) has x = f(r) in the kernel of these rows.
/// Rows: symmetry identities evaluated at r, plus coordinatewise module
/// value conditions for backends where evaluation is sound.
inline std::vector<QVec> evaluated_constraint_rows(const Automaton<SemidirectGroup>& a,
                                                   const QVec& r) {
  const ModulePtr& mod = a.group.module;
  size_t n = a.group.n, t = a.transitions.size();
  if (r.size() != n) throw std::invalid_argument("evaluated_constraint_rows: point length");
  for (const auto& x : r)
    if (x <= 0) throw std::invalid_argument("evaluated_constraint_rows: point must be positive");

  std::vector<QVec> rows;
  for (size_t i = 1; i <= a.states; ++i) {
    QVec row(t, Rat(0));
    bool nontrivial = false;
    for (size_t l = 1; l <= t; ++l) {
      if (a.origin(l) == i) {
        row[l - 1] += 1;
        nontrivial = true;
      }
      if (a.dest(l) == i) {
        LaurentPoly mono = LaurentPoly::monomial(n, a.eval(l).a, Int(1));
        row[l - 1] -= mono.evaluate(r);
        nontrivial = true;
      }
    }
    if (nontrivial) rows.push_back(std::move(row));
  }
  if (mod->backend == Backend::Free && !mod->modulus) {
    for (size_t j = 0; j < mod->rank; ++j) {
      QVec row(t, Rat(0));
      bool nontrivial = false;
      for (size_t l = 1; l <= t; ++l) {
        const LaurentPoly& y = a.eval(l).y.coords()[j];
        if (!y.is_zero()) {
          row[l - 1] = y.evaluate(r);
          nontrivial = true;
        }
      }
      if (nontrivial) rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Basis of {x in R^t : evaluated constraints hold}, scaled to integers.
inline std::vector<QVec> evaluated_solution_basis(const Automaton<SemidirectGroup>& a,
                                                  const QVec& r) {
  size_t t = a.transitions.size();
  auto rows = evaluated_constraint_rows(a, r);
  auto basis = q_nullspace(rows, t);
  for (auto& b : basis) {
    auto prim = primitive_integer(b);
    for (size_t j = 0; j < t; ++j) b[j] = Rat(prim[j]);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace ratmeta
