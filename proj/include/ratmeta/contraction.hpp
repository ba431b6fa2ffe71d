#pragma once

#include "ratmeta/agraph.hpp"
#include "ratmeta/automaton.hpp"
#include "ratmeta/direction.hpp"
#include "ratmeta/laurent.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Partial contraction (S, T, ρ): the transitions with labels in T form an
/// undirected spanning tree of the states indexed by S, rooted at ρ ∈ S.
struct PartialContraction {
  std::vector<size_t> s;       // sorted state indices
  std::vector<size_t> labels;  // sorted transition labels, |labels| = |s| - 1
  size_t rho = 0;
};

/// Contracted view of a tuple of position polynomials under one partial
/// contraction. Keys range over Ω^{-1}(S).
struct ContractedData {
  std::vector<size_t> domain;             // Ω^{-1}(S), sorted
  std::map<size_t, LaurentPoly> polys;    // f_l · X^{z_{P_Ω(l)}}
  std::map<size_t, ExpVec> edge_vectors;  // a_l + z_{P_Δ(l)} − z_{P_Ω(l)}, or 0^n if dangling
  std::map<size_t, ExpVec> potentials;    // state -> z_{P_i}, z_{P_ρ} = 0
  std::vector<size_t> dangling;           // labels with Δ(l) outside S
};

namespace detail {

inline bool forms_spanning_tree(const Automaton<SemidirectGroup>& a,
                                const std::vector<size_t>& s, const std::vector<size_t>& labels) {
  if (labels.size() + 1 != s.size()) return false;
  std::map<size_t, size_t> pos;
  for (size_t i = 0; i < s.size(); ++i) pos[s[i]] = i;
  UnionFind uf(s.size());
  for (auto l : labels) {
    auto u = pos.find(a.origin(l)), v = pos.find(a.dest(l));
    if (u == pos.end() || v == pos.end()) return false;
    if (uf.find(u->second) == uf.find(v->second)) return false;  // cycle
    uf.unite(u->second, v->second);
  }
  size_t root = uf.find(0);
  for (size_t i = 1; i < s.size(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

}  // namespace detail

/// Every (S, spanning tree, root) exactly once; parallel transitions count as
/// distinct trees because trees are label sets.
inline std::vector<PartialContraction> enumerate_contractions(
    const Automaton<SemidirectGroup>& a) {
  size_t s = a.states, t = a.transitions.size();
  if (s > 12) throw unsupported_error("enumerate_contractions: > 12 states");
  std::vector<PartialContraction> out;
  for (size_t mask = 1; mask < (size_t(1) << s); ++mask) {
    std::vector<size_t> states;
    for (size_t i = 1; i <= s; ++i)
      if (mask & (size_t(1) << (i - 1))) states.push_back(i);
    std::vector<size_t> candidates;
    for (size_t l = 1; l <= t; ++l) {
      bool from_in = std::binary_search(states.begin(), states.end(), a.origin(l));
      bool to_in = std::binary_search(states.begin(), states.end(), a.dest(l));
      if (from_in && to_in && a.origin(l) != a.dest(l)) candidates.push_back(l);
    }
    size_t need = states.size() - 1;
    if (need == 0) {
      for (auto rho : states) out.push_back({states, {}, rho});
      continue;
    }
    if (candidates.size() < need) continue;
    std::vector<bool> sel(candidates.size(), false);
    std::fill(sel.begin(), sel.begin() + need, true);
    do {
      std::vector<size_t> labels;
      for (size_t i = 0; i < candidates.size(); ++i)
        if (sel[i]) labels.push_back(candidates[i]);
      if (!detail::forms_spanning_tree(a, states, labels)) continue;
      for (auto rho : states) out.push_back({states, labels, rho});
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  return out;
}

/// Contracted position polynomials and edge vectors:
/// the potentials are the Z^n parts of the unique tree paths P_i from q_i to
/// the root q_ρ inside A^±.
inline ContractedData contract(const Automaton<SemidirectGroup>& a, const PositionPolys& f,
                               const PartialContraction& pc) {
  size_t n = a.group.n;
  if (f.size() != a.transitions.size()) throw std::invalid_argument("contract: poly count");
  if (!std::binary_search(pc.s.begin(), pc.s.end(), pc.rho))
    throw std::invalid_argument("contract: root outside S");
  if (!detail::forms_spanning_tree(a, pc.s, pc.labels) && !(pc.s.size() == 1 && pc.labels.empty()))
    throw std::invalid_argument("contract: labels are not a spanning tree of S");

  ContractedData d;
  // walk the tree outward from the root: crossing δ_l from q_Ω to q_Δ means
  // P_Ω = δ_l · P_Δ, so z_{P_Ω} = a_l + z_{P_Δ}; the reverse crossing negates
  d.potentials[pc.rho] = ExpVec(n, 0);
  std::vector<size_t> frontier{pc.rho};
  while (!frontier.empty()) {
    size_t cur = frontier.back();
    frontier.pop_back();
    for (auto l : pc.labels) {
      size_t u = a.origin(l), v = a.dest(l);
      const ExpVec& av = a.eval(l).a;
      if (v == cur && !d.potentials.count(u)) {
        d.potentials[u] = exp_add(av, d.potentials[cur]);
        frontier.push_back(u);
      } else if (u == cur && !d.potentials.count(v)) {
        d.potentials[v] = exp_add(exp_neg(av), d.potentials[cur]);
        frontier.push_back(v);
      }
    }
  }
  if (d.potentials.size() != pc.s.size()) throw std::invalid_argument("contract: tree walk failed");

  for (size_t l = 1; l <= a.transitions.size(); ++l) {
    if (!std::binary_search(pc.s.begin(), pc.s.end(), a.origin(l))) continue;
    d.domain.push_back(l);
    d.polys[l] = f[l - 1].shift(d.potentials.at(a.origin(l)));
    if (std::binary_search(pc.s.begin(), pc.s.end(), a.dest(l))) {
      d.edge_vectors[l] = exp_add(a.eval(l).a, exp_add(d.potentials.at(a.dest(l)),
                                                       exp_neg(d.potentials.at(a.origin(l)))));
    } else {
      d.edge_vectors[l] = ExpVec(n, 0);
      d.dangling.push_back(l);
    }
  }
  return d;
}

struct ArgmaxSets {
  std::set<size_t> m;  // labels with maximal deg_v among the contracted polys
  std::set<size_t> o;  // labels whose contracted edge vector is not orthogonal to v
};

inline ArgmaxSets argmax_sets(const ContractedData& d, const Direction& v) {
  ArgmaxSets r;
  bool have = false;
  Rat best;
  for (auto l : d.domain) {
    const auto& p = d.polys.at(l);
    if (p.is_zero()) continue;
    Rat deg = deg_and_initial(p, v).value;
    if (!have || deg > best) {
      best = deg;
      have = true;
    }
  }
  for (auto l : d.domain) {
    const auto& p = d.polys.at(l);
    if (!p.is_zero() && have && deg_and_initial(p, v).value == best) r.m.insert(l);
    const ExpVec& e = d.edge_vectors.at(l);
    Int dotp = 0;
    for (size_t j = 0; j < e.size(); ++j) dotp += v.v[j] * e[j];
    if (dotp != 0) r.o.insert(l);
  }
  return r;
}

/// Eq. (acccond): for every partial contraction and every direction v,
/// (O_v ∪ Δ^{-1}(S)^∁) ∩ M_v ≠ ∅. The v quantifier is discharged by one
/// representative per direction cell of the contracted Newton polytopes and
/// edge-vector hyperplanes. Preconditions: f nonnegative with every entry
/// nonzero, n <= 3 (vacuously true for n = 0).
inline bool accessibility_condition(const Automaton<SemidirectGroup>& a, const PositionPolys& f) {
  size_t n = a.group.n;
  if (n > 3) throw unsupported_error("accessibility_condition: n > 3");
  for (const auto& p : f) {
    if (!p.all_coefficients_nonnegative())
      throw std::invalid_argument("accessibility_condition: negative coefficient");
    if (p.is_zero()) throw std::invalid_argument("accessibility_condition: zero entry");
  }
  if (n == 0) return true;

  for (const auto& pc : enumerate_contractions(a)) {
    auto d = contract(a, f, pc);
    std::vector<Polytope> newtons;
    std::vector<std::vector<Int>> normals;
    for (auto l : d.domain) {
      newtons.push_back(newton_polytope(d.polys.at(l)));
      const ExpVec& e = d.edge_vectors.at(l);
      bool nonzero = false;
      for (auto x : e) nonzero |= (x != 0);
      if (nonzero) {
        std::vector<Int> iv(e.size());
        for (size_t j = 0; j < e.size(); ++j) iv[j] = Int(e[j]);
        normals.push_back(std::move(iv));
      }
    }
    std::set<size_t> dangling(d.dangling.begin(), d.dangling.end());
    for (const auto& v : direction_cells(newtons, normals, n)) {
      auto mo = argmax_sets(d, v);
      bool ok = false;
      for (auto l : mo.m)
        if (mo.o.count(l) || dangling.count(l)) {
          ok = true;
          break;
        }
      if (ok) continue;
      // A violation witnesses a non-accessible face only when it lifts to a
      // strict face of conv(V(Γ)): some vertex must fall outside it. With S
      // covering every state and every lattice fully v-extremal the lifted
      // face is the whole hull, so the violation is spurious.
      if (pc.s.size() < a.states) return false;
      bool all_lattices_flat = true;
      for (size_t i = 1; i <= a.states && all_lattices_flat; ++i) {
        LaurentPoly occ = LaurentPoly::zero(n);
        for (size_t l = 1; l <= a.transitions.size(); ++l) {
          if (a.origin(l) == i) occ = occ + d.polys.at(l);
          if (a.dest(l) == i && !dangling.count(l))
            occ = occ + d.polys.at(l).shift(d.edge_vectors.at(l));
        }
        if (occ.is_zero()) continue;
        auto dv = deg_and_initial(occ, v);
        if (dv.initial != occ) all_lattices_flat = false;
      }
      if (!all_lattices_flat) return false;
    }
  }
  return true;
}

}  // namespace ratmeta
