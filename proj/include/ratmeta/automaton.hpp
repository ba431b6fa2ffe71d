#pragma once

#include "ratmeta/matrix.hpp"
#include "ratmeta/rational.hpp"
#include "ratmeta/semidirect.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Transition-index sequence. Indices and states are 1-based, matching the
/// convention that q_1 is the unique initial and accepting state.
using Run = std::vector<size_t>;

template <class G>
struct Automaton {
  using Elem = typename G::Elem;
  struct Transition {
    size_t from = 0, to = 0;  // 1-based states
    Elem ev;
  };

  G group;
  size_t states = 0;
  std::vector<Transition> transitions;

  size_t origin(size_t label) const { return transitions.at(label - 1).from; }
  size_t dest(size_t label) const { return transitions.at(label - 1).to; }
  const Elem& eval(size_t label) const { return transitions.at(label - 1).ev; }

  void validate() const {
    for (const auto& t : transitions)
      if (t.from < 1 || t.from > states || t.to < 1 || t.to > states)
        throw std::invalid_argument("automaton: state index out of range");
  }
};

template <class G>
bool is_valid_path(const Automaton<G>& a, const Run& run) {
  if (run.empty()) return false;
  for (size_t i = 0; i < run.size(); ++i) {
    if (run[i] < 1 || run[i] > a.transitions.size()) return false;
    if (i > 0 && a.dest(run[i - 1]) != a.origin(run[i])) return false;
  }
  return true;
}

template <class G>
bool is_accepting(const Automaton<G>& a, const Run& run) {
  return is_valid_path(a, run) && a.origin(run.front()) == 1 && a.dest(run.back()) == 1;
}

template <class G>
typename G::Elem evaluate_run(const Automaton<G>& a, const Run& run) {
  if (!is_valid_path(a, run)) throw std::invalid_argument("evaluate_run: broken chaining");
  auto acc = a.eval(run[0]);
  for (size_t i = 1; i < run.size(); ++i) acc = a.group.mul(acc, a.eval(run[i]));
  return acc;
}

template <class G>
struct TrimResult {
  bool empty_language = false;
  Automaton<G> automaton;
  std::vector<size_t> kept_transitions;  // new label -> old label
  std::vector<size_t> kept_states;       // new state -> old state
};

/// Keeps exactly the states and transitions lying on some accepting run.
/// Deterministic relabeling: BFS order from q_1 expanding transitions in
/// index order.
template <class G>
TrimResult<G> trim(const Automaton<G>& a) {
  a.validate();
  size_t s = a.states, t = a.transitions.size();
  std::vector<bool> reach(s + 1, false), coreach(s + 1, false);
  std::deque<size_t> q;
  if (s >= 1) {
    reach[1] = true;
    q.push_back(1);
    while (!q.empty()) {
      size_t u = q.front();
      q.pop_front();
      for (const auto& tr : a.transitions)
        if (tr.from == u && !reach[tr.to]) {
          reach[tr.to] = true;
          q.push_back(tr.to);
        }
    }
    coreach[1] = true;
    q.push_back(1);
    while (!q.empty()) {
      size_t u = q.front();
      q.pop_front();
      for (const auto& tr : a.transitions)
        if (tr.to == u && !coreach[tr.from]) {
          coreach[tr.from] = true;
          q.push_back(tr.from);
        }
    }
  }
  std::vector<bool> keep_tr(t + 1, false);
  for (size_t l = 1; l <= t; ++l)
    keep_tr[l] = reach[a.origin(l)] && coreach[a.dest(l)];

  TrimResult<G> r;
  r.automaton.group = a.group;
  bool any = false;
  for (size_t l = 1; l <= t; ++l) any |= keep_tr[l];
  if (!any) {
    r.empty_language = true;
    r.automaton.states = 1;
    r.kept_states = {1};
    return r;
  }

  // BFS relabeling over kept transitions
  std::vector<size_t> new_of_old(s + 1, 0);
  std::vector<size_t> order;
  new_of_old[1] = 1;
  order.push_back(1);
  q.push_back(1);
  while (!q.empty()) {
    size_t u = q.front();
    q.pop_front();
    for (size_t l = 1; l <= t; ++l) {
      if (!keep_tr[l] || a.origin(l) != u) continue;
      size_t v = a.dest(l);
      if (!new_of_old[v]) {
        new_of_old[v] = order.size() + 1;
        order.push_back(v);
        q.push_back(v);
      }
    }
  }
  r.automaton.states = order.size();
  r.kept_states = order;
  for (size_t l = 1; l <= t; ++l) {
    if (!keep_tr[l]) continue;
    typename Automaton<G>::Transition tr;
    tr.from = new_of_old[a.origin(l)];
    tr.to = new_of_old[a.dest(l)];
    tr.ev = a.eval(l);
    r.automaton.transitions.push_back(std::move(tr));
    r.kept_transitions.push_back(l);
  }
  return r;
}

template <class G>
bool is_trim(const Automaton<G>& a) {
  auto r = trim(a);
  return !r.empty_language && r.automaton.states == a.states &&
         r.kept_transitions.size() == a.transitions.size();
}

/// A^± : for each transition a reverse transition carrying the inverse
/// evaluation, indexed t + l for original label l.
template <class G>
Automaton<G> plus_minus(const Automaton<G>& a) {
  Automaton<G> r = a;
  size_t t = a.transitions.size();
  for (size_t l = 1; l <= t; ++l) {
    typename Automaton<G>::Transition tr;
    tr.from = a.dest(l);
    tr.to = a.origin(l);
    tr.ev = a.group.inv(a.eval(l));
    r.transitions.push_back(std::move(tr));
  }
  return r;
}

/// Shortest path (in transitions of A^±, i.e. edges usable both ways) from
/// each state to state 1; used by rebase. Returns evaluations B_i of a path
/// q_i -> q_1, with B_1 = identity.
template <class G>
std::vector<typename G::Elem> paths_to_initial(const Automaton<G>& a) {
  size_t s = a.states;
  std::vector<bool> known(s + 1, false);
  std::vector<typename G::Elem> b(s + 1, a.group.identity());
  known[1] = true;
  std::deque<size_t> q{1};
  while (!q.empty()) {
    size_t u = q.front();
    q.pop_front();
    for (size_t l = 1; l <= a.transitions.size(); ++l) {
      size_t from = a.origin(l), to = a.dest(l);
      // forward use: from -> to, so if to reaches 1, from does too
      if (to == u && !known[from]) {
        b[from] = a.group.mul(a.eval(l), b[u]);
        known[from] = true;
        q.push_back(from);
      }
      // backward use via the inverse transition of A^±
      if (from == u && !known[to]) {
        b[to] = a.group.mul(a.group.inv(a.eval(l)), b[u]);
        known[to] = true;
        q.push_back(to);
      }
    }
  }
  for (size_t i = 1; i <= s; ++i)
    if (!known[i]) throw std::invalid_argument("paths_to_initial: automaton not connected/trim");
  return b;
}

/// Path rebasing: ev(δ'_l) = B_{Ω(l)}^{-1} ev(δ_l) B_{Δ(l)}.
/// Accepting-run evaluations are preserved, and every new evaluation lies in
/// the group generated by ev(A).
template <class G>
Automaton<G> rebase(const Automaton<G>& a) {
  if (!is_trim(a)) throw std::invalid_argument("rebase: trim automaton required");
  auto b = paths_to_initial(a);
  Automaton<G> r = a;
  for (size_t l = 1; l <= a.transitions.size(); ++l) {
    auto& tr = r.transitions[l - 1];
    tr.ev = a.group.mul(a.group.mul(a.group.inv(b[a.origin(l)]), a.eval(l)), b[a.dest(l)]);
  }
  return r;
}

/// Explicit finite group by multiplication table. Element 0 is the identity.
struct FiniteGroupTable {
  std::vector<std::vector<size_t>> table;

  size_t size() const { return table.size(); }
  size_t mul(size_t a, size_t b) const { return table.at(a).at(b); }

  void validate() const {
    size_t m = size();
    if (m == 0) throw std::invalid_argument("finite group: empty table");
    for (const auto& row : table) {
      if (row.size() != m) throw std::invalid_argument("finite group: ragged table");
      for (auto x : row)
        if (x >= m) throw std::invalid_argument("finite group: entry out of range");
    }
    for (size_t a = 0; a < m; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        throw std::invalid_argument("finite group: 0 is not an identity");
    for (size_t a = 0; a < m; ++a) {
      bool has_inv = false;
      for (size_t b = 0; b < m; ++b) has_inv |= (mul(a, b) == 0);
      if (!has_inv) throw std::invalid_argument("finite group: missing inverse");
    }
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b)
        for (size_t c = 0; c < m; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("finite group: not associative");
  }
};

/// Kambites-style coset automaton: recognizes <generators> ∩ ker(hom), where
/// hom maps generator i to image[i] in the finite group. States are the cosets
/// reached from the identity, in BFS order; transition evaluations are
/// B_j A_i B_{φ(j,i)}^{-1}.
template <class G>
Automaton<G> coset_intersection(const G& group, const std::vector<typename G::Elem>& generators,
                                const FiniteGroupTable& fg, const std::vector<size_t>& images) {
  fg.validate();
  if (images.size() != generators.size())
    throw std::invalid_argument("coset_intersection: one image per generator");
  for (auto im : images)
    if (im >= fg.size()) throw std::invalid_argument("coset_intersection: image out of range");

  std::vector<size_t> state_of(fg.size(), 0);  // finite-group element -> state (1-based)
  std::vector<size_t> coset_of;                // state -> finite-group element
  std::vector<typename G::Elem> rep;           // state -> representative B
  state_of[0] = 1;
  coset_of = {0, 0};  // 1-based
  rep = {group.identity(), group.identity()};

  Automaton<G> a;
  a.group = group;
  std::deque<size_t> q{1};
  while (!q.empty()) {
    size_t st = q.front();
    q.pop_front();
    for (size_t i = 0; i < generators.size(); ++i) {
      size_t target = fg.mul(coset_of[st], images[i]);
      if (!state_of[target] && target != 0) {
        state_of[target] = rep.size();
        coset_of.push_back(target);
        rep.push_back(group.mul(rep[st], generators[i]));
        q.push_back(state_of[target]);
      }
      size_t to = target == 0 ? 1 : state_of[target];
      typename Automaton<G>::Transition tr;
      tr.from = st;
      tr.to = to;
      tr.ev = group.mul(group.mul(rep[st], generators[i]), group.inv(rep[to]));
      a.transitions.push_back(std::move(tr));
      if (rep.size() > fg.size() + 1) throw std::logic_error("coset_intersection: state overflow");
    }
  }
  a.states = rep.size() - 1;
  return a;
}

/// Attaches loops (0, h) and (0, −h) at q_1 for each generator h of a central
/// subgroup H <= Z^n; each h is checked exactly to centralize every transition
/// evaluation. Recognizes ev(A)·H.
inline Automaton<SemidirectGroup> attach_central_loops(const Automaton<SemidirectGroup>& a,
                                                       const std::vector<ExpVec>& h_gens) {
  Automaton<SemidirectGroup> r = a;
  for (const auto& h : h_gens) {
    if (h.size() != a.group.n) throw std::invalid_argument("central loop: length != n");
    SemidirectElem hel = a.group.make(a.group.module->zero(), h);
    for (const auto& tr : a.transitions)
      if (a.group.mul(hel, tr.ev) != a.group.mul(tr.ev, hel))
        throw std::invalid_argument("central loop: generator does not centralize ev(A)");
    for (const auto& el : {hel, a.group.inv(hel)}) {
      typename Automaton<SemidirectGroup>::Transition tr;
      tr.from = 1;
      tr.to = 1;
      tr.ev = el;
      r.transitions.push_back(std::move(tr));
    }
  }
  return r;
}

template <class G>
struct Subautomaton {
  Automaton<G> automaton;
  std::vector<size_t> transition_map;  // new label -> label in the parent
};

/// Every trim sub-automaton (state subset containing q_1 plus transition
/// subset), each exactly once. The parent must be trim.
template <class G>
std::vector<Subautomaton<G>> enumerate_trim_subautomata(const Automaton<G>& a) {
  size_t t = a.transitions.size();
  if (t > 16) throw unsupported_error("enumerate_trim_subautomata: > 16 transitions");
  std::vector<Subautomaton<G>> out;
  for (size_t mask = 1; mask < (size_t(1) << t); ++mask) {
    Automaton<G> sub;
    sub.group = a.group;
    sub.states = a.states;
    std::vector<size_t> labels;
    for (size_t l = 1; l <= t; ++l)
      if (mask & (size_t(1) << (l - 1))) {
        sub.transitions.push_back(a.transitions[l - 1]);
        labels.push_back(l);
      }
    auto tr = trim(sub);
    if (tr.empty_language) continue;
    if (tr.kept_transitions.size() != labels.size()) continue;  // not trim as chosen
    Subautomaton<G> s;
    s.automaton = tr.automaton;
    for (auto kept : tr.kept_transitions) s.transition_map.push_back(labels[kept - 1]);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semidirect-specific transforms
// ---------------------------------------------------------------------------

struct Lattice {
  IntMatrix basis;  // rows are basis vectors (row HNF)
};

/// Z^n potentials z_i = π(ev(tree path from q_i to q_1)) over an undirected
/// spanning tree of A^± (z_1 = 0), BFS order by default; DFS order is
/// available to exercise the tree-independence of the resulting lattice.
/// Crossing δ_l forward contributes +a_l to the path, so z_Ω = a_l + z_Δ.
inline std::vector<ExpVec> tree_potentials(const Automaton<SemidirectGroup>& a, bool dfs = false) {
  size_t s = a.states, n = a.group.n;
  std::vector<bool> known(s + 1, false);
  std::vector<ExpVec> z(s + 1, ExpVec(n, 0));
  known[1] = true;
  std::deque<size_t> q{1};
  while (!q.empty()) {
    size_t u;
    if (dfs) {
      u = q.back();
      q.pop_back();
    } else {
      u = q.front();
      q.pop_front();
    }
    for (size_t l = 1; l <= a.transitions.size(); ++l) {
      size_t from = a.origin(l), to = a.dest(l);
      const ExpVec& av = a.eval(l).a;
      if (from == u && !known[to]) {
        z[to] = exp_add(z[u], exp_neg(av));
        known[to] = true;
        q.push_back(to);
      }
      if (to == u && !known[from]) {
        z[from] = exp_add(av, z[u]);
        known[from] = true;
        q.push_back(from);
      }
    }
  }
  for (size_t i = 1; i <= s; ++i)
    if (!known[i]) throw std::invalid_argument("tree_potentials: not trim");
  return z;
}

/// L = π(ev(A^±)) as a lattice: generated by {a_l + z_{Δ(l)} − z_{Ω(l)}}.
inline Lattice projection_lattice(const Automaton<SemidirectGroup>& a, bool dfs_tree = false) {
  if (!is_trim(a)) throw std::invalid_argument("projection_lattice: trim automaton required");
  auto z = tree_potentials(a, dfs_tree);
  size_t n = a.group.n, t = a.transitions.size();
  IntMatrix gens(t, n);
  for (size_t l = 1; l <= t; ++l) {
    const ExpVec& av = a.eval(l).a;
    for (size_t j = 0; j < n; ++j)
      gens(l - 1, j) = Int(av[j]) + Int(z[a.dest(l)][j]) - Int(z[a.origin(l)][j]);
  }
  auto [h, rank] = hermite_normal_form(gens);
  IntMatrix basis(rank, n);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < n; ++j) basis(i, j) = h(i, j);
  return {basis};
}

struct Primitivized {
  Automaton<SemidirectGroup> automaton;
  std::vector<ExpVec> basis;  // new variable i corresponds to X^{basis[i]}
};

struct StageOneRebase {
  Automaton<SemidirectGroup> automaton;  // same module; projections lie in the lattice
  IntMatrix lattice;                     // row HNF basis of π(ev(A^±))
};

/// First stage of the primitivity pipeline on its own: conjugate every
/// evaluation by the tree potentials, ev'_l = (0, −z_Ω)·ev·(0, z_Δ).
/// Accepting-run evaluations are preserved exactly and every projection
/// lands in L = π(ev(A^±)).
inline StageOneRebase stage_one_rebase(const Automaton<SemidirectGroup>& a) {
  if (!is_trim(a)) throw std::invalid_argument("stage_one_rebase: trim automaton required");
  size_t n = a.group.n, t = a.transitions.size();
  auto z = tree_potentials(a);
  StageOneRebase out;
  out.automaton.group = a.group;
  out.automaton.states = a.states;
  IntMatrix gens(t, n);
  for (size_t l = 1; l <= t; ++l) {
    ModElem y = a.eval(l).y.act_monomial(exp_neg(z[a.origin(l)]));
    ExpVec av = exp_add(a.eval(l).a, exp_add(z[a.dest(l)], exp_neg(z[a.origin(l)])));
    for (size_t j = 0; j < n; ++j) gens(l - 1, j) = Int(av[j]);
    typename Automaton<SemidirectGroup>::Transition tr;
    tr.from = a.origin(l);
    tr.to = a.dest(l);
    tr.ev = {std::move(y), std::move(av)};
    out.automaton.transitions.push_back(std::move(tr));
  }
  auto [h, rank] = hermite_normal_form(gens);
  out.lattice = IntMatrix(rank, n);
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < n; ++j) out.lattice(i, j) = h(i, j);
  return out;
}

namespace detail {

/// Decomposes e = c + k·H with H a full-rank row HNF and c the canonical
/// coset representative (0 <= c_j < H_jj). Returns (k, c).
inline std::pair<ExpVec, ExpVec> hnf_decompose(const IntMatrix& h, const ExpVec& e) {
  size_t n = h.cols();
  ExpVec k(h.rows(), 0), c(n, 0);
  std::vector<Int> rem(n);
  for (size_t j = 0; j < n; ++j) rem[j] = Int(e[j]);
  for (size_t i = 0; i < h.rows(); ++i) {
    // pivot of row i is at column i for a full-rank square HNF
    Int q = rem[i] / h(i, i);
    if (rem[i] - q * h(i, i) < 0) q -= 1;
    k[i] = q.convert_to<int64_t>();
    for (size_t j = 0; j < n; ++j) rem[j] -= q * h(i, j);
  }
  for (size_t j = 0; j < n; ++j) c[j] = rem[j].convert_to<int64_t>();
  return {k, c};
}

inline std::vector<ExpVec> coset_representatives(const IntMatrix& h) {
  size_t n = h.cols();
  std::vector<ExpVec> reps;
  ExpVec cur(n, 0);
  std::function<void(size_t)> rec = [&](size_t j) {
    if (j == n) {
      reps.push_back(cur);
      return;
    }
    Int d = h(j, j);
    for (Int v = 0; v < d; ++v) {
      cur[j] = v.convert_to<int64_t>();
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace detail

/// Primitivization pipeline: (1) rebase each evaluation by tree potentials so
/// every Z^n projection lies in L = π(ev(A^±)); (2) change variables to an
/// HNF basis of L, re-presenting Y over the smaller Laurent ring.
///
/// Re-presentation is implemented for: L = Z^n (no-op), Y = 0, and full-rank
/// L with Free or Evaluation backends (module generators X^c e_j over coset
/// representatives c). Everything else throws unsupported_error.
inline Primitivized primitivize(const Automaton<SemidirectGroup>& a) {
  if (!is_trim(a)) throw std::invalid_argument("primitivize: trim automaton required");
  size_t n = a.group.n, t = a.transitions.size();
  const ModulePtr& mod = a.group.module;

  auto z = tree_potentials(a);
  // stage 1: ev'_l = (0,−z_Ω)·ev·(0,z_Δ) = (X^{−z_Ω}·y, a + z_Δ − z_Ω)
  std::vector<ModElem> ys;
  std::vector<ExpVec> as;
  for (size_t l = 1; l <= t; ++l) {
    ys.push_back(a.eval(l).y.act_monomial(exp_neg(z[a.origin(l)])));
    ExpVec g = exp_add(a.eval(l).a, exp_add(z[a.dest(l)], exp_neg(z[a.origin(l)])));
    as.push_back(std::move(g));
  }

  IntMatrix gens(t, n);
  for (size_t l = 0; l < t; ++l)
    for (size_t j = 0; j < n; ++j) gens(l, j) = Int(as[l][j]);
  auto [h, rank] = hermite_normal_form(gens);

  Primitivized out;
  for (size_t i = 0; i < rank; ++i) {
    ExpVec b(n);
    for (size_t j = 0; j < n; ++j) b[j] = h(i, j).convert_to<int64_t>();
    out.basis.push_back(std::move(b));
  }

  bool lattice_full = rank == n;
  bool lattice_is_zn = lattice_full;
  if (lattice_full)
    for (size_t i = 0; i < n && lattice_is_zn; ++i)
      for (size_t j = 0; j < n && lattice_is_zn; ++j)
        if (h(i, j) != (i == j ? 1 : 0)) lattice_is_zn = false;

  auto coords_in_basis = [&](const ExpVec& g) {
    IntMatrix hb(rank, n);
    for (size_t i = 0; i < rank; ++i)
      for (size_t j = 0; j < n; ++j) hb(i, j) = h(i, j);
    // solve k·H = g by forward substitution over the pivot columns
    ExpVec k(rank, 0);
    std::vector<Int> rem(n);
    for (size_t j = 0; j < n; ++j) rem[j] = Int(g[j]);
    size_t col = 0;
    for (size_t i = 0; i < rank; ++i) {
      while (col < n && hb(i, col) == 0) ++col;
      if (col == n) break;
      if (rem[col] % hb(i, col) != 0)
        throw std::logic_error("primitivize: projection outside lattice");
      Int q = rem[col] / hb(i, col);
      k[i] = q.convert_to<int64_t>();
      for (size_t j = 0; j < n; ++j) rem[j] -= q * hb(i, j);
    }
    for (size_t j = 0; j < n; ++j)
      if (rem[j] != 0) throw std::logic_error("primitivize: projection outside lattice");
    return k;
  };

  if (lattice_is_zn) {
    Automaton<SemidirectGroup> r;
    r.group = a.group;
    r.states = a.states;
    for (size_t l = 0; l < t; ++l) {
      typename Automaton<SemidirectGroup>::Transition tr;
      tr.from = a.origin(l + 1);
      tr.to = a.dest(l + 1);
      tr.ev = {ys[l], coords_in_basis(as[l])};
      r.transitions.push_back(std::move(tr));
    }
    out.automaton = std::move(r);
    return out;
  }

  // the re-presented module only needs the submodule generated by the
  // transition elements, so an everywhere-zero y-part degenerates to rank 0
  bool module_zero = mod->rank == 0;
  if (!module_zero) {
    bool all_zero = true;
    for (const auto& y : ys) all_zero &= y.is_zero();
    module_zero = all_zero;
  }
  if (module_zero) {
    auto nm = ModulePresentation::make_free(rank, 0);
    SemidirectGroup ng(nm);
    Automaton<SemidirectGroup> r;
    r.group = ng;
    r.states = a.states;
    for (size_t l = 0; l < t; ++l) {
      typename Automaton<SemidirectGroup>::Transition tr;
      tr.from = a.origin(l + 1);
      tr.to = a.dest(l + 1);
      tr.ev = {nm->zero(), coords_in_basis(as[l])};
      r.transitions.push_back(std::move(tr));
    }
    out.automaton = std::move(r);
    return out;
  }

  if (!lattice_full)
    throw unsupported_error("primitivize: non-full-rank projection lattice over a nonzero module");

  IntMatrix hsq(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) hsq(i, j) = h(i, j);

  if (mod->backend == Backend::Evaluation && mod->targets) {
    // new targets are the power products t^{basis_i}
    QVec nt(n);
    for (size_t i = 0; i < n; ++i) {
      Rat v = 1;
      for (size_t j = 0; j < n; ++j) {
        int64_t e = out.basis[i][j];
        Rat base = e >= 0 ? (*mod->targets)[j] : Rat(1) / (*mod->targets)[j];
        for (int64_t k = 0; k < (e >= 0 ? e : -e); ++k) v *= base;
      }
      nt[i] = v;
    }
    auto nm = ModulePresentation::make_evaluation(n, 1, nt, mod->modulus);
    SemidirectGroup ng(nm);
    Automaton<SemidirectGroup> r;
    r.group = ng;
    r.states = a.states;
    for (size_t l = 0; l < t; ++l) {
      typename Automaton<SemidirectGroup>::Transition tr;
      tr.from = a.origin(l + 1);
      tr.to = a.dest(l + 1);
      tr.ev = {nm->from_value(ys[l].value()), coords_in_basis(as[l])};
      r.transitions.push_back(std::move(tr));
    }
    out.automaton = std::move(r);
    return out;
  }

  if (mod->backend == Backend::Free ||
      (mod->backend == Backend::Evaluation && !mod->targets)) {
    auto reps = detail::coset_representatives(hsq);
    std::map<ExpVec, size_t> rep_index;
    for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = i;
    size_t d = mod->rank;
    size_t new_rank = d * reps.size();
    ModulePtr nm = mod->backend == Backend::Free
                       ? ModulePresentation::make_free(n, new_rank)
                       : ModulePresentation::make_evaluation(n, new_rank, std::nullopt,
                                                             mod->modulus);
    auto represent = [&](const ModElem& y) {
      std::vector<LaurentPoly> nc(new_rank, LaurentPoly::zero(n));
      for (size_t j = 0; j < d; ++j)
        for (const auto& [e, c] : y.coords()[j].terms()) {
          auto [k, cst] = detail::hnf_decompose(hsq, e);
          size_t gen = rep_index.at(cst) * d + j;
          nc[gen] = nc[gen] + LaurentPoly::monomial(n, k, c);
        }
      return nm->element(std::move(nc));
    };
    SemidirectGroup ng(nm);
    Automaton<SemidirectGroup> r;
    r.group = ng;
    r.states = a.states;
    for (size_t l = 0; l < t; ++l) {
      typename Automaton<SemidirectGroup>::Transition tr;
      tr.from = a.origin(l + 1);
      tr.to = a.dest(l + 1);
      tr.ev = {represent(ys[l]), coords_in_basis(as[l])};
      r.transitions.push_back(std::move(tr));
    }
    out.automaton = std::move(r);
    return out;
  }

  throw unsupported_error("primitivize: module re-presentation not implemented for this backend");
}

}  // namespace ratmeta
