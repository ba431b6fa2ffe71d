#pragma once

#include "ratmeta/automaton.hpp"
#include "ratmeta/laurent.hpp"
#include "ratmeta/polytope.hpp"
#include "ratmeta/semidirect.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace ratmeta {

/// Vertex of an A-graph: (b_i, z) with i a state index and z in Z^n.
struct AVertex {
  size_t state;
  ExpVec coord;

  bool operator<(const AVertex& o) const {
    if (state != o.state) return state < o.state;
    return coord < o.coord;
  }
  bool operator==(const AVertex& o) const { return state == o.state && coord == o.coord; }
};

/// Edge with label l from (b_{Ω(l)}, coord) to (b_{Δ(l)}, coord + a_l).
struct AEdge {
  ExpVec coord;
  size_t label;

  bool operator<(const AEdge& o) const {
    if (label != o.label) return label < o.label;
    return coord < o.coord;
  }
  bool operator==(const AEdge& o) const { return label == o.label && coord == o.coord; }
};

/// Finite directed multigraph over the lattice union Λ_1 ⊔ … ⊔ Λ_s. The
/// automaton reference is non-owning; graphs live inside the scope of their
/// automaton.
struct AGraph {
  const Automaton<SemidirectGroup>* automaton = nullptr;
  std::vector<AEdge> edges;  // kept sorted for canonical equality

  size_t n() const { return automaton->group.n; }

  AVertex source(const AEdge& e) const { return {automaton->origin(e.label), e.coord}; }
  AVertex target(const AEdge& e) const {
    return {automaton->dest(e.label), exp_add(e.coord, automaton->eval(e.label).a)};
  }

  std::vector<AVertex> vertices() const {
    std::set<AVertex> vs;
    for (const auto& e : edges) {
      vs.insert(source(e));
      vs.insert(target(e));
    }
    return {vs.begin(), vs.end()};
  }

  void canonicalize() { std::sort(edges.begin(), edges.end()); }
};

using PositionPolys = std::vector<LaurentPoly>;  // one entry per transition label

/// Graph of an accepting run: edge j starts at (b_{Ω(l_j)}, a_{l_1}+…+a_{l_{j-1}}).
inline AGraph graph_of_run(const Automaton<SemidirectGroup>& a, const Run& run) {
  if (!is_accepting(a, run)) throw std::invalid_argument("graph_of_run: run not accepting");
  AGraph g;
  g.automaton = &a;
  ExpVec pos(a.group.n, 0);
  for (size_t lbl : run) {
    g.edges.push_back({pos, lbl});
    pos = exp_add(pos, a.eval(lbl).a);
  }
  g.canonicalize();
  return g;
}

inline PositionPolys position_polynomials(const AGraph& g) {
  const auto& a = *g.automaton;
  PositionPolys f(a.transitions.size(), LaurentPoly::zero(a.group.n));
  for (const auto& e : g.edges)
    f[e.label - 1] = f[e.label - 1] + LaurentPoly::monomial(a.group.n, e.coord, Int(1));
  return f;
}

/// Inverse of position_polynomials: coefficient c at X^z in f_l becomes c
/// parallel edges of label l at coordinate z.
inline AGraph graph_of_polys(const Automaton<SemidirectGroup>& a, const PositionPolys& f) {
  if (f.size() != a.transitions.size())
    throw std::invalid_argument("graph_of_polys: one polynomial per transition");
  AGraph g;
  g.automaton = &a;
  for (size_t l = 1; l <= f.size(); ++l) {
    if (f[l - 1].vars() != a.group.n) throw std::invalid_argument("graph_of_polys: variable count");
    for (const auto& [e, c] : f[l - 1].terms()) {
      if (c < 0) throw std::invalid_argument("graph_of_polys: negative coefficient");
      for (Int k = 0; k < c; ++k) g.edges.push_back({e, l});
    }
  }
  g.canonicalize();
  return g;
}

inline AGraph translate(const AGraph& g, const ExpVec& z) {
  AGraph r;
  r.automaton = g.automaton;
  r.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) r.edges.push_back({exp_add(e.coord, z), e.label});
  r.canonicalize();
  return r;
}

/// Σ_e X^{π(σ(e))}·y_{λ(e)}, computed both edge-wise and as Σ_l f_l·y_l; the
/// two routes must agree.
inline ModElem represented_element(const AGraph& g) {
  const auto& a = *g.automaton;
  ModElem via_edges = a.group.module->zero();
  for (const auto& e : g.edges) via_edges = via_edges + a.eval(e.label).y.act_monomial(e.coord);
  auto f = position_polynomials(g);
  ModElem via_polys = a.group.module->zero();
  for (size_t l = 1; l <= f.size(); ++l) via_polys = via_polys + a.eval(l).y.act(f[l - 1]);
  if (via_edges != via_polys)
    throw std::logic_error("represented_element: computation paths disagree");
  return via_edges;
}

struct StructuralFlags {
  bool full_image = false;
  bool symmetric = false;
  bool represents_zero = false;
};

/// Symmetry is established twice, by vertex degree counting and by the
/// polynomial identities Σ_{Ω(l)=i} f_l = Σ_{Δ(l)=i} f_l·X^{a_l}; the two
/// characterizations must agree.
inline StructuralFlags structural_flags(const AGraph& g) {
  const auto& a = *g.automaton;
  auto f = position_polynomials(g);
  StructuralFlags flags;
  flags.full_image = true;
  for (const auto& p : f)
    if (p.is_zero()) flags.full_image = false;

  std::map<AVertex, long long> balance;
  for (const auto& e : g.edges) {
    balance[g.source(e)] += 1;
    balance[g.target(e)] -= 1;
  }
  bool sym_degrees = true;
  for (const auto& [v, b] : balance)
    if (b != 0) sym_degrees = false;

  bool sym_polys = true;
  for (size_t i = 1; i <= a.states; ++i) {
    LaurentPoly lhs = LaurentPoly::zero(a.group.n), rhs = LaurentPoly::zero(a.group.n);
    for (size_t l = 1; l <= f.size(); ++l) {
      if (a.origin(l) == i) lhs = lhs + f[l - 1];
      if (a.dest(l) == i) rhs = rhs + f[l - 1].shift(a.eval(l).a);
    }
    if (lhs != rhs) sym_polys = false;
  }
  if (sym_degrees != sym_polys)
    throw std::logic_error("structural_flags: symmetry characterizations disagree");
  flags.symmetric = sym_degrees;
  flags.represents_zero = represented_element(g).is_zero();
  return flags;
}

namespace detail {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = i;
  }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline bool is_connected(const AGraph& g) {
  if (g.edges.empty()) return false;
  auto vs = g.vertices();
  std::map<AVertex, size_t> idx;
  for (size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = i;
  detail::UnionFind uf(vs.size());
  for (const auto& e : g.edges) uf.unite(idx[g.source(e)], idx[g.target(e)]);
  size_t root = uf.find(0);
  for (size_t i = 1; i < vs.size(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

/// Hierholzer circuit through every edge exactly once, starting from
/// (b_1, 0^n) after translating the graph to contain it. Returns the label
/// sequence, which is an accepting run of the automaton; nullopt when the
/// graph is not Eulerian or has no Λ_1 vertex.
inline std::optional<Run> euler_circuit(const AGraph& g) {
  if (g.edges.empty()) return std::nullopt;
  auto flags_balance = [&] {
    std::map<AVertex, long long> balance;
    for (const auto& e : g.edges) {
      balance[g.source(e)] += 1;
      balance[g.target(e)] -= 1;
    }
    for (const auto& [v, b] : balance)
      if (b != 0) return false;
    return true;
  };
  if (!flags_balance() || !is_connected(g)) return std::nullopt;

  // translate so that (b_1, 0^n) is a vertex: shift by the lex-least Λ_1 coord
  std::optional<ExpVec> base;
  for (const auto& v : g.vertices())
    if (v.state == 1 && (!base || v.coord < *base)) base = v.coord;
  if (!base) return std::nullopt;
  AGraph h = translate(g, exp_neg(*base));

  std::map<AVertex, std::vector<size_t>> out_edges;  // vertex -> edge indices
  for (size_t i = 0; i < h.edges.size(); ++i) out_edges[h.source(h.edges[i])].push_back(i);
  for (auto& [v, es] : out_edges)
    std::sort(es.begin(), es.end(), [&](size_t x, size_t y) { return h.edges[x] < h.edges[y]; });

  AVertex start{1, ExpVec(h.n(), 0)};
  if (!out_edges.count(start)) return std::nullopt;
  std::map<AVertex, size_t> next_out;
  std::vector<size_t> stack_edges;
  std::vector<AVertex> stack{start};
  Run circuit;
  while (!stack.empty()) {
    AVertex v = stack.back();
    size_t& cursor = next_out[v];
    auto it = out_edges.find(v);
    if (it != out_edges.end() && cursor < it->second.size()) {
      size_t ei = it->second[cursor++];
      stack.push_back(h.target(h.edges[ei]));
      stack_edges.push_back(ei);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        circuit.push_back(h.edges[stack_edges.back()].label);
        stack_edges.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  if (circuit.size() != h.edges.size()) return std::nullopt;
  return circuit;
}

/// Hull of the vertex embedding in Z^{s+n}; every strict face must have an
/// edge from the face into the rest of the hull.
inline bool face_accessible_geometric(const AGraph& g) {
  const auto& a = *g.automaton;
  auto vs = g.vertices();
  if (vs.empty()) return false;
  size_t s = a.states, n = a.group.n;
  std::vector<std::vector<Int>> pts;
  for (const auto& v : vs) {
    std::vector<Int> p(s + n, Int(0));
    p[v.state - 1] = 1;
    for (size_t j = 0; j < n; ++j) p[s + j] = Int(v.coord[j]);
    pts.push_back(std::move(p));
  }
  auto embed = [&](const AVertex& v) {
    QVec p(s + n, Rat(0));
    p[v.state - 1] = 1;
    for (size_t j = 0; j < n; ++j) p[s + j] = Rat(Int(v.coord[j]));
    return p;
  };
  auto hf = convex_hull_faces_int(pts);
  for (const auto& face : hf.strict_faces) {
    Rat mx = dot(face.direction, hf.hull.vertices[face.vertex_indices[0]]);
    bool escaped = false;
    for (const auto& e : g.edges) {
      if (dot(face.direction, embed(g.source(e))) != mx) continue;
      if (dot(face.direction, embed(g.target(e))) < mx) {
        escaped = true;
        break;
      }
    }
    if (!escaped) return false;
  }
  return true;
}

struct UnionSearchResult {
  bool exhausted = false;
  std::vector<ExpVec> translations;
  AGraph graph;
  Run circuit;
};

/// Eulerian union search: for N = 1..N_max unions the translations of Γ
/// over NC ∩ Z^n with C the Minkowski sum of the per-lattice hulls, then
/// greedily prunes translations and reads off an Euler circuit through
/// (b_1, 0^n). The result is re-verified before returning.
inline UnionSearchResult eulerian_union_search(const AGraph& g, size_t n_max) {
  const auto& a = *g.automaton;
  size_t n = a.group.n;
  auto flags = structural_flags(g);
  if (!flags.full_image || !flags.symmetric)
    throw std::invalid_argument("eulerian_union_search: graph must be full-image and symmetric");
  if (!face_accessible_geometric(g))
    throw std::invalid_argument("eulerian_union_search: graph must be face-accessible");
  if (!is_trim(a)) throw std::invalid_argument("eulerian_union_search: automaton must be trim");
  {
    auto lat = projection_lattice(a);
    bool prim = lat.basis.rows() == n;
    for (size_t i = 0; i < lat.basis.rows() && prim; ++i)
      for (size_t j = 0; j < n && prim; ++j)
        if (lat.basis(i, j) != (i == j ? 1 : 0)) prim = false;
    if (!prim) throw std::invalid_argument("eulerian_union_search: automaton must be primitive");
  }

  // per-lattice hulls of the Z^n coordinates
  std::map<size_t, std::vector<QVec>> coords;
  for (const auto& v : g.vertices()) {
    QVec p(n);
    for (size_t j = 0; j < n; ++j) p[j] = Rat(Int(v.coord[j]));
    coords[v.state].push_back(p);
  }

  // multiset sum of the translated copies: degrees add, so symmetry survives
  auto build_union = [&](const std::vector<ExpVec>& zs) {
    AGraph u;
    u.automaton = &a;
    for (const auto& z : zs)
      for (const auto& e : g.edges) u.edges.push_back({exp_add(e.coord, z), e.label});
    u.canonicalize();
    return u;
  };

  Polytope minkowski_c;
  if (n > 0) {
    bool first = true;
    for (const auto& [st, pts] : coords) {
      auto hull = convex_hull_faces(pts).hull;
      minkowski_c = first ? hull : minkowski_sum(minkowski_c, hull);
      first = false;
    }
  }

  UnionSearchResult res;
  for (size_t bigN = 1; bigN <= n_max; ++bigN) {
    std::vector<ExpVec> zs;
    if (n == 0) {
      zs.push_back(ExpVec{});
    } else {
      auto scaled = scale_polytope(minkowski_c, Int(bigN));
      for (const auto& z : lattice_points(scaled)) {
        ExpVec e(n);
        for (size_t j = 0; j < n; ++j) e[j] = z[j].convert_to<int64_t>();
        zs.push_back(std::move(e));
      }
    }
    std::sort(zs.begin(), zs.end());
    AGraph u = build_union(zs);
    if (!is_connected(u)) {
      if (n == 0) break;  // unions cannot grow further
      continue;
    }

    // greedy pruning, largest translation first
    for (size_t i = zs.size(); i-- > 0;) {
      if (zs.size() == 1) break;
      std::vector<ExpVec> fewer;
      for (size_t j = 0; j < zs.size(); ++j)
        if (j != i) fewer.push_back(zs[j]);
      AGraph cand = build_union(fewer);
      if (is_connected(cand)) zs = std::move(fewer);
    }
    u = build_union(zs);

    auto run = euler_circuit(u);
    if (!run) throw std::logic_error("eulerian_union_search: connected symmetric union not Eulerian");

    // shift so (b_1, 0^n) is a vertex, mirroring what euler_circuit did
    std::optional<ExpVec> base;
    for (const auto& v : u.vertices())
      if (v.state == 1 && (!base || v.coord < *base)) base = v.coord;
    AGraph shifted = translate(u, exp_neg(*base));
    std::vector<ExpVec> final_zs;
    for (const auto& z : zs) final_zs.push_back(exp_add(z, exp_neg(*base)));

    if (!is_accepting(a, *run))
      throw std::logic_error("eulerian_union_search: circuit is not an accepting run");
    res.exhausted = false;
    res.translations = std::move(final_zs);
    res.graph = std::move(shifted);
    res.circuit = std::move(*run);
    return res;
  }
  res.exhausted = true;
  return res;
}

}  // namespace ratmeta
