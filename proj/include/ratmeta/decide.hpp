#pragma once

#include "ratmeta/agraph.hpp"
#include "ratmeta/automaton.hpp"
#include "ratmeta/contraction.hpp"
#include "ratmeta/linsys.hpp"
#include "ratmeta/simplex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

struct Refutation {
  enum class Kind { FlowInfeasible, PointPositivityFail, RankZeroInfeasible, EmptyLanguage };
  Kind kind = Kind::EmptyLanguage;
  QVec farkas;
  QVec point;  // PointPositivityFail only
};

/// Certificate attached to a verdict. Traversal runs witness Group (accepting,
/// every transition used, identity evaluation); membership runs witness
/// IdentityYes (accepting, identity evaluation); refutation sets carry one
/// refutation per trim sub-automaton for IdentityNo.
struct Certificate {
  enum class Type { None, Traversal, Membership, Refutation, RefutationSet };
  Type type = Type::None;
  Run run;
  Refutation refutation;
  std::vector<std::pair<std::vector<size_t>, Refutation>> parts;  // (label subset, refutation)
};

struct BudgetReport {
  size_t candidates_tested = 0;
  int64_t max_box_radius = 0;
  Int max_coefficient = 0;
  int64_t grid_depth = 0;
};

struct Verdict {
  enum class Kind { Group, NotGroup, IdentityYes, IdentityNo, Unknown };
  Kind kind = Kind::Unknown;
  Certificate certificate;
  BudgetReport budget;
  std::string reason;  // for Unknown
};

using SemiAutomaton = Automaton<SemidirectGroup>;

// ---------------------------------------------------------------------------
// Refutations
// ---------------------------------------------------------------------------

/// Flow system of a trim automaton: rows are per-state conservation and the
/// n coordinate sums, over x in R^t; a full-image symmetric A-graph yields
/// x = f(1) with x >= 1 and Mx = 0.
inline std::vector<QVec> flow_matrix(const SemiAutomaton& a) {
  size_t t = a.transitions.size(), n = a.group.n;
  std::vector<QVec> m;
  for (size_t i = 1; i <= a.states; ++i) {
    QVec row(t, Rat(0));
    for (size_t l = 1; l <= t; ++l) {
      if (a.origin(l) == i) row[l - 1] += 1;
      if (a.dest(l) == i) row[l - 1] -= 1;
    }
    m.push_back(std::move(row));
  }
  for (size_t j = 0; j < n; ++j) {
    QVec row(t, Rat(0));
    for (size_t l = 1; l <= t; ++l) row[l - 1] = Rat(Int(a.eval(l).a[j]));
    m.push_back(std::move(row));
  }
  return m;
}

/// Farkas check for the flow refutation: w = yᵀM must satisfy w <= 0 with
/// Σw < 0, which rules out any x >= 1 with Mx = 0.
inline bool verify_flow_farkas(const SemiAutomaton& a, const QVec& y) {
  auto m = flow_matrix(a);
  if (y.size() != m.size()) return false;
  size_t t = a.transitions.size();
  QVec w(t, Rat(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < t; ++j) w[j] += y[i] * m[i][j];
  Rat total = 0;
  for (const auto& x : w) {
    if (x > 0) return false;
    total += x;
  }
  return total < 0;
}

/// None when the flow LP is feasible (no conclusion).
inline std::optional<Refutation> refute_flow(const SemiAutomaton& a) {
  auto m = flow_matrix(a);
  size_t t = a.transitions.size();
  // x = 1 + u, u >= 0:  M u = −M·1
  QVec rhs(m.size(), Rat(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < t; ++j) rhs[i] -= m[i][j];
  auto r = solve_equality_feasibility(m, rhs);
  if (r.feasible) return std::nullopt;
  Refutation ref;
  ref.kind = Refutation::Kind::FlowInfeasible;
  auto prim = primitive_integer(r.farkas);
  ref.farkas.assign(prim.size(), Rat(0));
  for (size_t i = 0; i < prim.size(); ++i) ref.farkas[i] = Rat(prim[i]);
  if (!verify_flow_farkas(a, ref.farkas))
    throw std::logic_error("refute_flow: certificate failed self-check");
  return ref;
}

/// Dyadic grid in (0,∞)^n: coordinates 2^k with |k| <= depth, ordered by
/// increasing shell so r = 1^n comes first.
inline std::vector<QVec> dyadic_grid(size_t n, int64_t depth) {
  std::vector<QVec> out;
  std::vector<int64_t> cur(n, 0);
  for (int64_t shell = 0; shell <= depth; ++shell) {
    std::vector<QVec> layer;
    std::function<void(size_t, bool)> rec = [&](size_t i, bool hit) {
      if (i == n) {
        if (hit || shell == 0) {
          QVec r(n);
          for (size_t j = 0; j < n; ++j) {
            Rat v = 1;
            for (int64_t k = 0; k < (cur[j] >= 0 ? cur[j] : -cur[j]); ++k)
              v *= cur[j] >= 0 ? Rat(2) : Rat(1, 2);
            r[j] = v;
          }
          layer.push_back(std::move(r));
        }
        return;
      }
      for (int64_t k = -shell; k <= shell; ++k) {
        cur[i] = k;
        rec(i + 1, hit || k == shell || k == -shell);
      }
    };
    rec(0, false);
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
    if (shell == 0 && n == 0) break;  // single empty point
  }
  return out;
}

inline bool verify_point_farkas(const SemiAutomaton& a, const QVec& r, const QVec& y) {
  size_t t = a.transitions.size();
  if (y.size() != t) return false;
  bool nonzero = false;
  for (const auto& x : y) {
    if (x < 0) return false;
    nonzero |= (x != 0);
  }
  if (!nonzero) return false;
  for (const auto& b : evaluated_solution_basis(a, r))
    if (dot(y, b) != 0) return false;
  return true;
}

/// Pointwise positivity refutation: at each grid point r the evaluated constraints
/// span every reachable value vector f(r), so span ∩ R_{>0}^t = ∅ at any
/// single r soundly refutes the existence of a witness tuple.
inline std::optional<Refutation> refute_point_positivity(const SemiAutomaton& a,
                                                         int64_t grid_depth) {
  size_t n = a.group.n;
  for (const auto& r : dyadic_grid(n, grid_depth)) {
    auto basis = evaluated_solution_basis(a, r);
    auto meet = lp_positive_meet(basis, a.transitions.size(), true);
    if (!meet.feasible) {
      Refutation ref;
      ref.kind = Refutation::Kind::PointPositivityFail;
      ref.point = r;
      ref.farkas = meet.farkas;
      if (!verify_point_farkas(a, r, ref.farkas))
        throw std::logic_error("refute_point_positivity: certificate failed self-check");
      return ref;
    }
  }
  return std::nullopt;
}

/// Generators of the integer solution lattice of the degenerate case: the
/// projection lattice has rank 0, every rebased transition has zero Z^n part,
/// and the admissible tuples are positive constants. Built on the stage-one
/// rebased automaton so the module stays the original one.
inline std::vector<QVec> rank_zero_generators(const SemiAutomaton& rebased) {
  auto sys = build_box_system(rebased, 0);
  if (!sys.module_conditions_linear)
    throw unsupported_error("rank_zero_generators: module conditions too large to linearize");
  std::vector<QVec> gens;
  for (const auto& g : box_kernel_generators(sys)) {
    QVec q(g.size());
    for (size_t i = 0; i < g.size(); ++i) q[i] = Rat(g[i]);
    gens.push_back(std::move(q));
  }
  return gens;
}

struct RankZeroDecision {
  bool group_side = false;
  QVec coefficients;  // over the generators, when feasible
  QVec farkas;        // verified infeasibility witness otherwise
};

/// Degenerate-case core: does the real span of the generators meet the open
/// positive orthant? Decisive in both directions, certificate either way.
inline RankZeroDecision decide_rank_zero(const std::vector<QVec>& generators, size_t k) {
  auto meet = lp_positive_meet(generators, k, true);
  RankZeroDecision d;
  d.group_side = meet.feasible;
  d.coefficients = std::move(meet.coefficients);
  d.farkas = std::move(meet.farkas);
  return d;
}

// ---------------------------------------------------------------------------
// Procedure A
// ---------------------------------------------------------------------------

struct ProcedureAStats {
  size_t candidates_tested = 0;
  Int max_coefficient = 0;
};

/// Enumerates candidate tuples f ∈ N[X^±]^t with support in the box and
/// coefficients <= cmax, in the fixed order (box radius, coefficient sum,
/// slotwise lexicographic), accepting the first tuple that is everywhere
/// nonzero, symmetric, represents zero, and passes the accessibility
/// condition. Candidates are drawn as integer combinations of a kernel basis
/// of the linear conditions, which preserves the search space and the order.
inline std::optional<PositionPolys> procedure_a_search(const SemiAutomaton& a, int64_t box_radius,
                                                       const Int& cmax,
                                                       ProcedureAStats* stats = nullptr,
                                                       size_t candidate_cap = 200000) {
  size_t n = a.group.n, t = a.transitions.size();
  if (n > 3) throw unsupported_error("procedure_a_search: n > 3");
  const ModulePtr& mod = a.group.module;

  std::set<std::vector<Int>> seen;
  ProcedureAStats local;
  ProcedureAStats& st = stats ? *stats : local;

  for (int64_t radius = 0; radius <= box_radius; ++radius) {
    auto sys = build_box_system(a, radius);
    auto gens = box_kernel_generators(sys);
    if (gens.empty()) continue;
    size_t k = gens.size();
    if (k > 18) throw unsupported_error("procedure_a_search: kernel dimension too large");

    // collect candidates f = Σ λ_i g_i with small ‖λ‖₁, then order canonically
    std::vector<std::vector<Int>> candidates;
    int64_t lmax = std::max<int64_t>(3, box_radius + 2);
    std::vector<Int> lambda(k, Int(0));
    std::function<void(size_t, int64_t)> rec = [&](size_t i, int64_t budget_left) {
      if (candidates.size() > candidate_cap) return;
      if (i == k) {
        std::vector<Int> f(sys.slots, Int(0));
        bool any = false;
        for (size_t gi = 0; gi < k; ++gi) {
          if (lambda[gi] == 0) continue;
          any = true;
          for (size_t s = 0; s < sys.slots; ++s) f[s] += lambda[gi] * gens[gi][s];
        }
        if (!any) return;
        for (const auto& c : f)
          if (c < 0 || c > cmax) return;
        // every label needs a nonzero polynomial
        size_t per = sys.box.size();
        for (size_t l = 0; l < t; ++l) {
          bool nz = false;
          for (size_t m = 0; m < per; ++m) nz |= (f[l * per + m] != 0);
          if (!nz) return;
        }
        if (seen.count(f)) return;
        seen.insert(f);
        candidates.push_back(std::move(f));
        return;
      }
      for (int64_t v = -budget_left; v <= budget_left; ++v) {
        lambda[i] = v;
        rec(i + 1, budget_left - (v >= 0 ? v : -v));
      }
      lambda[i] = 0;
    };
    rec(0, lmax);

    auto coeff_sum = [](const std::vector<Int>& f) {
      Int s = 0;
      for (const auto& c : f) s += c;
      return s;
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const std::vector<Int>& x, const std::vector<Int>& y) {
                Int sx = coeff_sum(x), sy = coeff_sum(y);
                if (sx != sy) return sx < sy;
                return x < y;
              });

    for (const auto& cand : candidates) {
      ++st.candidates_tested;
      PositionPolys f(t, LaurentPoly::zero(n));
      size_t per = sys.box.size();
      for (size_t l = 0; l < t; ++l)
        for (size_t m = 0; m < per; ++m)
          if (cand[l * per + m] != 0) {
            f[l] = f[l] + LaurentPoly::monomial(n, sys.box[m], cand[l * per + m]);
            if (cand[l * per + m] > st.max_coefficient) st.max_coefficient = cand[l * per + m];
          }
      if (!sys.module_conditions_linear) {
        ModElem rep = mod->zero();
        for (size_t l = 0; l < t; ++l) rep = rep + a.eval(l + 1).y.act(f[l]);
        if (!rep.is_zero()) continue;
      }
      if (!accessibility_condition(a, f)) continue;
      return f;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Witness to Identity Traversal
// ---------------------------------------------------------------------------

/// Realizes a Procedure-A witness as an A-graph, finds an Eulerian union of
/// translations, and reads off the Identity Traversal. The run is re-verified
/// exactly before returning.
inline Run witness_to_traversal(const SemiAutomaton& a, const PositionPolys& f, size_t n_max) {
  AGraph g = graph_of_polys(a, f);
  auto flags = structural_flags(g);
  if (!flags.full_image || !flags.symmetric || !flags.represents_zero)
    throw std::invalid_argument("witness_to_traversal: tuple is not a witness");
  size_t cap = std::max<size_t>(n_max, 1);
  UnionSearchResult res;
  for (size_t attempt = cap; attempt <= 64 * cap; attempt *= 2) {
    res = eulerian_union_search(g, attempt);
    if (!res.exhausted) break;
  }
  if (res.exhausted) throw std::runtime_error("witness_to_traversal: union search exhausted");
  const Run& run = res.circuit;
  if (!is_accepting(a, run)) throw std::logic_error("witness_to_traversal: not accepting");
  std::set<size_t> used(run.begin(), run.end());
  if (used.size() != a.transitions.size())
    throw std::logic_error("witness_to_traversal: traversal misses transitions");
  auto ev = evaluate_run(a, run);
  if (!a.group.is_identity(ev)) throw std::logic_error("witness_to_traversal: not the identity");
  return run;
}

// ---------------------------------------------------------------------------
// check_certificate
// ---------------------------------------------------------------------------

inline bool check_certificate(const SemiAutomaton& a, const Certificate& cert);

namespace detail {

inline bool check_refutation(const SemiAutomaton& trimmed, bool was_empty, const Refutation& ref) {
  try {
    switch (ref.kind) {
      case Refutation::Kind::EmptyLanguage:
        return was_empty;
      case Refutation::Kind::FlowInfeasible:
        return !was_empty && verify_flow_farkas(trimmed, ref.farkas);
      case Refutation::Kind::RankZeroInfeasible: {
        if (was_empty) return false;
        auto reb = stage_one_rebase(trimmed);
        if (reb.lattice.rows() != 0) return false;  // only issued in the degenerate case
        auto gens = rank_zero_generators(reb.automaton);
        bool nonzero = false;
        for (const auto& x : ref.farkas) {
          if (x < 0) return false;
          nonzero |= (x != 0);
        }
        if (!nonzero || ref.farkas.size() != trimmed.transitions.size()) return false;
        for (const auto& g : gens)
          if (dot(ref.farkas, g) != 0) return false;
        return true;
      }
      case Refutation::Kind::PointPositivityFail: {
        if (was_empty) return false;
        if (ref.point.size() != trimmed.group.n) return false;
        for (const auto& x : ref.point)
          if (x <= 0) return false;
        return verify_point_farkas(trimmed, ref.point, ref.farkas);
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace detail

/// Replays a certificate against the automaton without consulting any decider
/// state. Certificates refer to the deterministically trimmed automaton;
/// malformed certificates yield false, never an exception.
inline bool check_certificate(const SemiAutomaton& a, const Certificate& cert) {
  try {
    auto tr = trim(a);
    const SemiAutomaton& at = tr.automaton;
    switch (cert.type) {
      case Certificate::Type::None:
        return false;
      case Certificate::Type::Traversal: {
        if (tr.empty_language) return false;
        if (!is_accepting(at, cert.run)) return false;
        std::set<size_t> used(cert.run.begin(), cert.run.end());
        if (used.size() != at.transitions.size()) return false;
        return at.group.is_identity(evaluate_run(at, cert.run));
      }
      case Certificate::Type::Membership: {
        if (tr.empty_language) return false;
        if (!is_accepting(at, cert.run)) return false;
        return at.group.is_identity(evaluate_run(at, cert.run));
      }
      case Certificate::Type::Refutation:
        return detail::check_refutation(at, tr.empty_language, cert.refutation);
      case Certificate::Type::RefutationSet: {
        if (tr.empty_language) return cert.parts.empty();
        std::map<std::vector<size_t>, const Refutation*> by_labels;
        for (const auto& [labels, ref] : cert.parts) by_labels[labels] = &ref;
        for (const auto& sub : enumerate_trim_subautomata(at)) {
          auto it = by_labels.find(sub.transition_map);
          if (it == by_labels.end()) return false;
          auto subtrim = trim(sub.automaton);
          if (!detail::check_refutation(subtrim.automaton, subtrim.empty_language, *it->second))
            return false;
        }
        return true;
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Top-level deciders
// ---------------------------------------------------------------------------

/// Sound Group Problem decider. Certificate-backed in both decisive
/// directions; Unknown reports the exhausted budget (NO-side incompleteness
/// outside the implemented refutation classes is explicit).
inline Verdict decide_group(const SemiAutomaton& a, int64_t budget = 4) {
  if (budget < 1) throw std::invalid_argument("decide_group: budget >= 1");
  Verdict v;
  v.budget.max_box_radius = budget;
  v.budget.grid_depth = budget;

  auto tr = trim(a);
  if (tr.empty_language) {
    v.kind = Verdict::Kind::NotGroup;
    v.certificate.type = Certificate::Type::Refutation;
    v.certificate.refutation.kind = Refutation::Kind::EmptyLanguage;
    if (!check_certificate(a, v.certificate))
      throw std::logic_error("decide_group: empty-language certificate failed");
    return v;
  }
  const SemiAutomaton& at = tr.automaton;

  if (auto ref = refute_flow(at)) {
    v.kind = Verdict::Kind::NotGroup;
    v.certificate.type = Certificate::Type::Refutation;
    v.certificate.refutation = *ref;
    if (!check_certificate(a, v.certificate))
      throw std::logic_error("decide_group: flow certificate failed");
    return v;
  }

  // pointwise refutation on the trimmed automaton; sound without
  // primitivity, and still available when primitivize is unsupported
  if (at.group.n >= 1) {
    if (auto ref = refute_point_positivity(at, budget)) {
      v.kind = Verdict::Kind::NotGroup;
      v.certificate.type = Certificate::Type::Refutation;
      v.certificate.refutation = *ref;
      if (!check_certificate(a, v.certificate))
        throw std::logic_error("decide_group: point certificate failed");
      return v;
    }
  }

  // degenerate projection lattice: every rebased transition has zero Z^n
  // part, and the problem is one exact LP over positive constants
  StageOneRebase reb;
  try {
    reb = stage_one_rebase(at);
  } catch (const std::exception& e) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = e.what();
    return v;
  }
  if (reb.lattice.rows() == 0) {
    try {
      const SemiAutomaton& ar = reb.automaton;
      auto gens = rank_zero_generators(ar);
      auto dec = decide_rank_zero(gens, ar.transitions.size());
      if (!dec.group_side) {
        v.kind = Verdict::Kind::NotGroup;
        v.certificate.type = Certificate::Type::Refutation;
        v.certificate.refutation.kind = Refutation::Kind::RankZeroInfeasible;
        v.certificate.refutation.farkas = dec.farkas;
        if (!check_certificate(a, v.certificate))
          throw std::logic_error("decide_group: rank-zero certificate failed");
        return v;
      }
      // positive rational combination -> integer witness tuple of constants.
      // Scaling the combination coefficients (not the point) keeps the tuple
      // inside the integer solution lattice, congruence conditions included.
      Int den = 1;
      for (const auto& c : dec.coefficients)
        den = boost::multiprecision::lcm(den, rat_den(c));
      QVec x(ar.transitions.size(), Rat(0));
      for (size_t i = 0; i < gens.size(); ++i) {
        Rat scaled = dec.coefficients[i] * Rat(den);
        for (size_t j = 0; j < x.size(); ++j) x[j] += scaled * gens[i][j];
      }
      PositionPolys f;
      for (const auto& c : x) {
        if (rat_den(c) != 1) throw std::logic_error("decide_group: scaled tuple not integral");
        f.push_back(LaurentPoly::constant(ar.group.n, rat_num(c)));
      }
      // the constants graph of a trim automaton is connected, so its Euler
      // circuit is the traversal
      AGraph gr = graph_of_polys(ar, f);
      auto flags = structural_flags(gr);
      if (!flags.full_image || !flags.symmetric || !flags.represents_zero)
        throw std::logic_error("decide_group: rank-zero tuple is not a witness");
      auto circuit = euler_circuit(gr);
      if (!circuit) throw std::logic_error("decide_group: rank-zero graph not Eulerian");
      v.kind = Verdict::Kind::Group;
      v.certificate.type = Certificate::Type::Traversal;
      v.certificate.run = *circuit;
      if (!check_certificate(a, v.certificate))
        throw std::logic_error("decide_group: rank-zero traversal failed");
      return v;
    } catch (const unsupported_error& e) {
      v.kind = Verdict::Kind::Unknown;
      v.reason = e.what();
      return v;
    }
  }

  Primitivized prim;
  try {
    prim = primitivize(at);
  } catch (const unsupported_error& e) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = e.what();
    return v;
  }
  const SemiAutomaton& ap = prim.automaton;

  try {
    ProcedureAStats stats;
    auto witness = procedure_a_search(ap, budget, Int(budget), &stats);
    v.budget.candidates_tested = stats.candidates_tested;
    v.budget.max_coefficient = stats.max_coefficient;
    if (witness) {
      Run run = witness_to_traversal(ap, *witness, static_cast<size_t>(4 * budget));
      v.kind = Verdict::Kind::Group;
      v.certificate.type = Certificate::Type::Traversal;
      v.certificate.run = run;
      if (!check_certificate(a, v.certificate))
        throw std::logic_error("decide_group: traversal certificate failed");
      return v;
    }
  } catch (const unsupported_error& e) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = e.what();
    return v;
  }

  v.kind = Verdict::Kind::Unknown;
  v.reason = "budget exhausted: no witness found and no refutation applies";
  return v;
}

/// Identity Problem for the rational subsemigroup of a trim automaton, via
/// sub-automaton enumeration.
inline Verdict decide_identity_rational(const SemiAutomaton& a, int64_t budget = 4) {
  Verdict v;
  auto tr = trim(a);
  if (tr.empty_language) {
    v.kind = Verdict::Kind::IdentityNo;
    v.certificate.type = Certificate::Type::RefutationSet;
    if (!check_certificate(a, v.certificate))
      throw std::logic_error("decide_identity: empty-language certificate failed");
    return v;
  }
  const SemiAutomaton& at = tr.automaton;

  std::vector<std::pair<std::vector<size_t>, Refutation>> parts;
  bool incomplete = false;
  std::string reason;
  for (const auto& sub : enumerate_trim_subautomata(at)) {
    Verdict sv = decide_group(sub.automaton, budget);
    v.budget.candidates_tested += sv.budget.candidates_tested;
    if (sv.kind == Verdict::Kind::Group) {
      // lift the sub-automaton run back to the labels of the trimmed automaton
      Run lifted;
      auto subtrim = trim(sub.automaton);  // deterministic relabeling used by decide_group
      for (auto l : sv.certificate.run)
        lifted.push_back(sub.transition_map[subtrim.kept_transitions[l - 1] - 1]);
      v.kind = Verdict::Kind::IdentityYes;
      v.certificate.type = Certificate::Type::Membership;
      v.certificate.run = lifted;
      if (!check_certificate(a, v.certificate))
        throw std::logic_error("decide_identity: membership certificate failed");
      return v;
    }
    if (sv.kind == Verdict::Kind::NotGroup) {
      parts.emplace_back(sub.transition_map, sv.certificate.refutation);
    } else {
      incomplete = true;
      reason = sv.reason;
    }
  }
  if (incomplete) {
    v.kind = Verdict::Kind::Unknown;
    v.reason = reason.empty() ? "a sub-automaton resolved to Unknown" : reason;
    return v;
  }
  v.kind = Verdict::Kind::IdentityNo;
  v.certificate.type = Certificate::Type::RefutationSet;
  v.certificate.parts = std::move(parts);
  if (!check_certificate(a, v.certificate))
    throw std::logic_error("decide_identity: refutation set failed");
  return v;
}

/// Identity Problem for a finitely generated subsemigroup: the generators
/// become loops of a one-state automaton, and the classical subset reduction is
/// exactly trim sub-automaton enumeration there.
inline Verdict decide_identity_fg(const SemidirectGroup& g,
                                  const std::vector<SemidirectElem>& generators,
                                  int64_t budget = 4) {
  if (generators.empty()) throw std::invalid_argument("decide_identity_fg: no generators");
  SemiAutomaton a;
  a.group = g;
  a.states = 1;
  for (const auto& gen : generators) a.transitions.push_back({1, 1, gen});
  return decide_identity_rational(a, budget);
}

}  // namespace ratmeta
