#pragma once

#include "ratmeta/decide.hpp"
#include "ratmeta/matq.hpp"
#include "ratmeta/oracle.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratmeta {

using Json = nlohmann::ordered_json;

/// Thrown on malformed instance or certificate files; the CLI maps it to
/// exit code 3 with the diagnostic.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw input_error(std::string("missing field '") + name + "'");
  return *it;
}

inline size_t size_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_number_integer() && !f.is_number_unsigned())
    throw input_error(std::string("field '") + name + "' must be a nonnegative integer");
  int64_t v = f.get<int64_t>();
  if (v < 0) throw input_error(std::string("field '") + name + "' must be nonnegative");
  return static_cast<size_t>(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Module presentation JSON
//   {"n":1,"rank":1,"backend":"free","relations":[]}
//   {"n":1,"rank":1,"backend":"evaluation","target":["2"],"modulus":null}
//   {"n":1,"rank":1,"backend":"groebner","relations":[["2"],["X1-1"]]}
// ---------------------------------------------------------------------------

inline ModulePtr module_from_json(const Json& j) {
  size_t n = detail::size_field(j, "n");
  size_t rank = detail::size_field(j, "rank");
  std::string backend = detail::field(j, "backend").get<std::string>();
  try {
    if (backend == "free") {
      return ModulePresentation::make_free(n, rank);
    }
    if (backend == "evaluation") {
      std::optional<QVec> targets;
      if (j.contains("target") && !j["target"].is_null()) {
        QVec t;
        for (const auto& s : j["target"]) t.push_back(rat_from_string(s.get<std::string>()));
        targets = std::move(t);
      }
      std::optional<Int> modulus;
      if (j.contains("modulus") && !j["modulus"].is_null())
        modulus = Int(j["modulus"].get<std::string>());
      return ModulePresentation::make_evaluation(n, rank, std::move(targets), std::move(modulus));
    }
    if (backend == "groebner") {
      std::vector<std::vector<LaurentPoly>> rels;
      for (const auto& rel : detail::field(j, "relations")) {
        std::vector<LaurentPoly> vec;
        for (const auto& p : rel) vec.push_back(parse_poly(p.get<std::string>(), n));
        rels.push_back(std::move(vec));
      }
      return ModulePresentation::make_groebner(n, rank, std::move(rels));
    }
  } catch (const unsupported_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error(std::string("module: ") + e.what());
  }
  throw input_error("unknown backend '" + backend + "'");
}

inline Json module_to_json(const ModulePtr& m) {
  Json j;
  j["n"] = m->n;
  j["rank"] = m->rank;
  switch (m->backend) {
    case Backend::Free:
      j["backend"] = "free";
      j["relations"] = Json::array();
      break;
    case Backend::Evaluation: {
      j["backend"] = "evaluation";
      if (m->targets) {
        Json t = Json::array();
        for (const auto& x : *m->targets) t.push_back(rat_to_string(x));
        j["target"] = t;
      } else {
        j["target"] = nullptr;
      }
      j["modulus"] = m->modulus ? Json(m->modulus->str()) : Json(nullptr);
      break;
    }
    case Backend::Groebner: {
      j["backend"] = "groebner";
      Json rels = Json::array();
      for (const auto& rel : m->relations) {
        Json vec = Json::array();
        for (const auto& p : rel) vec.push_back(format_poly(p));
        rels.push_back(vec);
      }
      j["relations"] = rels;
      break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Instance JSON: module + explicit transitions, or coset mode, plus optional
// central loops attached at q_1.
// ---------------------------------------------------------------------------

inline ExpVec expvec_from_json(const Json& j, size_t n) {
  if (!j.is_array() || j.size() != n) throw input_error("Z^n vector has wrong length");
  ExpVec e(n);
  for (size_t i = 0; i < n; ++i) e[i] = j[i].get<int64_t>();
  return e;
}

inline SemidirectElem elem_from_json(const Json& j, const SemidirectGroup& g) {
  const Json& ys = detail::field(j, "y");
  if (!ys.is_array() || ys.size() != g.module->rank)
    throw input_error("element: 'y' must list one polynomial per module generator");
  std::vector<LaurentPoly> coords;
  for (const auto& p : ys) coords.push_back(parse_poly(p.get<std::string>(), g.n));
  return g.make(g.module->element(std::move(coords)), expvec_from_json(detail::field(j, "a"), g.n));
}

inline Automaton<SemidirectGroup> instance_from_json(const Json& j) {
  try {
    ModulePtr mod = module_from_json(detail::field(j, "module"));
    size_t n = detail::size_field(j, "n");
    if (n != mod->n) throw input_error("instance 'n' disagrees with module 'n'");
    SemidirectGroup g(mod);

    Automaton<SemidirectGroup> a;
    if (j.contains("coset")) {
      const Json& c = j["coset"];
      std::vector<SemidirectElem> gens;
      for (const auto& ge : detail::field(c, "generators")) gens.push_back(elem_from_json(ge, g));
      FiniteGroupTable fg;
      for (const auto& row : detail::field(c, "table")) {
        std::vector<size_t> r;
        for (const auto& x : row) r.push_back(x.get<size_t>());
        fg.table.push_back(std::move(r));
      }
      std::vector<size_t> images;
      for (const auto& x : detail::field(c, "images")) images.push_back(x.get<size_t>());
      a = coset_intersection(g, gens, fg, images);
    } else {
      a.group = g;
      a.states = detail::size_field(j, "states");
      if (a.states < 1) throw input_error("instance needs at least one state");
      for (const auto& tj : detail::field(j, "transitions")) {
        typename Automaton<SemidirectGroup>::Transition tr;
        tr.from = detail::size_field(tj, "from");
        tr.to = detail::size_field(tj, "to");
        if (tr.from < 1 || tr.from > a.states || tr.to < 1 || tr.to > a.states)
          throw input_error("transition state index out of range");
        tr.ev = elem_from_json(tj, g);
        a.transitions.push_back(std::move(tr));
      }
    }
    if (j.contains("central_loops") && !j["central_loops"].is_null()) {
      std::vector<ExpVec> hs;
      for (const auto& h : j["central_loops"]) hs.push_back(expvec_from_json(h, n));
      a = attach_central_loops(a, hs);
    }
    return a;
  } catch (const input_error&) {
    throw;
  } catch (const unsupported_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error(std::string("instance: ") + e.what());
  }
}

inline Json instance_to_json(const Automaton<SemidirectGroup>& a) {
  Json j;
  j["n"] = a.group.n;
  j["module"] = module_to_json(a.group.module);
  j["states"] = a.states;
  Json ts = Json::array();
  for (const auto& tr : a.transitions) {
    Json t;
    t["from"] = tr.from;
    t["to"] = tr.to;
    Json ys = Json::array();
    if (a.group.module->uses_value()) {
      // value-backed elements re-enter through a constant-free encode; the
      // instances we emit always carry polynomial coordinates instead
      throw std::logic_error("instance_to_json: evaluation-backed automata are emitted by builders");
    }
    for (const auto& c : tr.ev.y.coords()) ys.push_back(format_poly(c));
    t["y"] = ys;
    Json av = Json::array();
    for (auto x : tr.ev.a) av.push_back(x);
    t["a"] = av;
    ts.push_back(t);
  }
  j["transitions"] = ts;
  return j;
}

// ---------------------------------------------------------------------------
// Verdict / certificate JSON
// ---------------------------------------------------------------------------

inline Json refutation_to_json(const Refutation& r) {
  Json j;
  switch (r.kind) {
    case Refutation::Kind::EmptyLanguage:
      j["kind"] = "empty_language";
      break;
    case Refutation::Kind::FlowInfeasible:
      j["kind"] = "flow_infeasible";
      break;
    case Refutation::Kind::RankZeroInfeasible:
      j["kind"] = "rank_zero_infeasible";
      break;
    case Refutation::Kind::PointPositivityFail: {
      j["kind"] = "point_positivity_fail";
      Json p = Json::array();
      for (const auto& x : r.point) p.push_back(rat_to_string(x));
      j["point"] = p;
      break;
    }
  }
  if (r.kind != Refutation::Kind::EmptyLanguage) {
    Json f = Json::array();
    for (const auto& x : r.farkas) f.push_back(rat_to_string(x));
    j["farkas"] = f;
  }
  return j;
}

inline Refutation refutation_from_json(const Json& j) {
  Refutation r;
  std::string kind = detail::field(j, "kind").get<std::string>();
  if (kind == "empty_language") {
    r.kind = Refutation::Kind::EmptyLanguage;
    return r;
  }
  if (kind == "flow_infeasible")
    r.kind = Refutation::Kind::FlowInfeasible;
  else if (kind == "rank_zero_infeasible")
    r.kind = Refutation::Kind::RankZeroInfeasible;
  else if (kind == "point_positivity_fail")
    r.kind = Refutation::Kind::PointPositivityFail;
  else
    throw input_error("unknown refutation kind '" + kind + "'");
  for (const auto& x : detail::field(j, "farkas"))
    r.farkas.push_back(rat_from_string(x.get<std::string>()));
  if (r.kind == Refutation::Kind::PointPositivityFail)
    for (const auto& x : detail::field(j, "point"))
      r.point.push_back(rat_from_string(x.get<std::string>()));
  return r;
}

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  switch (c.type) {
    case Certificate::Type::None:
      j["type"] = "none";
      break;
    case Certificate::Type::Traversal:
    case Certificate::Type::Membership: {
      j["type"] = c.type == Certificate::Type::Traversal ? "traversal" : "membership";
      Json run = Json::array();
      for (auto l : c.run) run.push_back(l);
      j["run"] = run;
      break;
    }
    case Certificate::Type::Refutation:
      j["type"] = "refutation";
      j["refutation"] = refutation_to_json(c.refutation);
      break;
    case Certificate::Type::RefutationSet: {
      j["type"] = "refutation_set";
      Json parts = Json::array();
      for (const auto& [labels, ref] : c.parts) {
        Json p;
        Json ls = Json::array();
        for (auto l : labels) ls.push_back(l);
        p["transitions"] = ls;
        p["refutation"] = refutation_to_json(ref);
        parts.push_back(p);
      }
      j["parts"] = parts;
      break;
    }
  }
  return j;
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  std::string type = detail::field(j, "type").get<std::string>();
  if (type == "none") {
    c.type = Certificate::Type::None;
  } else if (type == "traversal" || type == "membership") {
    c.type = type == "traversal" ? Certificate::Type::Traversal : Certificate::Type::Membership;
    for (const auto& l : detail::field(j, "run")) c.run.push_back(l.get<size_t>());
  } else if (type == "refutation") {
    c.type = Certificate::Type::Refutation;
    c.refutation = refutation_from_json(detail::field(j, "refutation"));
  } else if (type == "refutation_set") {
    c.type = Certificate::Type::RefutationSet;
    for (const auto& p : detail::field(j, "parts")) {
      std::vector<size_t> labels;
      for (const auto& l : detail::field(p, "transitions")) labels.push_back(l.get<size_t>());
      c.parts.emplace_back(labels, refutation_from_json(detail::field(p, "refutation")));
    }
  } else {
    throw input_error("unknown certificate type '" + type + "'");
  }
  return c;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  switch (v.kind) {
    case Verdict::Kind::Group:
      j["verdict"] = "group";
      break;
    case Verdict::Kind::NotGroup:
      j["verdict"] = "not_group";
      break;
    case Verdict::Kind::IdentityYes:
      j["verdict"] = "identity_yes";
      break;
    case Verdict::Kind::IdentityNo:
      j["verdict"] = "identity_no";
      break;
    case Verdict::Kind::Unknown:
      j["verdict"] = "unknown";
      break;
  }
  if (v.kind == Verdict::Kind::Unknown) j["reason"] = v.reason;
  j["certificate"] = certificate_to_json(v.certificate);
  Json b;
  b["candidates"] = v.budget.candidates_tested;
  b["max_box_radius"] = v.budget.max_box_radius;
  b["max_coefficient"] = v.budget.max_coefficient.str();
  b["grid_depth"] = v.budget.grid_depth;
  j["budget"] = b;
  return j;
}

// ---------------------------------------------------------------------------
// Example instance builders: classic metabelian groups and the coset construction
// ---------------------------------------------------------------------------

inline Json build_example_instance(const std::string& name, int64_t param = 0) {
  auto poly_instance = [](size_t n, const Json& module, size_t states, const Json& transitions) {
    Json j;
    j["n"] = n;
    j["module"] = module;
    j["states"] = states;
    j["transitions"] = transitions;
    return j;
  };
  auto trans = [](size_t from, size_t to, const std::vector<std::string>& ys,
                  const std::vector<int64_t>& a) {
    Json t;
    t["from"] = from;
    t["to"] = to;
    t["y"] = ys;
    t["a"] = a;
    return t;
  };

  if (name == "free_abelian") {
    // Y = 0, loops a = 1 and a = −1: the two-loop Group fixture
    Json module;
    module["n"] = 1;
    module["rank"] = 0;
    module["backend"] = "free";
    module["relations"] = Json::array();
    Json ts = Json::array();
    ts.push_back(trans(1, 1, {}, {1}));
    ts.push_back(trans(1, 1, {}, {-1}));
    Json j = poly_instance(1, module, 1, ts);
    j["expected"] = "group";
    return j;
  }
  if (name == "wreath_zz") {
    // Z ≀ Z = Z[X^±] ⋊ Z with the four standard semigroup generators
    Json module;
    module["n"] = 1;
    module["rank"] = 1;
    module["backend"] = "free";
    module["relations"] = Json::array();
    Json ts = Json::array();
    ts.push_back(trans(1, 1, {"1"}, {0}));
    ts.push_back(trans(1, 1, {"-1"}, {0}));
    ts.push_back(trans(1, 1, {"0"}, {1}));
    ts.push_back(trans(1, 1, {"0"}, {-1}));
    Json j = poly_instance(1, module, 1, ts);
    j["expected"] = "group";
    return j;
  }
  if (name == "bs_like") {
    if (param < 2) throw input_error("bs_like requires q >= 2");
    // Z[1/q] ⋊ Z with generators (0,1) and (1,0): no inverses, not a group
    Json module;
    module["n"] = 1;
    module["rank"] = 1;
    module["backend"] = "evaluation";
    module["target"] = std::vector<std::string>{std::to_string(param)};
    module["modulus"] = nullptr;
    Json ts = Json::array();
    ts.push_back(trans(1, 1, {"0"}, {1}));
    ts.push_back(trans(1, 1, {"1"}, {0}));
    Json j = poly_instance(1, module, 1, ts);
    j["expected"] = "not_group";
    return j;
  }
  if (name == "lamplighter") {
    if (param < 2) throw input_error("lamplighter requires m >= 2");
    // Z_m ≀ Z = Z_m[X^±] ⋊ Z generated by the lamp and both moves
    Json module;
    module["n"] = 1;
    module["rank"] = 1;
    module["backend"] = "evaluation";
    module["target"] = nullptr;
    module["modulus"] = std::to_string(param);
    Json ts = Json::array();
    ts.push_back(trans(1, 1, {"1"}, {0}));
    ts.push_back(trans(1, 1, {"0"}, {1}));
    ts.push_back(trans(1, 1, {"0"}, {-1}));
    Json j = poly_instance(1, module, 1, ts);
    j["expected"] = "group";
    return j;
  }
  if (name == "parity_coset") {
    // <(0,1)> ∩ ker(Z -> Z/2): the rational semigroup {2, 4, 6, ...} of Z
    Json module;
    module["n"] = 1;
    module["rank"] = 0;
    module["backend"] = "free";
    module["relations"] = Json::array();
    Json j;
    j["n"] = 1;
    j["module"] = module;
    Json coset;
    Json gens = Json::array();
    Json g;
    g["y"] = Json::array();
    g["a"] = std::vector<int64_t>{1};
    gens.push_back(g);
    coset["generators"] = gens;
    coset["table"] = std::vector<std::vector<size_t>>{{0, 1}, {1, 0}};
    coset["images"] = std::vector<size_t>{1};
    j["coset"] = coset;
    j["expected"] = "identity_no";
    return j;
  }
  throw input_error("unknown example '" + name + "'");
}

}  // namespace ratmeta
