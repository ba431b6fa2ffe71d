#include "ratmeta/instances.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace ratmeta;

constexpr int kExitYes = 0;      // group / identity-yes / certificate valid
constexpr int kExitNo = 1;       // not-group / identity-no / certificate invalid
constexpr int kExitUnknown = 2;  // budget exhausted or unsupported slice
constexpr int kExitInput = 3;    // malformed input

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw input_error("JSON parse error in '" + path + "': " + e.what());
  }
}

int verdict_exit(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Group:
    case Verdict::Kind::IdentityYes:
      return kExitYes;
    case Verdict::Kind::NotGroup:
    case Verdict::Kind::IdentityNo:
      return kExitNo;
    case Verdict::Kind::Unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

void print_verdict(const Verdict& v, bool as_json) {
  Json j = verdict_to_json(v);
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << j["verdict"].get<std::string>();
  if (v.kind == Verdict::Kind::Unknown) std::cout << " (" << v.reason << ")";
  if (v.certificate.type == Certificate::Type::Traversal ||
      v.certificate.type == Certificate::Type::Membership) {
    std::cout << "  run:";
    for (auto l : v.certificate.run) std::cout << " " << l;
  }
  std::cout << "\n";
}

void dump_graph(const Automaton<SemidirectGroup>& a, const Run& run) {
  auto tr = trim(a);
  AGraph g = graph_of_run(tr.automaton, run);
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json ej;
    ej["lattice"] = tr.automaton.origin(e.label);
    Json coord = Json::array();
    for (auto x : e.coord) coord.push_back(x);
    ej["coord"] = coord;
    ej["label"] = e.label;
    edges.push_back(ej);
  }
  std::cerr << edges.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision procedures for rational subsemigroups of Y ⋊ Z^n"};
  app.require_subcommand(1);

  std::string in_path, cert_path, out_path, example_name;
  int64_t budget = 4;
  int64_t param = 2;
  size_t depth = 8;
  bool as_json = false;
  bool generators_mode = false;
  bool want_graph = false;

  auto* decide = app.add_subcommand("decide", "decide the Group or Identity Problem");
  decide->require_subcommand(1);
  auto* dgroup = decide->add_subcommand("group", "is the recognized subsemigroup a group?");
  dgroup->add_option("-i,--instance", in_path, "instance file, or - for stdin")->required();
  dgroup->add_option("--budget", budget, "search budget (default 4)");
  dgroup->add_flag("--json", as_json, "verbose JSON verdict");
  dgroup->add_flag("--dump-graph", want_graph, "dump the traversal A-graph to stderr");

  auto* dident = decide->add_subcommand("identity", "does the subsemigroup contain the identity?");
  dident->add_option("-i,--instance", in_path, "instance file, or - for stdin")->required();
  dident->add_option("--budget", budget, "search budget (default 4)");
  dident->add_flag("--json", as_json, "verbose JSON verdict");
  dident->add_flag("-g,--generators", generators_mode,
                   "treat the transitions as a plain generator list");

  auto* ccert = app.add_subcommand("check-cert", "verify a certificate against an instance");
  ccert->add_option("-i,--instance", in_path, "instance file, or - for stdin")->required();
  ccert->add_option("-c,--certificate", cert_path, "certificate or verdict JSON file")->required();

  auto* orc = app.add_subcommand("oracle", "BFS ground-truth search for an identity run");
  orc->add_option("-i,--instance", in_path, "instance file, or - for stdin")->required();
  orc->add_option("--depth", depth, "maximum run length (default 8)");

  auto* exm = app.add_subcommand("examples", "emit a ready-to-run example instance");
  exm->add_option("name", example_name,
                  "free_abelian | wreath_zz | bs_like | lamplighter | parity_coset")
      ->required();
  exm->add_option("-o,--output", out_path, "output file (default stdout)");
  exm->add_option("--param", param, "q for bs_like, m for lamplighter (default 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dgroup->parsed()) {
      auto a = instance_from_json(read_json(in_path));
      Verdict v = decide_group(a, budget);
      print_verdict(v, as_json);
      if (want_graph && v.certificate.type == Certificate::Type::Traversal)
        dump_graph(a, v.certificate.run);
      return verdict_exit(v);
    }
    if (dident->parsed()) {
      auto a = instance_from_json(read_json(in_path));
      Verdict v;
      if (generators_mode) {
        std::vector<SemidirectElem> gens;
        for (const auto& tr : a.transitions) gens.push_back(tr.ev);
        v = decide_identity_fg(a.group, gens, budget);
      } else {
        v = decide_identity_rational(a, budget);
      }
      print_verdict(v, as_json);
      return verdict_exit(v);
    }
    if (ccert->parsed()) {
      auto a = instance_from_json(read_json(in_path));
      Json cj = read_json(cert_path);
      if (cj.contains("certificate")) cj = cj["certificate"];
      Certificate cert = certificate_from_json(cj);
      bool ok = check_certificate(a, cert);
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kExitYes : kExitNo;
    }
    if (orc->parsed()) {
      auto a = instance_from_json(read_json(in_path));
      auto r = bfs_identity(a, depth);
      switch (r.status) {
        case OracleResult::Status::Found: {
          std::cout << "found  run:";
          for (auto l : r.run) std::cout << " " << l;
          std::cout << "\n";
          return kExitYes;
        }
        case OracleResult::Status::NotFound:
          std::cout << "none within depth " << depth << "\n";
          return kExitNo;
        case OracleResult::Status::Overflow:
          std::cout << "overflow: state cap exceeded\n";
          return kExitUnknown;
      }
    }
    if (exm->parsed()) {
      Json j = build_example_instance(example_name, param);
      if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream out(out_path);
        if (!out) throw input_error("cannot write '" + out_path + "'");
        out << j.dump(2) << "\n";
      }
      return kExitYes;
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
