#pragma once

#include "ratmeta/automaton.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ratmeta {

struct OracleResult {
  enum class Status { Found, NotFound, Overflow };
  Status status = Status::NotFound;
  Run run;
};

/// Brute-force ground truth: BFS over accepting runs by increasing length,
/// deduplicating (state, element normal form) pairs, returning a shortest
/// accepting run that evaluates to the identity. NotFound is not a proof of
/// absence. The stored-node cap guards the state space; exceeding it yields
/// Overflow, distinct from NotFound.
template <class G>
OracleResult bfs_identity(const Automaton<G>& a, size_t depth, size_t node_cap = 200000,
                          bool dedup = true) {
  if (depth < 1) throw std::invalid_argument("bfs_identity: depth >= 1");
  OracleResult res;

  struct Node {
    size_t state;
    typename G::Elem elem;
    size_t parent;  // index into nodes, npos for roots
    size_t label;
    size_t len;
  };
  constexpr size_t npos = static_cast<size_t>(-1);
  std::vector<Node> nodes;
  std::map<std::pair<size_t, std::string>, bool> visited;
  bool overflow = false;

  auto push = [&](size_t state, typename G::Elem elem, size_t parent, size_t label, size_t len) {
    if (dedup) {
      auto key = std::make_pair(state, a.group.key(elem));
      if (visited.count(key)) return;
      visited[key] = true;
    }
    if (nodes.size() >= node_cap) {
      overflow = true;
      return;
    }
    nodes.push_back({state, std::move(elem), parent, label, len});
  };

  for (size_t l = 1; l <= a.transitions.size() && !overflow; ++l)
    if (a.origin(l) == 1) push(a.dest(l), a.eval(l), npos, l, 1);

  for (size_t cursor = 0; cursor < nodes.size(); ++cursor) {
    const Node nd = nodes[cursor];
    if (nd.state == 1 && a.group.is_identity(nd.elem)) {
      Run run;
      for (size_t i = cursor; i != npos; i = nodes[i].parent) run.push_back(nodes[i].label);
      std::reverse(run.begin(), run.end());
      res.status = OracleResult::Status::Found;
      res.run = std::move(run);
      return res;
    }
    if (nd.len < depth)
      for (size_t l = 1; l <= a.transitions.size() && !overflow; ++l)
        if (a.origin(l) == nd.state)
          push(a.dest(l), a.group.mul(nd.elem, a.eval(l)), cursor, l, nd.len + 1);
    if (overflow) break;
  }
  res.status = overflow ? OracleResult::Status::Overflow : OracleResult::Status::NotFound;
  return res;
}

}  // namespace ratmeta
